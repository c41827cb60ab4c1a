#pragma once

// Error taxonomy shared by the library and the CLI. The CLI maps these to
// process exit codes: config 2, numerical 3, resource 4.

#include <stdexcept>
#include <string>

namespace longrange {

struct config_error : std::runtime_error {
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct numerical_error : std::runtime_error {
    explicit numerical_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct resource_error : std::runtime_error {
    explicit resource_error(const std::string& msg) : std::runtime_error(msg) {}
};

}
