#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "longrange/errors.hpp"

namespace longrange {

// Comma-separated table with a leading block of `#` comment lines (the
// metadata header). Cells are kept as raw text; numeric access is
// parse-checked and reports the source line on failure.
struct CsvTable {
    std::string name = "<csv>";
    std::vector<std::string> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> cells;
    std::vector<std::int64_t> lines;

    std::size_t rows() const { return cells.size(); }
    std::size_t column_index(const std::string& column) const;
    const std::string& cell(std::size_t row, std::size_t col) const;
    double number(std::size_t row, std::size_t col) const;
    std::int64_t integer(std::size_t row, std::size_t col) const;

    void add_row(std::vector<std::string> row);
};

// 17 significant digits: enough for the decimal text to recover the same
// double bit for bit, so identical runs produce identical files.
std::string format_double(double v);
std::string format_int(std::int64_t v);

double parse_double(const std::string& text, const std::string& where);
std::int64_t parse_int(const std::string& text, const std::string& where);

std::vector<std::string> split_csv_line(const std::string& line);

CsvTable read_csv(std::istream& in, const std::string& name);
CsvTable read_csv_file(const std::string& path);

void write_csv(std::ostream& out, const CsvTable& table);
void write_csv_file(const std::string& path, const CsvTable& table);

}
