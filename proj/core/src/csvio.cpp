#include "longrange/csvio.hpp"

#include <cerrno>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace longrange {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

std::size_t CsvTable::column_index(const std::string& column) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == column) return i;
    throw config_error(name + ": no column named '" + column + "'");
}

const std::string& CsvTable::cell(std::size_t row, std::size_t col) const {
    if (row >= cells.size() || col >= cells[row].size())
        throw config_error(name + ": cell (" + std::to_string(row) + ", " +
                           std::to_string(col) + ") out of range");
    return cells[row][col];
}

double CsvTable::number(std::size_t row, std::size_t col) const {
    std::string where = name;
    if (row < lines.size()) where += ":" + std::to_string(lines[row]);
    return parse_double(cell(row, col), where);
}

std::int64_t CsvTable::integer(std::size_t row, std::size_t col) const {
    std::string where = name;
    if (row < lines.size()) where += ":" + std::to_string(lines[row]);
    return parse_int(cell(row, col), where);
}

void CsvTable::add_row(std::vector<std::string> row) {
    if (!columns.empty() && row.size() != columns.size())
        throw config_error(name + ": row of " + std::to_string(row.size()) +
                           " cells against " + std::to_string(columns.size()) + " columns");
    cells.push_back(std::move(row));
    lines.push_back(-1);
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_int(std::int64_t v) { return std::to_string(v); }

double parse_double(const std::string& text, const std::string& where) {
    std::string t = trim(text);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size())
        throw config_error(where + ": '" + text + "' is not a number");
    return v;
}

std::int64_t parse_int(const std::string& text, const std::string& where) {
    std::string t = trim(text);
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size())
        throw config_error(where + ": '" + text + "' is not an integer");
    return v;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            out.push_back(trim(line.substr(start)));
            return out;
        }
        out.push_back(trim(line.substr(start, comma - start)));
        start = comma + 1;
    }
}

CsvTable read_csv(std::istream& in, const std::string& name) {
    CsvTable table;
    table.name = name;
    std::string line;
    std::int64_t line_number = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_number;
        std::string t = trim(line);
        if (t.empty()) continue;
        if (t[0] == '#') {
            std::size_t b = t.find_first_not_of(" \t", 1);
            table.meta.push_back(b == std::string::npos ? std::string() : t.substr(b));
            continue;
        }
        std::vector<std::string> cells = split_csv_line(t);
        if (!header_seen) {
            table.columns = std::move(cells);
            header_seen = true;
            continue;
        }
        if (cells.size() != table.columns.size())
            throw config_error(name + ":" + std::to_string(line_number) + ": row of " +
                               std::to_string(cells.size()) + " cells against " +
                               std::to_string(table.columns.size()) + " columns");
        table.cells.push_back(std::move(cells));
        table.lines.push_back(line_number);
    }
    if (!header_seen) throw config_error(name + ": no header row");
    return table;
}

CsvTable read_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open '" + path + "' for reading");
    return read_csv(in, path);
}

void write_csv(std::ostream& out, const CsvTable& table) {
    for (const auto& m : table.meta) out << "# " << m << "\n";
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i) out << ",";
        out << table.columns[i];
    }
    out << "\n";
    for (const auto& row : table.cells) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ",";
            out << row[i];
        }
        out << "\n";
    }
}

void write_csv_file(const std::string& path, const CsvTable& table) {
    std::ostringstream buffer;
    write_csv(buffer, table);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw config_error("cannot open '" + path + "' for writing");
    out << buffer.str();
    if (!out) throw resource_error("write to '" + path + "' failed");
}

}
