#include "reliab/cli/csv_table.hpp"

#include "reliab/error.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace reliab::cli {

namespace {

bool needs_quotes(std::string_view field) {
    return field.find_first_of(",\"\n\r") != std::string_view::npos;
}

void write_field(std::ostream& out, std::string_view field) {
    if (!needs_quotes(field)) {
        out << field;
        return;
    }
    out << '"';
    for (char c : field) {
        if (c == '"') out << '"';
        out << c;
    }
    out << '"';
}

// Splits one logical record; quoted fields may contain commas and doubled quotes.
std::vector<std::string> split_record(std::string_view line, std::size_t line_no) {
    std::vector<std::string> fields;
    std::string current;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                current += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                current += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(current));
            current.clear();
        } else {
            current += c;
        }
    }
    if (quoted) fail(ErrorCode::ParseError, fmt::format("line {}: unterminated quote", line_no));
    fields.push_back(std::move(current));
    return fields;
}

}  // namespace

void CsvTable::add_row(std::vector<std::string> row) {
    if (row.size() != header.size()) {
        fail(ErrorCode::InvalidArgument,
             fmt::format("row has {} fields, table has {} columns", row.size(), header.size()));
    }
    rows.push_back(std::move(row));
}

std::size_t CsvTable::column_index(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return i;
    }
    fail(ErrorCode::InvalidArgument, fmt::format("no column named '{}'", name));
}

bool CsvTable::has_column(std::string_view name) const noexcept {
    for (const auto& h : header) {
        if (h == name) return true;
    }
    return false;
}

const std::string& CsvTable::cell(std::size_t row, std::string_view column) const {
    return rows.at(row).at(column_index(column));
}

std::vector<double> CsvTable::numeric_column(std::string_view name) const {
    const std::size_t c = column_index(name);
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& row : rows) out.push_back(parse_number_or_nan(row[c]));
    return out;
}

void CsvTable::write(std::ostream& out) const {
    auto line = [&](const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i > 0) out << ',';
            write_field(out, fields[i]);
        }
        out << '\n';
    };
    line(header);
    for (const auto& row : rows) line(row);
}

std::string CsvTable::to_string() const {
    std::ostringstream out;
    write(out);
    return out.str();
}

CsvTable CsvTable::read(std::istream& in) {
    CsvTable table;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        const std::size_t first_line = ++line_no;
        // An odd number of quotes means a quoted field runs onto the next line.
        std::string next;
        while (std::count(line.begin(), line.end(), '"') % 2 == 1 && std::getline(in, next)) {
            ++line_no;
            line += '\n';
            line += next;
        }
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = split_record(line, first_line);
        if (!header_seen) {
            table.header = std::move(fields);
            header_seen = true;
            continue;
        }
        if (fields.size() != table.header.size()) {
            fail(ErrorCode::ParseError, fmt::format("line {}: expected {} fields, found {}", first_line,
                                                    table.header.size(), fields.size()));
        }
        table.rows.push_back(std::move(fields));
    }
    if (!header_seen) fail(ErrorCode::ParseError, "empty CSV");
    return table;
}

CsvTable CsvTable::parse(std::string_view text) {
    std::istringstream in{std::string(text)};
    return read(in);
}

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    return fmt::format("{:.17g}", value);
}

double parse_number_or_nan(std::string_view text) noexcept {
    if (text == "inf") return std::numeric_limits<double>::infinity();
    if (text == "-inf") return -std::numeric_limits<double>::infinity();
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    return value;
}

}  // namespace reliab::cli
