#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace reliab::cli {

// Canonical output format. Numbers go through format_number so that
// re-reading a table recovers every double exactly.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    explicit CsvTable(std::vector<std::string> columns = {}) : header(std::move(columns)) {}

    void add_row(std::vector<std::string> row);
    std::size_t column_index(std::string_view name) const;  // throws InvalidArgument
    bool has_column(std::string_view name) const noexcept;
    const std::string& cell(std::size_t row, std::string_view column) const;
    // Empty or unparsable cells become NaN.
    std::vector<double> numeric_column(std::string_view name) const;

    void write(std::ostream& out) const;
    std::string to_string() const;
    static CsvTable read(std::istream& in);
    static CsvTable parse(std::string_view text);
};

// Shortest round-trip form ("%.17g" semantics), "nan"/"inf" for non-finite.
std::string format_number(double value);
double parse_number_or_nan(std::string_view text) noexcept;

}  // namespace reliab::cli
