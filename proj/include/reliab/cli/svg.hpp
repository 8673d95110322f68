#pragma once

// Deterministic line charts: fixed viewport, fixed palette, no timestamps.
// The output depends only on the table contents and the chart spec, so a
// table written to CSV and read back renders to the same bytes.

#include "reliab/cli/csv_table.hpp"

#include <string>
#include <vector>

namespace reliab::cli {

struct ReferenceLine {
    double value = 0.0;
    std::string label;
};

struct ChartSpec {
    std::string title;
    std::string x_column;
    std::vector<std::string> y_columns;
    std::string group_column;  // one series per distinct value, in order of appearance
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    bool log_y = false;
    bool diagonal = false;     // draw y = x (u-plots)
    std::vector<ReferenceLine> vertical;
    std::vector<ReferenceLine> horizontal;
};

std::string render_svg(const CsvTable& table, const ChartSpec& spec);

// Named chart layouts for the tables the CLI writes: "miles", "compensate",
// "mmtd", "uplot", "plr". Reference lines are read from the table itself.
ChartSpec chart_preset(const std::string& name, const CsvTable& table);

}  // namespace reliab::cli
