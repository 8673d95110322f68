#include "reliab/cli/svg.hpp"

#include "reliab/error.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>

namespace reliab::cli {

namespace {

constexpr double kWidth = 760.0;
constexpr double kHeight = 460.0;
constexpr double kLeft = 84.0;
constexpr double kRight = 190.0;
constexpr double kTop = 44.0;
constexpr double kBottom = 64.0;

constexpr std::array<const char*, 8> kPalette{"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                              "#9467bd", "#8c564b", "#e377c2", "#17becf"};

std::string escape(std::string_view text) {
    std::string out;
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string tick_label(double v) {
    if (v == 0.0) return "0";
    const double a = std::abs(v);
    if (a >= 1e5 || a < 1e-3) return fmt::format("{:.0e}", v);
    return fmt::format("{:g}", v);
}

struct Axis {
    bool log = false;
    double lo = 0.0;
    double hi = 1.0;
    double pixel_lo = 0.0;
    double pixel_hi = 1.0;

    double transform(double v) const { return log ? std::log10(v) : v; }
    double map(double v) const {
        const double t = (transform(v) - lo) / (hi - lo);
        return pixel_lo + t * (pixel_hi - pixel_lo);
    }
    bool usable(double v) const { return std::isfinite(v) && (!log || v > 0.0); }

    std::vector<double> ticks() const {
        std::vector<double> out;
        if (log) {
            for (double e = std::ceil(lo - 1e-9); e <= hi + 1e-9; e += 1.0) out.push_back(std::pow(10.0, e));
            return out;
        }
        const double raw = (hi - lo) / 5.0;
        const double mag = std::pow(10.0, std::floor(std::log10(raw)));
        double step = mag;
        for (double m : {1.0, 2.0, 5.0, 10.0}) {
            if (m * mag >= raw) {
                step = m * mag;
                break;
            }
        }
        for (double v = std::ceil(lo / step) * step; v <= hi + step * 1e-9; v += step) {
            out.push_back(std::abs(v) < step * 1e-9 ? 0.0 : v);
        }
        return out;
    }
};

Axis fit_axis(const std::vector<double>& values, bool log, double pixel_lo, double pixel_hi) {
    Axis axis{log, 0.0, 1.0, pixel_lo, pixel_hi};
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (double v : values) {
        if (!axis.usable(v)) continue;
        lo = std::min(lo, axis.transform(v));
        hi = std::max(hi, axis.transform(v));
    }
    if (!std::isfinite(lo)) {
        lo = 0.0;
        hi = 1.0;
    }
    if (log) {
        lo = std::floor(lo);
        hi = std::ceil(hi);
        if (hi <= lo) hi = lo + 1.0;
    } else {
        if (hi <= lo) {
            lo -= 0.5;
            hi += 0.5;
        }
        const double pad = 0.04 * (hi - lo);
        lo -= pad;
        hi += pad;
    }
    axis.lo = lo;
    axis.hi = hi;
    return axis;
}

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

}  // namespace

std::string render_svg(const CsvTable& table, const ChartSpec& spec) {
    const std::vector<double> xs = table.numeric_column(spec.x_column);
    std::vector<Series> series;
    if (!spec.group_column.empty()) {
        if (spec.y_columns.size() != 1) {
            fail(ErrorCode::InvalidArgument, "grouped charts take exactly one y column");
        }
        const std::vector<double> ys = table.numeric_column(spec.y_columns.front());
        const std::size_t g = table.column_index(spec.group_column);
        std::map<std::string, std::size_t> slot;
        for (std::size_t r = 0; r < table.rows.size(); ++r) {
            const std::string& key = table.rows[r][g];
            auto [it, inserted] = slot.try_emplace(key, series.size());
            if (inserted) series.push_back(Series{key, {}, {}});
            series[it->second].x.push_back(xs[r]);
            series[it->second].y.push_back(ys[r]);
        }
    } else {
        for (const auto& column : spec.y_columns) {
            series.push_back(Series{column, xs, table.numeric_column(column)});
        }
    }

    std::vector<double> all_x;
    std::vector<double> all_y;
    for (const auto& s : series) {
        all_x.insert(all_x.end(), s.x.begin(), s.x.end());
        all_y.insert(all_y.end(), s.y.begin(), s.y.end());
    }
    for (const auto& r : spec.vertical) all_x.push_back(r.value);
    for (const auto& r : spec.horizontal) all_y.push_back(r.value);

    const Axis ax = fit_axis(all_x, spec.log_x, kLeft, kWidth - kRight);
    const Axis ay = fit_axis(all_y, spec.log_y, kHeight - kBottom, kTop);

    std::string out;
    out += fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\" "
        "font-family=\"sans-serif\" font-size=\"11\">\n",
        kWidth, kHeight);
    out += fmt::format("<rect width=\"{}\" height=\"{}\" fill=\"white\"/>\n", kWidth, kHeight);
    out += fmt::format("<text x=\"{:.2f}\" y=\"24\" font-size=\"14\" text-anchor=\"middle\">{}</text>\n",
                       (kLeft + kWidth - kRight) / 2.0, escape(spec.title));

    // Frame, ticks and grid.
    out += fmt::format("<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" fill=\"none\" stroke=\"black\"/>\n",
                       kLeft, kTop, kWidth - kRight - kLeft, kHeight - kBottom - kTop);
    for (double t : ax.ticks()) {
        const double px = ax.map(t);
        out += fmt::format("<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{0:.2f}\" y2=\"{2:.2f}\" stroke=\"#e0e0e0\"/>\n",
                           px, kTop, kHeight - kBottom);
        out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">{}</text>\n", px,
                           kHeight - kBottom + 16.0, escape(tick_label(t)));
    }
    for (double t : ay.ticks()) {
        const double py = ay.map(t);
        out += fmt::format("<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{2:.2f}\" y2=\"{1:.2f}\" stroke=\"#e0e0e0\"/>\n",
                           kLeft, py, kWidth - kRight);
        out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"end\">{}</text>\n", kLeft - 6.0,
                           py + 4.0, escape(tick_label(t)));
    }
    out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">{}</text>\n",
                       (kLeft + kWidth - kRight) / 2.0, kHeight - 20.0, escape(spec.x_label));
    out += fmt::format(
        "<text x=\"18\" y=\"{0:.2f}\" text-anchor=\"middle\" transform=\"rotate(-90 18 {0:.2f})\">{1}</text>\n",
        (kTop + kHeight - kBottom) / 2.0, escape(spec.y_label));

    if (spec.diagonal) {
        const double lo = std::max(ax.lo, ay.lo);
        const double hi = std::min(ax.hi, ay.hi);
        if (hi > lo && !spec.log_x && !spec.log_y) {
            out += fmt::format("<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"gray\" stroke-dasharray=\"2,3\"/>\n",
                               ax.map(lo), ay.map(lo), ax.map(hi), ay.map(hi));
        }
    }
    for (const auto& r : spec.vertical) {
        if (!ax.usable(r.value)) continue;
        const double px = ax.map(r.value);
        out += fmt::format("<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{0:.2f}\" y2=\"{2:.2f}\" stroke=\"gray\" stroke-dasharray=\"6,4\"/>\n",
                           px, kTop, kHeight - kBottom);
        out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" fill=\"gray\">{}</text>\n", px + 3.0, kTop + 12.0,
                           escape(r.label));
    }
    for (const auto& r : spec.horizontal) {
        if (!ay.usable(r.value)) continue;
        const double py = ay.map(r.value);
        out += fmt::format("<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{2:.2f}\" y2=\"{1:.2f}\" stroke=\"gray\" stroke-dasharray=\"6,4\"/>\n",
                           kLeft, py, kWidth - kRight);
        out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" fill=\"gray\">{}</text>\n", kLeft + 4.0, py - 4.0,
                           escape(r.label));
    }

    for (std::size_t i = 0; i < series.size(); ++i) {
        const char* color = kPalette[i % kPalette.size()];
        std::string points;
        auto flush = [&] {
            if (!points.empty()) {
                out += fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" points=\"{}\"/>\n",
                                   color, points);
                points.clear();
            }
        };
        for (std::size_t k = 0; k < series[i].x.size(); ++k) {
            const double x = series[i].x[k];
            const double y = series[i].y[k];
            if (!ax.usable(x) || !ay.usable(y)) {
                flush();
                continue;
            }
            if (!points.empty()) points += ' ';
            points += fmt::format("{:.2f},{:.2f}", ax.map(x), ay.map(y));
        }
        flush();
        const double ly = kTop + 14.0 + 16.0 * static_cast<double>(i);
        const double lx = kWidth - kRight + 12.0;
        out += fmt::format("<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"{}\" stroke-width=\"2\"/>\n",
                           lx, ly - 4.0, lx + 18.0, ly - 4.0, color);
        out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\">{}</text>\n", lx + 24.0, ly, escape(series[i].label));
    }
    out += "</svg>\n";
    return out;
}

namespace {

double first_value(const CsvTable& table, std::string_view column) {
    if (!table.has_column(column) || table.rows.empty()) return std::numeric_limits<double>::quiet_NaN();
    return parse_number_or_nan(table.cell(0, column));
}

}  // namespace

ChartSpec chart_preset(const std::string& name, const CsvTable& table) {
    ChartSpec spec;
    if (name == "miles") {
        spec.title = "Miles needed to support a claim";
        spec.x_column = "p";
        spec.y_columns = {"miles"};
        spec.group_column = "label";
        spec.x_label = "claimed bound p";
        spec.y_label = "miles";
        spec.log_x = spec.log_y = true;
    } else if (name == "compensate") {
        spec.title = "Failure-free miles needed after one failure";
        spec.x_column = "n1";
        spec.y_columns = {"n2"};
        spec.group_column = "setting";
        spec.x_label = "miles driven before the failure (n1)";
        spec.y_label = "extra miles (n2)";
        spec.log_x = spec.log_y = true;
        if (const double v = first_value(table, "n_star"); std::isfinite(v)) spec.vertical.push_back({v, "n*"});
        if (const double v = first_value(table, "n1_at_p_star"); std::isfinite(v)) {
            spec.vertical.push_back({v, "n1 supporting p*"});
        }
        if (const double v = first_value(table, "asymptote"); std::isfinite(v)) {
            spec.horizontal.push_back({v, "1/goal"});
        }
    } else if (name == "mmtd") {
        spec.title = "Median miles to next disengagement";
        spec.x_column = "index";
        spec.y_columns = {"median"};
        spec.group_column = "series";
        spec.x_label = "disengagement index";
        spec.y_label = "MMTD (miles)";
        spec.log_y = true;
    } else if (name == "uplot") {
        spec.title = "u-plot";
        spec.x_column = "u";
        spec.y_columns = {"ecdf"};
        spec.group_column = "series";
        spec.x_label = "u";
        spec.y_label = "empirical cdf";
        spec.diagonal = true;
    } else if (name == "plr") {
        spec.title = "Log prequential likelihood ratio";
        spec.x_column = "index";
        spec.y_columns = {"log_plr"};
        spec.group_column = "pair";
        spec.x_label = "disengagement index";
        spec.y_label = "log PLR";
        spec.horizontal.push_back({0.0, ""});
    } else {
        fail(ErrorCode::InvalidArgument,
             fmt::format("unknown chart '{}' (expected miles, compensate, mmtd, uplot or plr)", name));
    }
    return spec;
}

}  // namespace reliab::cli
