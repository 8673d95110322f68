#include "reliab/evaluation.hpp"

#include "reliab/error.hpp"
#include "reliab/numeric.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <memory>

namespace reliab::eval {

UPlot u_plot(std::span<const PredictionRecord> records) {
    UPlot plot;
    plot.sorted_u.reserve(records.size());
    for (const auto& r : records) plot.sorted_u.push_back(r.u);
    std::sort(plot.sorted_u.begin(), plot.sorted_u.end());
    plot.ks_distance = kolmogorov_distance(plot.sorted_u);
    return plot;
}

double kolmogorov_band(std::size_t m, double level) {
    if (m == 0 || !(level > 0.0 && level < 1.0)) {
        fail(ErrorCode::InvalidArgument, "Kolmogorov band needs m > 0 and a level in (0, 1)");
    }
    const double c = std::sqrt(-0.5 * std::log(level / 2.0));
    const double root = std::sqrt(static_cast<double>(m));
    return c / (root + 0.12 + 0.11 / root);
}

RecalibrationMap::RecalibrationMap(std::span<const double> u_values) {
    std::vector<double> u(u_values.begin(), u_values.end());
    std::sort(u.begin(), u.end());
    const double m = static_cast<double>(u.size());
    x_.push_back(0.0);
    y_.push_back(0.0);
    for (std::size_t i = 0; i < u.size();) {
        std::size_t j = i;
        while (j + 1 < u.size() && u[j + 1] == u[i]) ++j;
        // The ECDF jumps from i/m to (j+1)/m at u[i]; take the middle of the jump.
        const double mid = (static_cast<double>(i) + static_cast<double>(j + 1)) / (2.0 * m);
        if (u[i] > 0.0 && u[i] < 1.0) {
            x_.push_back(u[i]);
            y_.push_back(mid);
        }
        i = j + 1;
    }
    x_.push_back(1.0);
    y_.push_back(1.0);
}

std::size_t RecalibrationMap::segment(double u) const {
    const auto it = std::upper_bound(x_.begin(), x_.end(), u);
    const auto k = static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - x_.begin() - 1, 0));
    return std::min(k, x_.size() - 2);
}

double RecalibrationMap::operator()(double u) const {
    u = std::clamp(u, 0.0, 1.0);
    const std::size_t k = segment(u);
    const double t = (u - x_[k]) / (x_[k + 1] - x_[k]);
    return std::clamp(y_[k] + t * (y_[k + 1] - y_[k]), 0.0, 1.0);
}

double RecalibrationMap::slope(double u) const {
    const std::size_t k = segment(std::clamp(u, 0.0, 1.0));
    return (y_[k + 1] - y_[k]) / (x_[k + 1] - x_[k]);
}

double RecalibrationMap::inverse(double q) const {
    q = std::clamp(q, 0.0, 1.0);
    const auto it = std::upper_bound(y_.begin(), y_.end(), q);
    auto k = static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - y_.begin() - 1, 0));
    k = std::min(k, y_.size() - 2);
    const double t = (q - y_[k]) / (y_[k + 1] - y_[k]);
    return std::clamp(x_[k] + t * (x_[k + 1] - x_[k]), 0.0, 1.0);
}

namespace {

PredictiveDistribution compose(const PredictiveDistribution& raw,
                               std::shared_ptr<const RecalibrationMap> g) {
    auto cdf = [raw, g](double x) { return (*g)(raw.cdf(x)); };
    auto log_density = [raw, g](double x) {
        return std::log(g->slope(raw.cdf(x))) + raw.log_density(x);
    };
    auto quantile = [raw, g](double q) { return raw.quantile(g->inverse(q)); };
    const double limit = (*g)(raw.limit());
    return PredictiveDistribution(std::move(cdf), std::move(log_density), limit, raw.scale_hint(),
                                  std::move(quantile));
}

std::vector<double> u_values(std::span<const PredictionRecord> records) {
    std::vector<double> u;
    u.reserve(records.size());
    for (const auto& r : records) u.push_back(r.u);
    return u;
}

}  // namespace

PredictiveDistribution recalibrate(const PredictiveDistribution& raw,
                                   std::span<const PredictionRecord> prior_records,
                                   std::size_t warmup) {
    if (prior_records.size() < std::max<std::size_t>(warmup, 1)) {
        fail(ErrorCode::InsufficientWarmup,
             fmt::format("recalibration needs {} earlier predictions, got {}", warmup,
                         prior_records.size()));
    }
    return compose(raw, std::make_shared<const RecalibrationMap>(u_values(prior_records)));
}

std::vector<PredictionRecord> recalibrate_series(std::span<const PredictionRecord> records,
                                                 std::span<const PredictiveDistribution> predictives,
                                                 std::size_t warmup) {
    if (records.size() != predictives.size()) {
        fail(ErrorCode::MisalignedRecords,
             fmt::format("{} records but {} predictive distributions", records.size(),
                         predictives.size()));
    }
    warmup = std::max<std::size_t>(warmup, 1);
    std::vector<PredictionRecord> out;
    for (std::size_t i = warmup; i < records.size(); ++i) {
        const auto g = std::make_shared<const RecalibrationMap>(u_values(records.first(i)));
        const PredictionRecord& raw = records[i];
        PredictionRecord r = raw;
        r.u = (*g)(raw.u);
        r.log_density = std::log(g->slope(raw.u)) + raw.log_density;
        r.median = compose(predictives[i], g).try_median();
        out.push_back(r);
    }
    return out;
}

PlrSeries log_plr(std::span<const PredictionRecord> a, std::span<const PredictionRecord> b) {
    if (a.size() != b.size()) {
        fail(ErrorCode::MisalignedRecords,
             fmt::format("cannot compare {} predictions with {}", a.size(), b.size()));
    }
    PlrSeries series;
    series.index.reserve(a.size());
    series.log_plr.reserve(a.size());
    series.floored.reserve(a.size());
    double running = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].index != b[i].index) {
            fail(ErrorCode::MisalignedRecords,
                 fmt::format("position {} pairs index {} with index {}", i, a[i].index, b[i].index));
        }
        bool floored = false;
        auto guard = [&](double v) {
            if (!(v >= log_density_floor)) {
                floored = true;
                return log_density_floor;
            }
            return v;
        };
        running += guard(a[i].log_density) - guard(b[i].log_density);
        series.index.push_back(a[i].index);
        series.log_plr.push_back(running);
        series.floored.push_back(floored);
    }
    return series;
}

std::vector<PredictionRecord> from_index(std::span<const PredictionRecord> records,
                                         std::size_t start_index) {
    std::vector<PredictionRecord> out;
    for (const auto& r : records) {
        if (r.index >= start_index) out.push_back(r);
    }
    return out;
}

}  // namespace reliab::eval
