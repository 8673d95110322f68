#pragma once

// Prequential scoring of one-step-ahead predictions: u-plots, recalibration
// through a predictor's own past u-plot, and log prequential likelihood ratios.

#include "reliab/predictive.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace reliab::eval {

struct UPlot {
    std::vector<double> sorted_u;
    double ks_distance = 0.0;
};

UPlot u_plot(std::span<const PredictionRecord> records);

// Two-sided 5% critical value of the Kolmogorov distance for m uniforms,
// using Stephens' finite-sample correction of the asymptotic 1.358 / sqrt(m).
double kolmogorov_band(std::size_t m, double level = 0.05);

// Piecewise-linear join of a u-plot: through (0, 0), the midpoint of each
// ECDF jump and (1, 1). Tied u values share one knot.
class RecalibrationMap {
public:
    explicit RecalibrationMap(std::span<const double> u_values);

    double operator()(double u) const;
    double slope(double u) const;
    double inverse(double q) const;

    const std::vector<double>& knots_x() const noexcept { return x_; }
    const std::vector<double>& knots_y() const noexcept { return y_; }

private:
    std::size_t segment(double u) const;

    std::vector<double> x_;
    std::vector<double> y_;
};

inline constexpr std::size_t default_warmup = 20;

// F*(t) = G*(F(t)), G* built from the u values of `prior_records`.
// Throws InsufficientWarmup with fewer than `warmup` prior records.
PredictiveDistribution recalibrate(const PredictiveDistribution& raw,
                                   std::span<const PredictionRecord> prior_records,
                                   std::size_t warmup = default_warmup);

// Recalibrates every record that has at least `warmup` records before it,
// each using only those earlier records. `predictives` parallels `records`.
// The result starts at records[warmup].
std::vector<PredictionRecord> recalibrate_series(std::span<const PredictionRecord> records,
                                                 std::span<const PredictiveDistribution> predictives,
                                                 std::size_t warmup = default_warmup);

inline constexpr double log_density_floor = -745.0;

struct PlrSeries {
    std::vector<std::size_t> index;
    std::vector<double> log_plr;  // running sum of log density differences
    std::vector<bool> floored;    // a log density was raised to the floor at this step
};

// Log prequential likelihood ratio of A against B over aligned records.
// Throws MisalignedRecords when lengths or indices differ.
PlrSeries log_plr(std::span<const PredictionRecord> a, std::span<const PredictionRecord> b);

// Records with index >= start_index.
std::vector<PredictionRecord> from_index(std::span<const PredictionRecord> records,
                                         std::size_t start_index);

}  // namespace reliab::eval
