#pragma once

// One-step-ahead predictive distributions for the miles to the next
// disengagement, and the record a prediction leaves once the outcome is known.

#include <cstddef>
#include <functional>
#include <optional>

namespace reliab {

// Distribution on (0, inf) that may be defective (total mass `limit` < 1), as
// happens for finite-fault NHPP predictives.
class PredictiveDistribution {
public:
    using Map = std::function<double(double)>;

    // Built from the cumulative hazard H(x), its log derivative log h(x) and
    // H(inf). cdf = 1 - exp(-H) keeps full precision in both tails.
    static PredictiveDistribution from_hazard(Map cumulative_hazard, Map log_hazard,
                                              double hazard_limit, double scale_hint);

    // Lomax: survival (scale / (scale + x))^shape.
    static PredictiveDistribution pareto(double shape, double scale);

    // General form. `quantile` may be empty, in which case cdf is inverted by
    // bisection. `scale_hint` seeds the bracketing search.
    PredictiveDistribution(Map cdf, Map log_density, double limit, double scale_hint,
                           Map quantile = {});

    double cdf(double x) const;
    double log_density(double x) const;
    double density(double x) const;
    double limit() const noexcept { return limit_; }
    double scale_hint() const noexcept { return scale_hint_; }

    // Smallest x with cdf(x) >= q; requires 0 < q < limit.
    double quantile(double q) const;

    // Throws NoFiniteMedian when limit <= 0.5.
    double median() const;
    std::optional<double> try_median() const;

private:
    double invert(double q) const;

    Map cdf_;
    Map log_density_;
    Map quantile_;
    double limit_ = 1.0;
    double scale_hint_ = 1.0;
};

struct PredictionRecord {
    std::size_t index = 0;      // events observed when the prediction was issued
    double u = 0.0;             // predictive cdf at the realized gap
    double log_density = 0.0;   // predictive log density at the realized gap
    std::optional<double> median;
    double realized = 0.0;      // miles until the next event
};

}  // namespace reliab
