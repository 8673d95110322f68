#include "reliab/predictive.hpp"

#include "reliab/error.hpp"
#include "reliab/numeric.hpp"

#include <fmt/format.h>

#include <cmath>
#include <limits>
#include <utility>

namespace reliab {

PredictiveDistribution PredictiveDistribution::from_hazard(Map cumulative_hazard, Map log_hazard,
                                                           double hazard_limit,
                                                           double scale_hint) {
    auto cdf = [H = cumulative_hazard](double x) { return x <= 0.0 ? 0.0 : -std::expm1(-H(x)); };
    auto log_density = [H = std::move(cumulative_hazard), lh = std::move(log_hazard)](double x) {
        if (x < 0.0) return -std::numeric_limits<double>::infinity();
        return lh(x) - H(x);
    };
    const double limit = std::isinf(hazard_limit) ? 1.0 : -std::expm1(-hazard_limit);
    return PredictiveDistribution(std::move(cdf), std::move(log_density), limit, scale_hint);
}

PredictiveDistribution PredictiveDistribution::pareto(double shape, double scale) {
    if (!(shape > 0.0) || !(scale > 0.0) || !std::isfinite(shape) || !std::isfinite(scale)) {
        fail(ErrorCode::InvalidArgument,
             fmt::format("Pareto needs positive shape and scale, got {} and {}", shape, scale));
    }
    auto cdf = [=](double x) { return x <= 0.0 ? 0.0 : -std::expm1(-shape * std::log1p(x / scale)); };
    auto log_density = [=](double x) {
        if (x < 0.0) return -std::numeric_limits<double>::infinity();
        return std::log(shape / scale) - (shape + 1.0) * std::log1p(x / scale);
    };
    // Inverting the survival directly avoids bisection error.
    auto quantile = [=](double q) { return scale * std::expm1(-std::log1p(-q) / shape); };
    return PredictiveDistribution(std::move(cdf), std::move(log_density), 1.0, scale,
                                  std::move(quantile));
}

PredictiveDistribution::PredictiveDistribution(Map cdf, Map log_density, double limit,
                                               double scale_hint, Map quantile)
    : cdf_(std::move(cdf)),
      log_density_(std::move(log_density)),
      quantile_(std::move(quantile)),
      limit_(limit),
      scale_hint_(scale_hint > 0.0 && std::isfinite(scale_hint) ? scale_hint : 1.0) {}

double PredictiveDistribution::cdf(double x) const { return cdf_(x); }

double PredictiveDistribution::log_density(double x) const { return log_density_(x); }

double PredictiveDistribution::density(double x) const { return std::exp(log_density_(x)); }

double PredictiveDistribution::quantile(double q) const {
    if (!(q > 0.0) || !(q < limit_)) {
        fail(ErrorCode::InvalidArgument,
             fmt::format("quantile level {} outside (0, {})", q, limit_));
    }
    return quantile_ ? quantile_(q) : invert(q);
}

double PredictiveDistribution::median() const {
    if (!(limit_ > 0.5)) {
        fail(ErrorCode::NoFiniteMedian,
             fmt::format("predictive mass {:.6g} never reaches one half", limit_));
    }
    return quantile(0.5);
}

std::optional<double> PredictiveDistribution::try_median() const {
    if (!(limit_ > 0.5)) return std::nullopt;
    return quantile(0.5);
}

double PredictiveDistribution::invert(double q) const {
    double lo = 0.0;
    double hi = scale_hint_;
    while (cdf_(hi) < q) {
        lo = hi;
        hi *= 2.0;
        if (!std::isfinite(hi) || hi > 1e300) {
            fail(ErrorCode::NumericFailure, fmt::format("cannot bracket the {} quantile", q));
        }
    }
    return bisect_threshold([&](double x) { return cdf_(x) >= q; }, lo, hi, Tolerance{1e-15, 0.0});
}

}  // namespace reliab
