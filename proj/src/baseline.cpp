#include "reliab/baseline.hpp"

#include "reliab/error.hpp"

#include <boost/math/distributions/normal.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <fmt/format.h>

#include <cmath>

namespace reliab::baseline {

namespace {

constexpr double kMaxBracketMiles = 1e300;

template <class Eval>
double guarded(Eval&& eval, const char* what) {
    double value = 0.0;
    try {
        value = eval();
    } catch (const std::exception& e) {
        fail(ErrorCode::NumericFailure, fmt::format("{} failed: {}", what, e.what()));
    }
    if (!std::isfinite(value) || value < 0.0 || value > 1.0) {
        fail(ErrorCode::NumericFailure, fmt::format("{} returned {}", what, value));
    }
    return value;
}

}  // namespace

void BetaPrior::validate() const {
    if (!(a > 0.0 && b > 0.0 && std::isfinite(a) && std::isfinite(b))) {
        fail(ErrorCode::InvalidArgument, fmt::format("Beta prior needs a, b > 0, got ({}, {})", a, b));
    }
}

double classical_failure_free_miles(const ReliabilityClaim& claim) {
    claim.validate();
    if (claim.bound >= 1.0) fail(ErrorCode::InvalidArgument, "classical bound needs p < 1");
    return log1m(claim.confidence) / log1m(claim.bound);
}

double rand_power_miles(double true_rate, double bound, double confidence) {
    if (!(true_rate > 0.0 && bound > true_rate && bound < 1.0)) {
        fail(ErrorCode::InvalidArgument,
             fmt::format("power analysis needs 0 < true_rate < bound < 1, got {} and {}", true_rate,
                         bound));
    }
    if (!(confidence > 0.0 && confidence < 1.0)) {
        fail(ErrorCode::InvalidArgument, fmt::format("confidence {} outside (0, 1)", confidence));
    }
    const double z = boost::math::quantile(boost::math::normal_distribution<double>{}, confidence);
    const double margin = bound - true_rate;
    return z * z * true_rate / (margin * margin);
}

double beta_posterior_confidence(const BetaPrior& prior, const Observation& obs, double bound) {
    prior.validate();
    obs.validate();
    if (!(bound >= 0.0 && bound <= 1.0)) {
        fail(ErrorCode::InvalidArgument, fmt::format("bound {} outside [0, 1]", bound));
    }
    const double k = static_cast<double>(obs.failures);
    if (obs.miles < k) fail(ErrorCode::InvalidArgument, "more failures than miles");
    return guarded([&] { return boost::math::ibeta(prior.a + k, prior.b + obs.miles - k, bound); },
                   "incomplete beta");
}

double beta_confidence_poisson_limit(const BetaPrior& prior, const Observation& obs,
                                     double bound) {
    prior.validate();
    obs.validate();
    const double k = static_cast<double>(obs.failures);
    return guarded([&] { return boost::math::gamma_p(prior.a + k, obs.miles * bound); },
                   "incomplete gamma");
}

double beta_required_miles(const BetaPrior& prior, std::uint64_t failures,
                           const ReliabilityClaim& claim, const Tolerance& tol) {
    prior.validate();
    claim.validate();
    const double k = static_cast<double>(failures);
    auto reached = [&](double miles) {
        return beta_posterior_confidence(prior, {failures, miles}, claim.bound) >= claim.confidence;
    };
    if (reached(k)) return k;
    double lo = k;
    double hi = std::max(2.0 * k, 1.0);
    while (!reached(hi)) {
        lo = hi;
        hi *= 2.0;
        if (hi > kMaxBracketMiles) {
            fail(ErrorCode::Unsatisfiable,
                 fmt::format("Beta posterior never reaches {} for bound {}", claim.confidence,
                             claim.bound));
        }
    }
    return bisect_threshold(reached, lo, hi, tol);
}

}  // namespace reliab::baseline
