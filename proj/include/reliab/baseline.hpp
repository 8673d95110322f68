#pragma once

// Reference methods the conservative bounds are compared against: the
// classical failure-free bound, a normal-approximation power calculation,
// and conjugate Beta-prior Bayesian inference.

#include "reliab/numeric.hpp"
#include "reliab/types.hpp"

#include <cstdint>

namespace reliab::baseline {

struct BetaPrior {
    double a = 1.0;
    double b = 1.0;

    static constexpr BetaPrior uniform() noexcept { return {1.0, 1.0}; }
    static constexpr BetaPrior jeffreys() noexcept { return {0.5, 0.5}; }

    void validate() const;
};

// ln(1 - c) / ln(1 - p): miles after which zero failures would have had
// probability at most 1 - c if the true rate were p.
double classical_failure_free_miles(const ReliabilityClaim& claim);

// z_c^2 * true_rate / (bound - true_rate)^2, z_c the one-sided normal quantile.
double rand_power_miles(double true_rate, double bound, double confidence);

// Posterior Pr(X <= bound) under a Beta(a, b) prior: I_bound(a + k, b + n - k).
double beta_posterior_confidence(const BetaPrior& prior, const Observation& obs, double bound);

// Gamma-limit approximation P(a + k, n * bound), accurate for tiny bounds
// with large mileage. Kept as an independent route for cross-checks.
double beta_confidence_poisson_limit(const BetaPrior& prior, const Observation& obs, double bound);

double beta_required_miles(const BetaPrior& prior, std::uint64_t failures,
                           const ReliabilityClaim& claim, const Tolerance& tol = {});

}  // namespace reliab::baseline
