#pragma once

// Brute-force reference for the worst-case bounds in cbi.hpp: posterior
// confidence under arbitrary complete priors, and exhaustive/randomised search
// for the least favourable prior among those honouring the constraints.

#include "reliab/cbi.hpp"
#include "reliab/types.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace reliab::oracle {

struct DiscretePrior {
    std::vector<double> support;  // ascending rates in [0, 1]
    std::vector<double> masses;

    static DiscretePrior two_point(const cbi::TwoPointPrior& prior);

    // Equal lengths, ascending support in [0, 1], nonnegative masses summing to 1 +- 1e-12.
    void validate() const;

    // Support in [rate_floor, 1] and mass at or below the goal equal to goal_confidence.
    bool is_feasible(const cbi::PriorConstraints& constraints, double tol = 1e-12) const;
};

enum class PriorFamily { Beta, UniformInterval, PointMixture };

struct ContinuousPriorSpec {
    PriorFamily family = PriorFamily::Beta;
    // Beta: {a, b}; UniformInterval: {lo, hi}; PointMixture: {x0, w0, x1, w1, ...}.
    std::vector<double> parameters;

    static ContinuousPriorSpec beta(double a, double b);
    static ContinuousPriorSpec uniform(double lo, double hi);
    static ContinuousPriorSpec point_mixture(const DiscretePrior& prior);

    void validate() const;
};

// Pr(X <= bound | obs) by exact log-space summation.
double posterior_confidence(const DiscretePrior& prior, const Observation& obs, double bound);

// Pr(X <= bound | obs) by adaptive tanh-sinh quadrature of the log-scaled
// integrand, split at the bound and around the posterior bulk.
double posterior_confidence(const ContinuousPriorSpec& prior, const Observation& obs,
                            double bound);

struct OracleOptions {
    std::size_t grid_size = 2000;
    std::size_t random_mixtures = 1000;
    std::uint64_t seed = 42;
};

struct OracleResult {
    double minimum = 1.0;
    DiscretePrior minimizer;
    double pair_minimum = 1.0;     // best over the exhaustive two-atom search
    double mixture_minimum = 1.0;  // best over the random feasible mixtures
    std::size_t pairs_evaluated = 0;
};

// Log-spaced rates on [rate_floor, 1] plus the analytic candidates: floor,
// goal, bound, a point just above the bound, failures/miles.
std::vector<double> candidate_grid(const cbi::PriorConstraints& constraints,
                                   const Observation& obs, double bound, std::size_t grid_size);

OracleResult minimize_over_feasible_priors(const cbi::PriorConstraints& constraints,
                                           const Observation& obs, double bound,
                                           const OracleOptions& options = {});

}  // namespace reliab::oracle
