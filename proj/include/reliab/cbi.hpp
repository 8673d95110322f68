#pragma once

// Conservative Bayesian inference for per-mile failure probabilities.
//
// The assessor states only partial prior knowledge:
//
//   Pr(X <= goal) = goal_confidence,   Pr(X >= rate_floor) = 1
//
// and every question is answered under the prior, among all priors honouring
// those two constraints, that minimises posterior confidence in the claim.
// That prior always has two atoms, so posterior confidence reduces to
//
//   1 / (1 + exp(K(upper) - K(lower)) * (1 - goal_confidence) / goal_confidence)
//
// with K(x) = k ln x + (n - k) ln(1 - x). All evaluation stays in log space:
// (1 - x)^n underflows long before the mileages of interest (n ~ 1e10).

#include "reliab/numeric.hpp"
#include "reliab/types.hpp"

#include <cstdint>
#include <optional>

namespace reliab::cbi {

struct PriorConstraints {
    double goal = 0.0;             // engineering target for the per-mile failure probability
    double goal_confidence = 0.0;  // prior probability that the target is already met
    double rate_floor = 0.0;       // technology floor: no prior mass below this rate

    // 0 < rate_floor < goal <= 1 and 0 < goal_confidence <= 1, else InvalidConstraints.
    void validate() const;
};

// Worst-case prior: mass `lower_mass` at `lower_atom` in [rate_floor, goal],
// the rest at `upper_atom` above the goal.
struct TwoPointPrior {
    double lower_atom = 0.0;
    double upper_atom = 0.0;
    double lower_mass = 0.0;
};

struct CompensationResult {
    double initial_miles = 0.0;    // failure-free miles before the failure
    double supported_bound = 0.0;  // claim those miles supported
    double total_miles = 0.0;      // miles needed for the same claim with one failure
    double extra_miles = 0.0;      // total_miles - initial_miles
};

// k ln(rate) + (n - k) ln(1 - rate), the log of the binomial kernel.
double log_kernel(double rate, const Observation& obs) noexcept;

// Endpoints minimise the kernel on [rate_floor, goal] (ties go to the goal);
// the upper atom sits at max(bound, failures/miles).
// Throws ClaimBelowGoal when bound <= goal.
TwoPointPrior worst_case_prior(const PriorConstraints& constraints, const Observation& obs,
                               double bound);

// Smallest posterior confidence Pr(X <= bound | obs) over all feasible priors.
// Identically 0 for bound <= goal.
double worst_case_posterior_confidence(const PriorConstraints& constraints, const Observation& obs,
                             double bound);

// Miles needed, given `failures`, for the worst-case confidence in the claim to
// reach claim.confidence. Exponential bracketing plus bisection on miles.
double required_miles(const PriorConstraints& constraints, std::uint64_t failures,
                      const ReliabilityClaim& claim, const Tolerance& tol = {});

// Closed-form miles for a fixed lower atom, valid while failures/miles <= claim.bound:
//   k + (k ln(lower/p) + ln(theta (1-c) / (c (1-theta)))) / ln((1-p)/(1-lower))
double closed_form_miles(double lower_atom, std::uint64_t failures, const ReliabilityClaim& claim,
                         double goal_confidence);

// Independent route to required_miles: evaluates the closed form for both
// candidate lower atoms and returns the answer only when it is consistent
// with the case it assumed (the chosen atom is the kernel minimiser at that
// mileage and failures/miles <= bound). nullopt when no case is consistent.
std::optional<double> required_miles_closed_form(const PriorConstraints& constraints,
                                                 std::uint64_t failures,
                                                 const ReliabilityClaim& claim);

// Smallest bound whose worst-case confidence reaches `confidence` given obs.
// Throws NoClaimSupportable if even bound = 1 - 1e-12 falls short.
double supported_claim(const PriorConstraints& constraints, const Observation& obs,
                       double confidence, const Tolerance& tol = {});

// Failure-free miles `initial_miles` support some claim at `confidence`; after
// one failure, how many more failure-free miles restore that same claim.
CompensationResult compensation_miles(const PriorConstraints& constraints, double initial_miles,
                                      double confidence);

// Mileage at which, with one failure, both candidate lower atoms give equal
// kernels: goal (1-goal)^(n-1) = floor (1-floor)^(n-1).
// Independent of goal_confidence. Throws CrossoverDiverged above 1e18 miles.
double n_star(const PriorConstraints& constraints);

// Bound at which the one-failure requirement equals n_star. Solved
// separately with each lower atom; the two roots must agree to 1e-6.
// Requires confidence > goal_confidence.
double p_star(const PriorConstraints& constraints, double confidence);

}  // namespace reliab::cbi
