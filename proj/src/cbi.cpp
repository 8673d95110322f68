#include "reliab/cbi.hpp"

#include "reliab/error.hpp"

#include <fmt/format.h>

#include <cmath>
#include <limits>

namespace reliab::cbi {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMaxBracketMiles = 1e300;
constexpr double kCrossoverLimit = 1e18;
constexpr double kTopBound = 1.0 - 1e-12;

// ln((1 - theta) / theta); -inf when theta == 1.
double log_prior_odds_against(double goal_confidence) {
    return log1m(goal_confidence) - std::log(goal_confidence);
}

// ln(theta (1 - c) / (c (1 - theta))).
double log_confidence_gap(double goal_confidence, double confidence) {
    return std::log(goal_confidence) + log1m(confidence) - std::log(confidence) -
           log1m(goal_confidence);
}

void check_confidence(double confidence) {
    if (!(confidence > 0.0 && confidence < 1.0)) {
        fail(ErrorCode::InvalidArgument,
             fmt::format("confidence must lie in (0, 1), got {}", confidence));
    }
}

double lower_atom_for(const PriorConstraints& cs, const Observation& obs) {
    return log_kernel(cs.rate_floor, obs) < log_kernel(cs.goal, obs) ? cs.rate_floor : cs.goal;
}

}  // namespace

void PriorConstraints::validate() const {
    if (!(rate_floor > 0.0 && rate_floor < goal && goal <= 1.0)) {
        fail(ErrorCode::InvalidConstraints,
             fmt::format("need 0 < rate_floor < goal <= 1, got rate_floor={} goal={}", rate_floor,
                         goal));
    }
    if (!(goal_confidence > 0.0 && goal_confidence <= 1.0)) {
        fail(ErrorCode::InvalidConstraints,
             fmt::format("need 0 < goal_confidence <= 1, got {}", goal_confidence));
    }
}

double log_kernel(double rate, const Observation& obs) noexcept {
    const double k = static_cast<double>(obs.failures);
    return xlogy(k, std::log(rate)) + xlogy(obs.miles - k, log1m(rate));
}

TwoPointPrior worst_case_prior(const PriorConstraints& constraints, const Observation& obs,
                               double bound) {
    constraints.validate();
    obs.validate();
    if (!(bound <= 1.0)) fail(ErrorCode::InvalidArgument, fmt::format("bound {} exceeds 1", bound));
    if (bound <= constraints.goal) {
        fail(ErrorCode::ClaimBelowGoal,
             fmt::format("bound {} does not exceed the goal {}; worst-case confidence is 0", bound,
                         constraints.goal));
    }
    const double mode = obs.empirical_rate();
    return TwoPointPrior{
        .lower_atom = lower_atom_for(constraints, obs),
        .upper_atom = mode <= bound ? bound : mode,
        .lower_mass = constraints.goal_confidence,
    };
}

double worst_case_posterior_confidence(const PriorConstraints& constraints, const Observation& obs,
                             double bound) {
    constraints.validate();
    obs.validate();
    if (bound <= constraints.goal) return 0.0;
    const TwoPointPrior prior = worst_case_prior(constraints, obs, bound);
    const double log_odds = log_kernel(prior.upper_atom, obs) - log_kernel(prior.lower_atom, obs) +
                            log_prior_odds_against(constraints.goal_confidence);
    if (std::isnan(log_odds)) {
        fail(ErrorCode::NumericFailure, "posterior odds evaluated to NaN");
    }
    return logistic_complement(log_odds);
}

double required_miles(const PriorConstraints& constraints, std::uint64_t failures,
                      const ReliabilityClaim& claim, const Tolerance& tol) {
    constraints.validate();
    claim.validate();
    if (claim.bound <= constraints.goal) {
        fail(ErrorCode::ClaimBelowGoal,
             fmt::format("no mileage supports bound {} at or below the goal {}", claim.bound,
                         constraints.goal));
    }
    // With no evidence the worst case is exactly the prior confidence; decide
    // that case exactly rather than through a rounded logistic.
    if (failures == 0 && claim.confidence <= constraints.goal_confidence) return 0.0;
    const double k = static_cast<double>(failures);
    auto reached = [&](double miles) {
        return worst_case_posterior_confidence(constraints, {failures, miles}, claim.bound) >=
               claim.confidence;
    };
    if (reached(k)) return k;

    double lo = k;
    double hi = std::max(2.0 * k, 1.0);
    while (!reached(hi)) {
        lo = hi;
        hi *= 2.0;
        if (hi > kMaxBracketMiles) {
            fail(ErrorCode::Unsatisfiable,
                 fmt::format("confidence {} not reached for bound {} below {} miles",
                             claim.confidence, claim.bound, kMaxBracketMiles));
        }
    }
    return bisect_threshold(reached, lo, hi, tol);
}

double closed_form_miles(double lower_atom, std::uint64_t failures, const ReliabilityClaim& claim,
                         double goal_confidence) {
    const double k = static_cast<double>(failures);
    const double numerator = xlogy(k, std::log(lower_atom) - std::log(claim.bound)) +
                             log_confidence_gap(goal_confidence, claim.confidence);
    return k + numerator / (log1m(claim.bound) - log1m(lower_atom));
}

std::optional<double> required_miles_closed_form(const PriorConstraints& constraints,
                                                 std::uint64_t failures,
                                                 const ReliabilityClaim& claim) {
    constraints.validate();
    claim.validate();
    if (claim.bound <= constraints.goal) return std::nullopt;
    const double k = static_cast<double>(failures);
    if (constraints.goal_confidence == 1.0) return k;

    // Confidence reaches c iff the odds condition holds for both candidate
    // atoms, so the requirement is the larger of the two closed forms.
    const double via_floor =
        std::max(k, closed_form_miles(constraints.rate_floor, failures, claim,
                                      constraints.goal_confidence));
    const double via_goal = std::max(
        k, closed_form_miles(constraints.goal, failures, claim, constraints.goal_confidence));
    const bool floor_case = via_floor > via_goal;
    const double miles = floor_case ? via_floor : via_goal;
    const double assumed_atom = floor_case ? constraints.rate_floor : constraints.goal;

    const Observation obs{failures, miles};
    if (obs.empirical_rate() > claim.bound) return std::nullopt;
    const double kernel_floor = log_kernel(constraints.rate_floor, obs);
    const double kernel_goal = log_kernel(constraints.goal, obs);
    const bool tie = std::abs(kernel_floor - kernel_goal) <=
                     1e-12 * std::max(1.0, std::abs(kernel_goal));
    if (!tie && lower_atom_for(constraints, obs) != assumed_atom) return std::nullopt;
    return miles;
}

double supported_claim(const PriorConstraints& constraints, const Observation& obs,
                       double confidence, const Tolerance& tol) {
    constraints.validate();
    obs.validate();
    check_confidence(confidence);
    const double goal = constraints.goal;
    if (goal >= kTopBound ||
        worst_case_posterior_confidence(constraints, obs, kTopBound) < confidence) {
        fail(ErrorCode::NoClaimSupportable,
             fmt::format("{} failures in {} miles support no bound at confidence {}", obs.failures,
                         obs.miles, confidence));
    }
    // Bisect on log(bound - goal): the interesting bounds crowd against the
    // goal, and p - goal must keep its own relative precision.
    auto reached = [&](double log_gap) {
        return worst_case_posterior_confidence(constraints, obs, goal + std::exp(log_gap)) >= confidence;
    };
    const double lo = std::log(goal * 1e-12);
    const double hi = std::log(kTopBound - goal);
    if (reached(lo)) return goal + std::exp(lo);
    const double log_gap = bisect_threshold(reached, lo, hi, Tolerance{0.0, tol.relative});
    return goal + std::exp(log_gap);
}

CompensationResult compensation_miles(const PriorConstraints& constraints, double initial_miles,
                                      double confidence) {
    if (!(initial_miles > 0.0)) {
        fail(ErrorCode::InvalidArgument,
             fmt::format("initial miles must be positive, got {}", initial_miles));
    }
    const Tolerance tight{1e-13, 0.0};
    const double bound = supported_claim(constraints, {0, initial_miles}, confidence, tight);
    const double total = required_miles(constraints, 1, {bound, confidence}, tight);
    return CompensationResult{
        .initial_miles = initial_miles,
        .supported_bound = bound,
        .total_miles = total,
        .extra_miles = total - initial_miles,
    };
}

double n_star(const PriorConstraints& constraints) {
    constraints.validate();
    const double log_ratio = std::log(constraints.goal) - std::log(constraints.rate_floor);
    const double slope = log1m(constraints.goal) - log1m(constraints.rate_floor);
    // Difference of the one-failure log kernels at goal and floor after n miles.
    auto gap = [&](double miles) { return log_ratio + (miles - 1.0) * slope; };

    double hi = 2.0;
    while (gap(hi) > 0.0) {
        hi *= 2.0;
        if (hi > kCrossoverLimit) {
            fail(ErrorCode::CrossoverDiverged,
                 fmt::format("crossover mileage exceeds {} (goal {} too close to floor {})",
                             kCrossoverLimit, constraints.goal, constraints.rate_floor));
        }
    }
    return bisect_root(gap, 1.0, hi, Tolerance{1e-14, 0.0});
}

double p_star(const PriorConstraints& constraints, double confidence) {
    constraints.validate();
    check_confidence(confidence);
    if (!(confidence > constraints.goal_confidence)) {
        fail(ErrorCode::InvalidArgument,
             fmt::format("crossover bound needs confidence {} above prior confidence {}",
                         confidence, constraints.goal_confidence));
    }
    const double crossover = n_star(constraints);
    const double goal = constraints.goal;
    const double lo = std::log(goal * 1e-12);
    const double hi = std::log(kTopBound - goal);

    auto root_with = [&](double lower_atom) {
        auto excess = [&](double log_gap) {
            const ReliabilityClaim claim{goal + std::exp(log_gap), confidence};
            return closed_form_miles(lower_atom, 1, claim, constraints.goal_confidence) - crossover;
        };
        if (!(excess(lo) > 0.0 && excess(hi) < 0.0)) {
            fail(ErrorCode::NumericFailure,
                 fmt::format("crossover bound not bracketed for lower atom {}", lower_atom));
        }
        return goal + std::exp(bisect_root(excess, lo, hi, Tolerance{0.0, 1e-13}));
    };

    const double via_goal = root_with(goal);
    const double via_floor = root_with(constraints.rate_floor);
    if (std::abs(via_goal - via_floor) > 1e-6 * via_goal) {
        fail(ErrorCode::NumericFailure,
             fmt::format("crossover bound disagrees between lower atoms: {} vs {}", via_goal,
                         via_floor));
    }
    return via_goal;
}

}  // namespace reliab::cbi
