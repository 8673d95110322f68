#include "reliab/prior_oracle.hpp"

#include "reliab/error.hpp"
#include "reliab/numeric.hpp"
#include "reliab/random.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

namespace reliab::oracle {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Unnormalised log posterior density exponents: (alpha-1) ln x + (beta-1) ln(1-x).
struct LogKernel {
    double alpha;
    double beta;

    double operator()(double x) const noexcept {
        return xlogy(alpha - 1.0, std::log(x)) + xlogy(beta - 1.0, log1m(x));
    }
};

std::vector<double> breakpoints(const LogKernel& kernel, double lo, double hi, double bound) {
    const double a = kernel.alpha;
    const double b = kernel.beta;
    const double center = (a > 1.0 && b > 1.0) ? (a - 1.0) / (a + b - 2.0) : a / (a + b);
    const double width = std::sqrt(a * b / ((a + b) * (a + b) * (a + b + 1.0)));

    std::vector<double> points{lo, hi};
    if (bound > lo && bound < hi) points.push_back(bound);
    if (center > lo && center < hi) points.push_back(center);
    for (int j = -2; j <= 12; ++j) {
        const double step = width * std::ldexp(1.0, j);
        points.push_back(center - step);
        points.push_back(center + step);
    }
    for (int j = 1; j <= 60; j += 2) {
        points.push_back(center * std::ldexp(1.0, -j));
        points.push_back(1.0 - (1.0 - center) * std::ldexp(1.0, -j));
    }
    std::erase_if(points, [&](double x) { return !(x >= lo && x <= hi); });
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    return points;
}

// log of the kernel integral over [lo, min(bound, hi)] and [max(bound, lo), hi].
std::pair<double, double> split_log_integrals(const LogKernel& kernel, double lo, double hi,
                                              double bound) {
    const std::vector<double> points = breakpoints(kernel, lo, hi, bound);
    double scale = kNegInf;
    for (double x : points) {
        const double v = kernel(x);
        if (std::isfinite(v)) scale = std::max(scale, v);
    }
    if (!std::isfinite(scale)) scale = 0.0;

    boost::math::quadrature::tanh_sinh<double> integrator(15);
    auto integrand = [&](double x) {
        const double v = std::exp(kernel(x) - scale);
        return std::isfinite(v) ? v : 0.0;
    };
    double below = 0.0;
    double above = 0.0;
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        const double u = points[i];
        const double v = points[i + 1];
        if (!(v > u)) continue;
        const double piece = integrator.integrate(integrand, u, v, 1e-13);
        (v <= bound ? below : above) += piece;
    }
    return {std::log(below) + scale, std::log(above) + scale};
}

double confidence_from_logs(double log_below, double log_above) {
    const double log_total = log_sum_exp(std::array{log_below, log_above});
    if (!std::isfinite(log_total)) {
        fail(ErrorCode::NormalizationFailure, "posterior normaliser is zero at working precision");
    }
    return std::exp(log_below - log_total);
}

// Kept separate from cbi::log_kernel so the oracle shares no evaluation path
// with the code it checks.
double binomial_log_kernel(double x, const Observation& obs) noexcept {
    const double k = static_cast<double>(obs.failures);
    const double log_x = k > 0.0 ? k * std::log(x) : 0.0;
    const double log_1mx = obs.miles > k ? (obs.miles - k) * std::log1p(-x) : 0.0;
    return log_x + log_1mx;
}

// Confidence for a two-atom prior given per-atom log weights (log mass + log kernel).
double pair_confidence(double log_w_lower, bool lower_counts, double log_w_upper,
                       bool upper_counts) {
    if (lower_counts && upper_counts) return 1.0;
    if (!lower_counts && !upper_counts) return 0.0;
    const double diff = lower_counts ? log_w_upper - log_w_lower : log_w_lower - log_w_upper;
    return logistic_complement(diff);
}

}  // namespace

DiscretePrior DiscretePrior::two_point(const cbi::TwoPointPrior& prior) {
    return DiscretePrior{{prior.lower_atom, prior.upper_atom},
                         {prior.lower_mass, 1.0 - prior.lower_mass}};
}

void DiscretePrior::validate() const {
    if (support.size() != masses.size() || support.empty()) {
        fail(ErrorCode::InvalidArgument, "discrete prior needs matching, nonempty support and masses");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < support.size(); ++i) {
        if (!(support[i] >= 0.0 && support[i] <= 1.0)) {
            fail(ErrorCode::InvalidArgument, fmt::format("support point {} outside [0, 1]", support[i]));
        }
        if (i > 0 && support[i] < support[i - 1]) {
            fail(ErrorCode::InvalidArgument, "support must be ascending");
        }
        if (!(masses[i] >= 0.0)) fail(ErrorCode::InvalidArgument, "negative prior mass");
        total += masses[i];
    }
    if (std::abs(total - 1.0) > 1e-12) {
        fail(ErrorCode::InvalidArgument, fmt::format("prior masses sum to {}, not 1", total));
    }
}

bool DiscretePrior::is_feasible(const cbi::PriorConstraints& constraints, double tol) const {
    double below_goal = 0.0;
    for (std::size_t i = 0; i < support.size(); ++i) {
        if (masses[i] > 0.0 && support[i] < constraints.rate_floor) return false;
        if (support[i] <= constraints.goal) below_goal += masses[i];
    }
    return std::abs(below_goal - constraints.goal_confidence) <= tol;
}

ContinuousPriorSpec ContinuousPriorSpec::beta(double a, double b) {
    return {PriorFamily::Beta, {a, b}};
}

ContinuousPriorSpec ContinuousPriorSpec::uniform(double lo, double hi) {
    return {PriorFamily::UniformInterval, {lo, hi}};
}

ContinuousPriorSpec ContinuousPriorSpec::point_mixture(const DiscretePrior& prior) {
    ContinuousPriorSpec spec{PriorFamily::PointMixture, {}};
    for (std::size_t i = 0; i < prior.support.size(); ++i) {
        spec.parameters.push_back(prior.support[i]);
        spec.parameters.push_back(prior.masses[i]);
    }
    return spec;
}

void ContinuousPriorSpec::validate() const {
    const auto& p = parameters;
    switch (family) {
        case PriorFamily::Beta:
            if (p.size() != 2 || !(p[0] > 0.0 && p[1] > 0.0)) {
                fail(ErrorCode::InvalidArgument, "Beta prior needs two positive shapes");
            }
            return;
        case PriorFamily::UniformInterval:
            if (p.size() != 2 || !(p[0] >= 0.0 && p[0] < p[1] && p[1] <= 1.0)) {
                fail(ErrorCode::InvalidArgument, "uniform prior needs 0 <= lo < hi <= 1");
            }
            return;
        case PriorFamily::PointMixture:
            if (p.empty() || p.size() % 2 != 0) {
                fail(ErrorCode::InvalidArgument, "point mixture needs (rate, mass) pairs");
            }
            return;
    }
}

double posterior_confidence(const DiscretePrior& prior, const Observation& obs, double bound) {
    prior.validate();
    obs.validate();
    std::vector<double> below;
    std::vector<double> all;
    for (std::size_t i = 0; i < prior.support.size(); ++i) {
        if (prior.masses[i] == 0.0) continue;
        const double w = std::log(prior.masses[i]) + binomial_log_kernel(prior.support[i], obs);
        all.push_back(w);
        if (prior.support[i] <= bound) below.push_back(w);
    }
    const double log_total = log_sum_exp(all);
    if (!std::isfinite(log_total)) {
        fail(ErrorCode::NormalizationFailure, "every prior atom has zero likelihood");
    }
    if (below.empty()) return 0.0;
    return std::min(1.0, std::exp(log_sum_exp(below) - log_total));
}

double posterior_confidence(const ContinuousPriorSpec& prior, const Observation& obs,
                            double bound) {
    prior.validate();
    obs.validate();
    const double k = static_cast<double>(obs.failures);
    const double n = obs.miles;
    switch (prior.family) {
        case PriorFamily::PointMixture: {
            DiscretePrior discrete;
            std::vector<std::pair<double, double>> atoms;
            for (std::size_t i = 0; i < prior.parameters.size(); i += 2) {
                atoms.emplace_back(prior.parameters[i], prior.parameters[i + 1]);
            }
            std::sort(atoms.begin(), atoms.end());
            for (auto [x, w] : atoms) {
                discrete.support.push_back(x);
                discrete.masses.push_back(w);
            }
            return posterior_confidence(discrete, obs, bound);
        }
        case PriorFamily::Beta: {
            const LogKernel kernel{prior.parameters[0] + k, prior.parameters[1] + n - k};
            const auto [below, above] = split_log_integrals(kernel, 0.0, 1.0, bound);
            return confidence_from_logs(below, above);
        }
        case PriorFamily::UniformInterval: {
            const double lo = prior.parameters[0];
            const double hi = prior.parameters[1];
            if (bound <= lo) return 0.0;
            if (bound >= hi) return 1.0;
            const LogKernel kernel{k + 1.0, n - k + 1.0};
            const auto [below, above] = split_log_integrals(kernel, lo, hi, bound);
            return confidence_from_logs(below, above);
        }
    }
    return 0.0;
}

std::vector<double> candidate_grid(const cbi::PriorConstraints& constraints,
                                   const Observation& obs, double bound, std::size_t grid_size) {
    if (grid_size < 3) fail(ErrorCode::InvalidArgument, "grid needs at least 3 points");
    const double log_floor = std::log(constraints.rate_floor);
    std::vector<double> grid;
    grid.reserve(grid_size + 6);
    for (std::size_t i = 0; i < grid_size; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(grid_size - 1);
        grid.push_back(std::exp(log_floor * (1.0 - t)));
    }
    grid.front() = constraints.rate_floor;
    grid.back() = 1.0;
    grid.push_back(constraints.goal);
    auto add_if_in_range = [&](double x) {
        if (x >= constraints.rate_floor && x <= 1.0) grid.push_back(x);
    };
    add_if_in_range(bound);
    // The least favourable upper atom is the supremum just above the bound.
    add_if_in_range(bound * (1.0 + 1e-12));
    add_if_in_range(obs.empirical_rate());
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

OracleResult minimize_over_feasible_priors(const cbi::PriorConstraints& constraints,
                                           const Observation& obs, double bound,
                                           const OracleOptions& options) {
    constraints.validate();
    obs.validate();
    const double theta = constraints.goal_confidence;
    const double log_lower_mass = std::log(theta);
    const double log_upper_mass = theta < 1.0 ? log1m(theta) : -std::numeric_limits<double>::infinity();

    const std::vector<double> grid = candidate_grid(constraints, obs, bound, options.grid_size);
    std::vector<double> lower;
    std::vector<double> upper;
    for (double x : grid) (x <= constraints.goal ? lower : upper).push_back(x);

    OracleResult result;
    std::vector<double> upper_log_w(upper.size());
    for (std::size_t j = 0; j < upper.size(); ++j) {
        upper_log_w[j] = log_upper_mass + binomial_log_kernel(upper[j], obs);
    }

    std::size_t best_i = 0;
    std::size_t best_j = 0;
    if (theta == 1.0 || upper.empty()) {
        // Every feasible prior keeps all of its mass on [floor, goal].
        for (std::size_t i = 0; i < lower.size(); ++i) {
            const double value = lower[i] <= bound ? 1.0 : 0.0;
            ++result.pairs_evaluated;
            if (value < result.pair_minimum) {
                result.pair_minimum = value;
                best_i = i;
            }
        }
        result.minimizer = DiscretePrior{{lower[best_i]}, {1.0}};
    } else {
        for (std::size_t i = 0; i < lower.size(); ++i) {
            const double log_w_lower = log_lower_mass + binomial_log_kernel(lower[i], obs);
            const bool lower_counts = lower[i] <= bound;
            for (std::size_t j = 0; j < upper.size(); ++j) {
                if (!std::isfinite(log_w_lower) && !std::isfinite(upper_log_w[j])) continue;
                const double value =
                    pair_confidence(log_w_lower, lower_counts, upper_log_w[j], upper[j] <= bound);
                ++result.pairs_evaluated;
                if (value < result.pair_minimum) {
                    result.pair_minimum = value;
                    best_i = i;
                    best_j = j;
                }
            }
        }
        result.minimizer = DiscretePrior{{lower[best_i], upper[best_j]}, {theta, 1.0 - theta}};
    }
    result.minimum = result.pair_minimum;

    // Randomised feasible mixtures as an independent counterexample search.
    Rng rng(options.seed);
    const double log_floor = std::log(constraints.rate_floor);
    const double log_goal = std::log(constraints.goal);
    const double analytic_upper = std::max(bound, obs.empirical_rate());
    for (std::size_t s = 0; s < options.random_mixtures; ++s) {
        std::vector<std::pair<double, double>> atoms;
        auto add_block = [&](double mass, double log_lo, double log_hi, bool open_lo, double anchor) {
            const std::size_t count = 1 + rng.below(4);
            std::vector<double> weights(count);
            for (double& w : weights) w = rng.exponential();
            const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
            for (std::size_t a = 0; a < count; ++a) {
                double x = 0.0;
                if (anchor > 0.0 && rng.uniform() < 0.5) {
                    x = anchor * std::exp(rng.uniform(-0.2, 0.2));
                } else {
                    x = std::exp(rng.uniform(log_lo, log_hi));
                }
                x = std::clamp(x, std::exp(log_lo), std::exp(log_hi));
                if (open_lo && x <= std::exp(log_lo)) x = std::nextafter(std::exp(log_lo), 2.0);
                atoms.emplace_back(x, mass * weights[a] / sum);
            }
        };
        add_block(theta, log_floor, log_goal, false, 0.0);
        if (theta < 1.0) add_block(1.0 - theta, log_goal, 0.0, true, analytic_upper);
        std::sort(atoms.begin(), atoms.end());

        DiscretePrior candidate;
        double total = 0.0;
        for (auto [x, w] : atoms) {
            candidate.support.push_back(x);
            candidate.masses.push_back(w);
            total += w;
        }
        for (double& w : candidate.masses) w /= total;
        double value = 1.0;
        try {
            value = posterior_confidence(candidate, obs, bound);
        } catch (const Error&) {
            continue;
        }
        if (value < result.mixture_minimum) result.mixture_minimum = value;
        if (value < result.minimum) {
            result.minimum = value;
            result.minimizer = std::move(candidate);
        }
    }
    return result;
}

}  // namespace reliab::oracle
