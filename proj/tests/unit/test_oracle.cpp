#include "reliab/baseline.hpp"
#include "reliab/cbi.hpp"
#include "reliab/error.hpp"
#include "reliab/prior_oracle.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace reliab;
using reliab::cbi::PriorConstraints;

TEST_CASE("discrete priors are validated") {
    CHECK_THROWS_AS((oracle::DiscretePrior{{0.1, 0.2}, {0.5, 0.6}}.validate()), Error);
    CHECK_THROWS_AS((oracle::DiscretePrior{{0.2, 0.1}, {0.5, 0.5}}.validate()), Error);
    CHECK_THROWS_AS((oracle::DiscretePrior{{0.1}, {0.5, 0.5}}.validate()), Error);
    CHECK_NOTHROW((oracle::DiscretePrior{{0.1, 0.2}, {0.25, 0.75}}.validate()));

    const PriorConstraints cs{0.1, 0.5, 0.01};
    CHECK((oracle::DiscretePrior{{0.05, 0.3}, {0.5, 0.5}}.is_feasible(cs)));
    CHECK_FALSE((oracle::DiscretePrior{{0.05, 0.3}, {0.4, 0.6}}.is_feasible(cs)));
    CHECK_FALSE((oracle::DiscretePrior{{0.001, 0.3}, {0.5, 0.5}}.is_feasible(cs)));
}

TEST_CASE("posterior under the worst-case prior equals the analytic bound") {
    const PriorConstraints road{1.09e-10, 0.9, 1e-15};
    const struct {
        Observation obs;
        double p;
    } cases[] = {{{0, 6.92e7}, 1.09e-8}, {{1, 3.88e9}, 4.12e-9}, {{43, 7.89e10}, 8.72e-9}, {{0, 0}, 1e-9}};
    for (const auto& c : cases) {
        // The bound is an infimum approached as the upper atom moves down onto p,
        // so evaluate with the atom a relative 1e-12 above it.
        auto worst = cbi::worst_case_prior(road, c.obs, c.p);
        if (worst.upper_atom == c.p) worst.upper_atom = c.p * (1.0 + 1e-12);
        const auto prior = oracle::DiscretePrior::two_point(worst);
        CHECK(oracle::posterior_confidence(prior, c.obs, c.p) ==
              doctest::Approx(cbi::worst_case_posterior_confidence(road, c.obs, c.p)).epsilon(1e-9));
    }
}

TEST_CASE("continuous priors") {
    SUBCASE("uniform prior, no failures") {
        for (double n : {0.0, 10.0, 1e4}) {
            for (double p : {1e-4, 0.01, 0.4}) {
                const double expected = -std::expm1((n + 1.0) * std::log1p(-p));
                CHECK(oracle::posterior_confidence(oracle::ContinuousPriorSpec::beta(1, 1), {0, n}, p) ==
                      doctest::Approx(expected).epsilon(1e-8));
                CHECK(oracle::posterior_confidence(oracle::ContinuousPriorSpec::uniform(0, 1), {0, n}, p) ==
                      doctest::Approx(expected).epsilon(1e-8));
            }
        }
    }
    SUBCASE("point mixture matches the discrete evaluation") {
        const oracle::DiscretePrior prior{{0.01, 0.05, 0.4}, {0.3, 0.3, 0.4}};
        const auto spec = oracle::ContinuousPriorSpec::point_mixture(prior);
        CHECK(oracle::posterior_confidence(spec, {3, 40}, 0.1) ==
              doctest::Approx(oracle::posterior_confidence(prior, {3, 40}, 0.1)).epsilon(1e-12));
    }
    SUBCASE("point mass at the bound gives full confidence") {
        const oracle::DiscretePrior at_p{{0.2}, {1.0}};
        for (const Observation obs : {Observation{0, 0}, Observation{3, 10}, Observation{50, 60}}) {
            CHECK(oracle::posterior_confidence(at_p, obs, 0.2) == 1.0);
        }
    }
    SUBCASE("evidence impossible under every atom is reported") {
        const oracle::DiscretePrior certain_failure{{1.0}, {1.0}};
        try {
            oracle::posterior_confidence(certain_failure, {0, 5}, 0.5);
            FAIL("expected NormalizationFailure");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::NormalizationFailure);
        }
    }
}

TEST_CASE("candidate grid contains the analytic points") {
    const PriorConstraints cs{0.1, 0.5, 0.01};
    const auto grid = oracle::candidate_grid(cs, {2, 10}, 0.3, 200);
    CHECK(std::is_sorted(grid.begin(), grid.end()));
    for (double x : {0.01, 0.1, 0.3, 0.2}) {
        CHECK(std::find(grid.begin(), grid.end(), x) != grid.end());
    }
    CHECK(grid.front() == cs.rate_floor);
    CHECK(grid.back() == 1.0);
}

TEST_CASE("search over feasible priors reproduces the analytic minimum") {
    const PriorConstraints cs{0.1, 0.5, 0.01};
    const auto r = oracle::minimize_over_feasible_priors(cs, {2, 10}, 0.3);
    const double analytic = cbi::worst_case_posterior_confidence(cs, {2, 10}, 0.3);
    CHECK(std::abs(r.minimum - analytic) <= 1e-6);
    CHECK(r.minimum >= analytic - 1e-6);
    CHECK(r.mixture_minimum >= analytic - 1e-6);
    REQUIRE(r.minimizer.support.size() == 2);
    CHECK(r.minimizer.is_feasible(cs));
    const double x1 = r.minimizer.support[0];
    const double x3 = r.minimizer.support[1];
    CHECK((x1 == 0.01 || x1 == 0.1));
    CHECK((std::abs(x3 - 0.3) <= 1e-6 || x3 == 0.2));
}

TEST_CASE("bounds at or below the goal have zero minimum") {
    const PriorConstraints cs{0.1, 0.5, 0.01};
    const auto r = oracle::minimize_over_feasible_priors(cs, {1, 20}, 0.05);
    CHECK(r.minimum == doctest::Approx(0.0).epsilon(1e-12));
    REQUIRE(r.minimizer.support.size() == 2);
    CHECK(r.minimizer.support[0] > 0.05);
    CHECK(r.minimizer.support[0] <= 0.1);
}

TEST_CASE("full prior confidence in the goal gives full posterior confidence") {
    const PriorConstraints cs{0.1, 1.0, 0.01};
    const auto r = oracle::minimize_over_feasible_priors(cs, {2, 10}, 0.3);
    CHECK(r.minimum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("finer grids never raise the minimum") {
    const PriorConstraints cs{0.05, 0.7, 0.002};
    const Observation obs{3, 80};
    double previous = 1.0;
    for (std::size_t grid : {50u, 200u, 1000u, 2000u}) {
        const auto r = oracle::minimize_over_feasible_priors(cs, obs, 0.2, {grid, 200, 42});
        CAPTURE(grid);
        CHECK(r.pair_minimum <= previous + 1e-12);
        previous = r.pair_minimum;
    }
    CHECK(std::abs(previous - cbi::worst_case_posterior_confidence(cs, obs, 0.2)) <= 1e-6);
}

TEST_CASE("searches are reproducible for a fixed seed") {
    const PriorConstraints cs{0.1, 0.5, 0.01};
    const auto a = oracle::minimize_over_feasible_priors(cs, {2, 10}, 0.3, {300, 500, 9});
    const auto b = oracle::minimize_over_feasible_priors(cs, {2, 10}, 0.3, {300, 500, 9});
    CHECK(a.mixture_minimum == b.mixture_minimum);
}
