#include "reliab/error.hpp"
#include "reliab/random.hpp"
#include "reliab/srgm.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <doctest.h>

#include <cmath>
#include <numeric>

using namespace reliab;
using namespace reliab::srgm;
using reliab::data::FailureHistory;

namespace {

FailureHistory poisson_history(std::size_t events, double rate, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> gaps(events);
    for (auto& g : gaps) g = rng.exponential(rate);
    return FailureHistory::from_gaps(std::move(gaps), seed);
}

// GO process on [0, horizon] by inverting the mean function at unit-rate
// arrival times.
FailureHistory go_history(double a, double b, double horizon, std::uint64_t seed) {
    Rng rng(seed);
    const double mass = a * -std::expm1(-b * horizon);
    std::vector<double> gaps;
    double s = 0.0;
    double last = 0.0;
    while ((s += rng.exponential()) < mass) {
        const double t = -std::log1p(-s / a) / b;
        gaps.push_back(t - last);
        last = t;
    }
    auto h = FailureHistory::from_gaps(std::move(gaps), seed);
    h.total_miles = horizon;
    return h;
}

// Inverse of the observed information for two parameters, by central differences.
std::array<double, 2> standard_errors(ModelKind kind, const std::vector<double>& x, const FailureHistory& h) {
    auto ll = [&](double d0, double d1) {
        const std::vector<double> y{x[0] + d0, x[1] + d1};
        return log_likelihood(kind, y, h);
    };
    const double e0 = 1e-4 * x[0];
    const double e1 = 1e-4 * x[1];
    const double f00 = (ll(e0, 0) - 2 * ll(0, 0) + ll(-e0, 0)) / (e0 * e0);
    const double f11 = (ll(0, e1) - 2 * ll(0, 0) + ll(0, -e1)) / (e1 * e1);
    const double f01 = (ll(e0, e1) - ll(e0, -e1) - ll(-e0, e1) + ll(-e0, -e1)) / (4 * e0 * e1);
    const double det = f00 * f11 - f01 * f01;
    return {std::sqrt(-f11 / det), std::sqrt(-f00 / det)};
}

}  // namespace

TEST_CASE("model names and parameters") {
    CHECK(all_models.size() == 5);
    for (auto kind : all_models) {
        CHECK(parse_model_kind(to_string(kind)) == kind);
    }
    CHECK(parse_model_kind("lv") == ModelKind::LV);
    CHECK_THROWS_AS(parse_model_kind("JM"), Error);
    CHECK(parameter_names(ModelKind::GO).size() == 2);
    CHECK(parameter_names(ModelKind::LI).size() == 3);
    CHECK(parameter_names(ModelKind::LV).size() == 3);
}

TEST_CASE("short histories are refused") {
    const auto h = poisson_history(9, 1.0, 1);
    try {
        fit(ModelKind::GO, h);
        FAIL("expected InsufficientHistory");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InsufficientHistory);
    }
}

TEST_CASE("Duane on a homogeneous process has unit shape") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto h = poisson_history(500, 1e-3, seed);
        const auto m = fit(ModelKind::DU, h);
        CAPTURE(seed);
        CHECK(std::abs(m.parameter("beta") - 1.0) < 0.1);
        CHECK(std::isfinite(m.rescaling_ks));
    }
}

TEST_CASE("Littlewood-Verrall on iid data shows no growth") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto h = poisson_history(500, 1e-3, seed);
        const auto m = fit(ModelKind::LV, h);
        // Growth of the scale over the whole history relative to its start.
        const double growth = m.parameter("beta2") * 500.0 / (m.parameter("beta1") + m.parameter("beta2"));
        CAPTURE(seed);
        CHECK(growth < 0.5);
    }
}

TEST_CASE("Goel-Okumoto recovers simulated parameters") {
    const double a = 600.0;
    const double horizon = 1e5;
    const double b = -std::log(0.15) / horizon;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto h = go_history(a, b, horizon, seed);
        const auto m = fit(ModelKind::GO, h);
        const auto se = standard_errors(ModelKind::GO, m.parameters, h);
        CAPTURE(seed);
        CAPTURE(h.size());
        CHECK(std::abs(m.parameter("a") - a) <= 3.0 * se[0]);
        CHECK(std::abs(m.parameter("b") - b) <= 3.0 * se[1]);
    }
}

TEST_CASE("fits beat random feasible parameters") {
    const auto h = go_history(600.0, 1.9e-5, 1e5, 21);
    Rng rng(99);
    for (auto kind : all_models) {
        const auto m = fit(kind, h);
        CHECK(m.log_likelihood == doctest::Approx(log_likelihood(kind, m.parameters, h)).epsilon(1e-9));
        int beaten = 0;
        for (int i = 0; i < 100; ++i) {
            std::vector<double> x = m.parameters;
            for (auto& v : x) v *= std::exp(rng.uniform(-2.0, 2.0));
            if (kind == ModelKind::LI) x[0] = std::max(x[0], static_cast<double>(h.size()) + rng.uniform(0.0, 50.0));
            const double ll = log_likelihood(kind, x, h);
            if (!std::isfinite(ll) || ll <= m.log_likelihood + 1e-9) ++beaten;
        }
        CAPTURE(to_string(kind));
        CHECK(beaten == 100);
    }
}

TEST_CASE("predictive distributions") {
    SUBCASE("constant hazard has median ln 2 / rate") {
        const double rate = 2.5e-3;
        const auto d = PredictiveDistribution::from_hazard([=](double x) { return rate * x; },
                                                           [=](double) { return std::log(rate); },
                                                           INFINITY, 1.0 / rate);
        CHECK(d.median() == doctest::Approx(std::log(2.0) / rate).epsilon(1e-10));
    }
    SUBCASE("Pareto median") {
        const auto d = PredictiveDistribution::pareto(3.0, 500.0);
        CHECK(d.median() == doctest::Approx(500.0 * (std::pow(2.0, 1.0 / 3.0) - 1.0)).epsilon(1e-12));
    }
    SUBCASE("defective distributions have no finite median") {
        const auto d = PredictiveDistribution::from_hazard([](double x) { return 0.5 * -std::expm1(-x); },
                                                           [](double x) { return std::log(0.5) - x; }, 0.5, 1.0);
        CHECK(d.limit() == doctest::Approx(1.0 - std::exp(-0.5)));
        CHECK_FALSE(d.try_median());
        CHECK_THROWS_AS(d.median(), Error);
    }
}

TEST_CASE("fitted predictives are proper and invert their medians") {
    const auto h = go_history(600.0, 1.9e-5, 1e5, 8);
    for (auto kind : all_models) {
        const auto m = fit(kind, h);
        const auto d = predict_next(m, h);
        CAPTURE(to_string(kind));
        CHECK(d.cdf(0.0) == doctest::Approx(0.0));
        double previous = 0.0;
        for (double x = 1.0; x < 1e7; x *= 1.7) {
            const double c = d.cdf(x);
            CHECK(c >= previous);
            if (d.density(x) > 1e-300 && c < 1.0 - 1e-9) CHECK(c > previous);
            previous = c;
        }
        boost::math::quadrature::exp_sinh<double> integrator;
        const double mass = integrator.integrate([&](double x) { return d.density(x); });
        CHECK(std::abs(mass - d.limit()) <= 1e-4);
        if (const auto median = d.try_median()) {
            CHECK(std::abs(d.cdf(*median) - 0.5) <= 1e-8);
        }
    }
}

TEST_CASE("rolling predictions count and range") {
    const auto h = go_history(600.0, 1.9e-5, 1e5, 13).prefix(120);
    for (auto kind : all_models) {
        RollingOptions options;
        options.start_index = 60;
        const auto r = rolling_predictions(kind, h, options);
        CAPTURE(to_string(kind));
        CHECK(r.records.size() + r.skipped.size() == 60);
        CHECK(r.predictives.size() == r.records.size());
        for (std::size_t i = 0; i < r.records.size(); ++i) {
            const auto& rec = r.records[i];
            CHECK(rec.u >= 0.0);
            CHECK(rec.u <= 1.0);
            CHECK(rec.realized == h.interfailure_miles[rec.index]);
            CHECK(rec.u == doctest::Approx(r.predictives[i].cdf(rec.realized)).epsilon(1e-14));
            if (i > 0) CHECK(rec.index > r.records[i - 1].index);
        }
    }
}

TEST_CASE("the generating model predicts better on average") {
    double total = 0.0;
    int wins = 0;
    for (std::uint64_t seed = 100; seed < 120; ++seed) {
        const auto h = go_history(300.0, -std::log(0.1) / 1e5, 1e5, seed);
        RollingOptions options;
        options.start_index = 40;
        const auto go = rolling_predictions(ModelKind::GO, h, options);
        const auto du = rolling_predictions(ModelKind::DU, h, options);
        double sum_go = 0.0;
        double sum_du = 0.0;
        std::size_t j = 0;
        for (const auto& r : go.records) {
            while (j < du.records.size() && du.records[j].index < r.index) ++j;
            if (j == du.records.size() || du.records[j].index != r.index) continue;
            sum_go += r.log_density;
            sum_du += du.records[j].log_density;
        }
        total += sum_go - sum_du;
        if (sum_go > sum_du) ++wins;
    }
    CHECK(total > 0.0);
    CHECK(wins >= 12);
}

TEST_CASE("censored tail can be left out of the likelihood") {
    auto h = poisson_history(60, 1e-3, 4);
    h.total_miles += 5e4;
    FitOptions censored;
    FitOptions uncensored;
    uncensored.include_censoring = false;
    const auto with = fit(ModelKind::DU, h, censored);
    const auto without = fit(ModelKind::DU, h, uncensored);
    CHECK(with.exposure == h.total_miles);
    CHECK(without.exposure == doctest::Approx(h.total_miles - 5e4));
    CHECK(with.parameter("beta") < without.parameter("beta"));
}
