// reliab_acceptance c1..c8: one PASS/FAIL line per check, nonzero exit when
// any check fails. Expected values and tolerances come from the checked-in
// scenario files where one exists.

#include "reliab/baseline.hpp"
#include "reliab/cbi.hpp"
#include "reliab/cli/commands.hpp"
#include "reliab/cli/scenario.hpp"
#include "reliab/error.hpp"
#include "reliab/evaluation.hpp"
#include "reliab/prior_oracle.hpp"
#include "reliab/random.hpp"
#include "reliab/srgm.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <string>

using namespace reliab;

namespace {

int failures = 0;

void report(const std::string& id, bool pass, const std::string& detail) {
    std::printf("%s %s: %s\n", pass ? "PASS" : "FAIL", id.c_str(), detail.c_str());
    if (!pass) ++failures;
}

void within(const std::string& id, const std::string& what, double value, double expected, double tolerance) {
    const double rel = value / expected - 1.0;
    report(id, std::abs(rel) <= tolerance,
           fmt::format("{} = {:.4g}, expected {:.4g} +- {:g}% (off {:+.3f}%)", what, value, expected,
                       100 * tolerance, 100 * rel));
}

const cbi::PriorConstraints road{1.09e-10, 0.9, 1e-15};

// Q1: miles for p = 1.09e-8 at 95%.
void c1() {
    const ReliabilityClaim claim{1.09e-8, 0.95};
    within("c1.classical", "classical failure-free miles", baseline::classical_failure_free_miles(claim), 2.75e8, 0.01);
    within("c1.cbi_theta_0.9", "CBI miles, theta 0.9", cbi::required_miles(road, 0, claim), 6.92e7, 0.01);
    within("c1.cbi_theta_0.1", "CBI miles, theta 0.1",
           cbi::required_miles({road.goal, 0.1, road.rate_floor}, 0, claim), 4.77e8, 0.01);
}

// Table 1, driven by config/scenarios/table1.json.
void c2() {
    const auto config = cli::load_miles_scenario(cli::scenario_path("table1"));
    for (const auto& ref : config.reference) {
        const auto claim = std::find_if(config.claims.begin(), config.claims.end(),
                                        [&](const auto& c) { return c.label == ref.claim_label; });
        // One label can name different methods for different claims.
        const auto method = claim == config.claims.end()
                                ? config.methods.end()
                                : std::find_if(config.methods.begin(), config.methods.end(), [&](const auto& m) {
                                      return m.label == ref.method_label && config.applies(m, *claim);
                                  });
        const std::string id = fmt::format("c2.{}.{}", ref.method_label, ref.claim_label);
        if (method == config.methods.end() || claim == config.claims.end()) {
            report(id, false, "scenario reference does not match a method and claim");
            continue;
        }
        const auto cell = cli::evaluate_miles(config, *method, *claim);
        if (!ref.reproduced) {
            report(id, !cell.miles || cell.status == "not reproduced",
                   fmt::format("reference {:.3g} reported as not reproduced (no stated method)", ref.miles));
            continue;
        }
        if (!cell.miles) {
            report(id, false, fmt::format("no value ({})", cell.status));
            continue;
        }
        within(id, fmt::format("{} k={}", ref.method_label, claim->k), *cell.miles, ref.miles, ref.tolerance);
    }
}

// Small goal: CBI under a thousand miles, classical two to four times more.
void c3() {
    const cbi::PriorConstraints small{1e-4, 0.9, 1e-15};
    const ReliabilityClaim claim{1e-3, 0.95};
    const double cbi_miles = cbi::required_miles(small, 0, claim);
    const double classical = baseline::classical_failure_free_miles(claim);
    report("c3.cbi_below_1000", cbi_miles < 1000.0, fmt::format("CBI miles = {:.1f}", cbi_miles));
    const double ratio = classical / cbi_miles;
    report("c3.ratio", ratio >= 2.0 && ratio <= 4.0,
           fmt::format("classical / CBI = {:.1f} / {:.1f} = {:.3f}, expected in [2, 4]", classical, cbi_miles, ratio));
}

// Compensation curve, driven by config/scenarios/fig4.json.
void c4() {
    const auto config = cli::load_compensation_scenario(cli::scenario_path("fig4"));
    std::vector<cli::CompensationCurve> curves;
    for (const auto& s : config.settings) curves.push_back(cli::compensation_curve(config, s));
    const auto& main = curves.front();

    within("c4.minimum_abscissa", fmt::format("argmin n2 over n1 ({})", main.setting.label), main.argmin_n1,
           *config.n_star, config.minimum_abscissa_tolerance);
    std::printf("     note: n* = %.5g; the dip sits at the n1 supporting p* (%.5g), where n1 + n2 = %.5g\n",
                main.n_star, main.n1_at_p_star.value_or(NAN), main.argmin_n1 + main.n2_min);
    within("c4.n_star", "n* from its defining equation", main.n_star, *config.n_star, config.minimum_abscissa_tolerance);
    if (main.p_star) {
        within("c4.p_star", "p*", *main.p_star, *config.p_star, config.p_star_tolerance);
    } else {
        report("c4.p_star", false, "p* undefined for the reference setting");
    }
    within("c4.asymptote", fmt::format("n2 at n1 = {:.3g}", main.n1.back()), main.n2_at_largest_n1,
           *config.asymptote, config.asymptote_tolerance);

    double lo = INFINITY;
    double hi = -INFINITY;
    for (const auto& c : curves) {
        lo = std::min(lo, c.n_star);
        hi = std::max(hi, c.n_star);
    }
    report("c4.n_star_invariant", hi == lo, fmt::format("n* over {} settings in [{:.10g}, {:.10g}]", curves.size(), lo, hi));
    for (const auto& c : curves) {
        const double rel = c.n2_at_largest_n1 / c.asymptote - 1.0;
        report("c4.asymptote_invariant." + c.setting.label, std::abs(rel) <= config.asymptote_tolerance,
               fmt::format("n2(n1 = {:.3g}) = {:.5g} vs 1/goal = {:.5g}{}", c.n1.back(), c.n2_at_largest_n1,
                           c.asymptote,
                           c.setting.confidence <= c.setting.theta ? " (confidence = theta: n2 = n* - n1)" : ""));
    }
}

// Oracle against the analytic worst case over random tuples.
void c5() {
    Rng rng(2024);
    int undercut = 0;
    int mismatched = 0;
    double worst_gap = 0.0;
    const int tuples = 200;
    for (int i = 0; i < tuples; ++i) {
        const double floor = std::pow(10.0, rng.uniform(-4.0, -2.0));
        const double goal = std::min(0.4, floor * std::pow(10.0, rng.uniform(0.1, 2.0)));
        const cbi::PriorConstraints cs{goal, rng.uniform(0.05, 0.95), floor};
        const auto k = rng.below(21);
        const double n = static_cast<double>(k) + rng.uniform(0.0, 200.0 - static_cast<double>(k));
        const double p = std::min(0.99, goal * std::pow(10.0, rng.uniform(-0.3, 1.5)));
        const Observation obs{k, n};
        const double analytic = cbi::worst_case_posterior_confidence(cs, obs, p);
        const auto r = oracle::minimize_over_feasible_priors(cs, obs, p, {2000, 1000, 42 + static_cast<std::uint64_t>(i)});
        if (r.minimum < analytic - 1e-6) ++undercut;
        if (std::abs(r.minimum - analytic) > 1e-6) ++mismatched;
        worst_gap = std::max(worst_gap, std::abs(r.minimum - analytic));
    }
    report("c5.never_undercuts", undercut == 0, fmt::format("{} of {} tuples undercut by more than 1e-6", undercut, tuples));
    report("c5.matches", mismatched == 0,
           fmt::format("{} of {} tuples differ by more than 1e-6; largest difference {:.2e}", mismatched, tuples, worst_gap));
}

// Classical and uniform-prior requirements differ by one mile. The uniform
// posterior after n failure-free miles is 1 - (1 - p)^(n + 1), so the
// classical requirement is the larger of the two.
void c6() {
    double worst = 0.0;
    int points = 0;
    for (double p : {1e-9, 1.09e-8, 1e-6, 1e-3, 0.05}) {
        for (double c : {0.5, 0.9, 0.95, 0.99}) {
            const ReliabilityClaim claim{p, c};
            const double classical = baseline::classical_failure_free_miles(claim);
            const double beta = baseline::beta_required_miles(baseline::BetaPrior::uniform(), 0, claim, {1e-14, 1e-12});
            // Bisection stops within 1e-14 relative; allow a few ulps of the mileage on top.
            const double allowed = 4e-14 * classical + 1e-9;
            worst = std::max(worst, std::abs(classical - beta - 1.0) / allowed);
            ++points;
        }
    }
    report("c6.constant_difference", worst <= 1.0,
           fmt::format("classical - uniform-prior miles = +1 at {} (p, c) points; worst deviation {:.2f} of the "
                       "solver tolerance",
                       points, worst));
}

PredictiveDistribution exponential(double rate) {
    return PredictiveDistribution::from_hazard([=](double x) { return rate * x; },
                                               [=](double) { return std::log(rate); }, INFINITY, 1.0 / rate);
}

data::FailureHistory go_history(double a, double b, double horizon, std::uint64_t seed) {
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
    auto h = data::FailureHistory::from_gaps(std::move(gaps), seed);
    h.total_miles = horizon;
    return h;
}

void c7() {
    const int runs = 50;
    const std::size_t count = 200;

    // (a) true-rate predictor on homogeneous data.
    int inside = 0;
    for (int seed = 0; seed < runs; ++seed) {
        Rng rng(1000 + seed);
        const double rate = 1e-3;
        const auto d = exponential(rate);
        std::vector<PredictionRecord> records;
        for (std::size_t i = 0; i < count; ++i) {
            const double t = rng.exponential(rate);
            records.push_back({i, d.cdf(t), d.log_density(t), d.median(), t});
        }
        if (eval::u_plot(records).ks_distance < eval::kolmogorov_band(records.size())) ++inside;
    }
    report("c7a.true_rate_within_band", inside >= 0.9 * runs,
           fmt::format("KS below the 5% band in {} of {} runs (need 90%)", inside, runs));

    // (b) recalibrating a predictor that assumes half the true rate.
    int reduced = 0;
    for (int seed = 0; seed < runs; ++seed) {
        Rng rng(2000 + seed);
        const auto d = exponential(0.5);
        std::vector<PredictionRecord> records;
        std::vector<PredictiveDistribution> predictives;
        for (std::size_t i = 0; i < count; ++i) {
            const double t = rng.exponential(1.0);
            records.push_back({i, d.cdf(t), d.log_density(t), d.median(), t});
            predictives.push_back(d);
        }
        const auto recal = eval::recalibrate_series(records, predictives, eval::default_warmup);
        const auto raw = eval::from_index(records, recal.front().index);
        if (eval::u_plot(recal).ks_distance < eval::u_plot(raw).ks_distance) ++reduced;
    }
    report("c7b.recalibration_reduces_ks", reduced >= 0.9 * runs,
           fmt::format("recalibrated KS strictly smaller in {} of {} runs (need 90%)", reduced, runs));

    // (c) fitted GO against fitted DU on GO data.
    const int replications = 20;
    int positive = 0;
    for (int r = 0; r < replications; ++r) {
        const double horizon = 1e5;
        const auto h = go_history(400.0, -std::log(0.05) / horizon, horizon, 3000 + r);
        srgm::RollingOptions options;
        options.start_index = 50;
        const auto go = srgm::rolling_predictions(srgm::ModelKind::GO, h, options);
        const auto du = srgm::rolling_predictions(srgm::ModelKind::DU, h, options);
        std::map<std::size_t, PredictionRecord> du_by_index;
        for (const auto& rec : du.records) du_by_index[rec.index] = rec;
        std::vector<PredictionRecord> a;
        std::vector<PredictionRecord> b;
        for (const auto& rec : go.records) {
            if (auto it = du_by_index.find(rec.index); it != du_by_index.end()) {
                a.push_back(rec);
                b.push_back(it->second);
            }
        }
        if (!a.empty() && eval::log_plr(a, b).log_plr.back() > 0.0) ++positive;
    }
    report("c7c.plr_favours_true_model", positive >= 0.8 * replications,
           fmt::format("log PLR(GO : DU) endpoint positive in {} of {} replications (need 80%)", positive,
                       replications));

    // (d) recalibrated consensus on the bundled fixture across ten seeds.
    cli::SrgmRequest request;
    request.dataset = std::string(RELIAB_SOURCE_DIR) + "/data/waymo_monthly.csv";
    int in_band = 0;
    std::string values;
    for (std::uint64_t seed = 42; seed < 52; ++seed) {
        const auto history = cli::load_history(request.dataset, seed);
        const auto analysis = cli::analyse_history(history, request);
        const double v = analysis.consensus_recal.value_or(NAN);
        if (v >= 5000.0 && v <= 10000.0) ++in_band;
        values += fmt::format("{}{:.0f}", values.empty() ? "" : " ", v);
    }
    report("c7d.fixture_consensus_mmtd", in_band == 10,
           fmt::format("recalibrated consensus MMTD in [5000, 10000] for {} of 10 seeds: {}", in_band, values));
}

void c8() {
    const cbi::PriorConstraints settings[] = {road, {1e-14, 0.5, 1e-15}, {1e-6, 0.99, 1e-12}, {0.1, 0.1, 1e-15}};
    const double miles[] = {0.0, 1.0, 1e4, 1e8, 1e11, 1e13, 1e15};
    const double bounds[] = {1e-15, 1e-14, 1e-12, 1e-10, 1e-8, 1e-5, 1e-2, 0.5, 1.0};
    const std::uint64_t counts[] = {0, 1, 10, 100, 1000, 10000};
    std::size_t evaluated = 0;
    std::size_t bad = 0;
    std::string first_bad;
    auto check = [&](const std::string& what, const std::function<double()>& f) {
        ++evaluated;
        try {
            const double v = f();
            if (std::isfinite(v) && v >= 0.0 && v <= 1.0) return;
            if (first_bad.empty()) first_bad = fmt::format("{} -> {}", what, v);
        } catch (const std::exception& e) {
            if (first_bad.empty()) first_bad = fmt::format("{} threw {}", what, e.what());
        }
        ++bad;
    };
    for (double n : miles) {
        for (double p : bounds) {
            for (std::uint64_t k : counts) {
                if (static_cast<double>(k) > n) continue;
                const Observation obs{k, n};
                for (const auto& cs : settings) {
                    check(fmt::format("cbi k={} n={:g} p={:g} goal={:g}", k, n, p, cs.goal),
                          [&] { return cbi::worst_case_posterior_confidence(cs, obs, p); });
                }
                for (const auto& prior : {baseline::BetaPrior::uniform(), baseline::BetaPrior::jeffreys()}) {
                    check(fmt::format("beta({:g},{:g}) k={} n={:g} p={:g}", prior.a, prior.b, k, n, p),
                          [&] { return baseline::beta_posterior_confidence(prior, obs, p); });
                }
            }
        }
    }
    report("c8.stability_sweep", bad == 0,
           fmt::format("{} of {} evaluations outside [0, 1] or raised{}", bad, evaluated,
                       first_bad.empty() ? "" : "; first: " + first_bad));
}

}  // namespace

int main(int argc, char** argv) {
    const std::map<std::string, std::function<void()>> criteria{{"c1", c1}, {"c2", c2}, {"c3", c3}, {"c4", c4},
                                                                {"c5", c5}, {"c6", c6}, {"c7", c7}, {"c8", c8}};
    std::vector<std::string> selected(argv + 1, argv + argc);
    if (selected.empty()) {
        for (const auto& [name, _] : criteria) selected.push_back(name);
    }
    for (const auto& name : selected) {
        const auto it = criteria.find(name);
        if (it == criteria.end()) {
            std::fprintf(stderr, "unknown criterion '%s' (use c1..c8)\n", name.c_str());
            return 2;
        }
        try {
            it->second();
        } catch (const std::exception& e) {
            report(name, false, fmt::format("raised {}", e.what()));
        }
    }
    return failures == 0 ? 0 : 1;
}
