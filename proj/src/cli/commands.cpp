#include "reliab/cli/commands.hpp"

#include "reliab/baseline.hpp"
#include "reliab/cli/svg.hpp"
#include "reliab/error.hpp"
#include "reliab/evaluation.hpp"
#include "reliab/prior_oracle.hpp"

#include <boost/math/tools/minima.hpp>
#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

namespace reliab::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string num(double v) { return format_number(v); }
std::string num(std::optional<double> v) { return v ? format_number(*v) : ""; }

std::optional<double> median_of(std::vector<double> values) {
    if (values.empty()) return std::nullopt;
    std::sort(values.begin(), values.end());
    const std::size_t m = values.size() / 2;
    return values.size() % 2 == 1 ? values[m] : 0.5 * (values[m - 1] + values[m]);
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorCode::InvalidArgument, fmt::format("cannot write '{}'", path.string()));
    out << content;
}

}  // namespace

void emit(const CommandResult& result, const EmitOptions& options, std::ostream& out) {
    const bool csv = options.format != OutputFormat::Svg;
    const bool svg = options.format != OutputFormat::Csv;
    if (!options.out_dir.empty()) {
        std::filesystem::create_directories(options.out_dir);
        for (const auto& o : result.outputs) {
            if (csv) write_file(options.out_dir / (o.name + ".csv"), o.table.to_string());
            if (svg && !o.chart.empty()) {
                write_file(options.out_dir / (o.name + ".svg"),
                           render_svg(o.table, chart_preset(o.chart, o.table)));
            }
        }
    } else {
        const bool labelled = result.outputs.size() > 1;
        for (const auto& o : result.outputs) {
            if (csv) {
                if (labelled) out << "# " << o.name << ".csv\n";
                o.table.write(out);
            }
            if (svg && !o.chart.empty()) {
                if (labelled) out << "# " << o.name << ".svg\n";
                out << render_svg(o.table, chart_preset(o.chart, o.table));
            }
        }
    }
    for (const auto& note : result.notes) out << note << '\n';
}

// miles -----------------------------------------------------------------

MilesCell evaluate_miles(const ScenarioConfig& config, const MethodSpec& method, const ClaimPoint& claim) {
    MilesCell cell{method.label, method.method, claim, std::nullopt, "ok"};
    const ReliabilityClaim rc{claim.p, claim.confidence};
    try {
        switch (method.method) {
            case Method::Cbi:
                cell.miles = cbi::required_miles({config.goal, method.theta, config.rate_floor}, claim.k, rc);
                break;
            case Method::Classical:
                // The failure-free bound has no k > 0 counterpart here; see the
                // rand-power method for the table's k = 43 entry.
                if (claim.k > 0) {
                    cell.status = "not reproduced";
                } else {
                    cell.miles = baseline::classical_failure_free_miles(rc);
                }
                break;
            case Method::RandPower:
                cell.miles = baseline::rand_power_miles(claim.p, method.power_bound, claim.confidence);
                break;
            case Method::BetaUniform:
                cell.miles = baseline::beta_required_miles(baseline::BetaPrior::uniform(), claim.k, rc);
                break;
            case Method::BetaJeffreys:
                cell.miles = baseline::beta_required_miles(baseline::BetaPrior::jeffreys(), claim.k, rc);
                break;
        }
    } catch (const Error& e) {
        cell.status = std::string(to_string(e.code()));
        spdlog::warn("{} at p={:g}, k={}: {}", method.label, claim.p, claim.k, e.what());
    }
    return cell;
}

CommandResult cmd_miles(const ScenarioConfig& config) {
    CsvTable table({"label", "method", "claim", "k", "p", "confidence", "miles", "status", "reference",
                    "relative_error"});
    CommandResult result;
    for (const auto& method : config.methods) {
        for (const auto& claim : config.claims) {
            if (!config.applies(method, claim)) continue;
            const MilesCell cell = evaluate_miles(config, method, claim);
            if (cell.status != "ok" && cell.status != "not reproduced") ++result.hard_errors;

            std::optional<double> reference;
            std::string status = cell.status;
            for (const auto& r : config.reference) {
                const bool same_claim = r.claim_label.empty() ? r.p == claim.p : r.claim_label == claim.label;
                if (r.method_label == method.label && same_claim) {
                    reference = r.miles;
                    if (!r.reproduced) status = "not reproduced";
                }
            }
            const double rel = cell.miles && reference ? *cell.miles / *reference - 1.0 : kNaN;
            table.add_row({cell.label, to_string(cell.method), claim.label, std::to_string(claim.k), num(claim.p),
                           num(claim.confidence), num(cell.miles), status, num(reference), num(rel)});
            if (reference) {
                result.notes.push_back(
                    cell.miles ? fmt::format("{:<16} {:<6} miles {:.4g} (reference {:.3g}, {:+.2f}%)", cell.label,
                                             claim.label, *cell.miles, *reference, 100.0 * rel)
                               : fmt::format("{:<16} {:<6} {} (reference {:.3g})", cell.label, claim.label, status,
                                             *reference));
            }
        }
    }
    result.outputs.push_back({config.name.empty() ? "miles" : config.name, std::move(table), "miles"});
    return result;
}

// confidence ------------------------------------------------------------

double evaluate_confidence(const ConfidenceQuery& q) {
    switch (q.method) {
        case Method::Cbi: return cbi::worst_case_posterior_confidence(q.constraints, q.observation, q.p);
        case Method::BetaUniform:
            return baseline::beta_posterior_confidence(baseline::BetaPrior::uniform(), q.observation, q.p);
        case Method::BetaJeffreys:
            return baseline::beta_posterior_confidence(baseline::BetaPrior::jeffreys(), q.observation, q.p);
        case Method::Classical:
            if (q.observation.failures > 0) {
                fail(ErrorCode::InvalidArgument, "classical confidence is defined for failure-free miles only");
            }
            // 1 - Pr(no failures in n miles | rate = p).
            return -std::expm1(q.observation.miles * log1m(q.p));
        case Method::RandPower:
            fail(ErrorCode::InvalidArgument, "rand-power yields miles, not a confidence");
    }
    return kNaN;
}

CommandResult cmd_confidence(const ConfidenceQuery& q) {
    const double value = evaluate_confidence(q);
    CsvTable table({"method", "k", "n", "p", "confidence"});
    table.add_row({to_string(q.method), std::to_string(q.observation.failures), num(q.observation.miles), num(q.p),
                   num(value)});
    return CommandResult{{{"confidence", std::move(table), ""}}, {}, 0};
}

// compensate ------------------------------------------------------------

CompensationCurve compensation_curve(const CompensationConfig& config, const CompensationSetting& setting) {
    const cbi::PriorConstraints cs{config.goal, setting.theta, config.rate_floor};
    CompensationCurve curve;
    curve.setting = setting;
    curve.n_star = cbi::n_star(cs);
    curve.asymptote = 1.0 / config.goal;
    if (setting.confidence > setting.theta) {
        curve.p_star = cbi::p_star(cs, setting.confidence);
        curve.n1_at_p_star = cbi::required_miles(cs, 0, {*curve.p_star, setting.confidence}, {1e-13, 0.0});
    }
    for (double n1 : config.n1_grid()) {
        const auto r = cbi::compensation_miles(cs, n1, setting.confidence);
        curve.n1.push_back(n1);
        curve.supported_bound.push_back(r.supported_bound);
        curve.total_miles.push_back(r.total_miles);
        curve.n2.push_back(r.extra_miles);
    }
    curve.n2_at_largest_n1 = curve.n2.back();

    // n2 rises from small n1 to a peak, dips where the k = 1 requirement
    // switches lower atom, then levels off at 1/goal. The minimum of interest
    // is the dip, so search right of the peak and refine between neighbours.
    const auto peak = std::max_element(curve.n2.begin(), curve.n2.end());
    const auto it = std::min_element(peak, curve.n2.end());
    const auto i = static_cast<std::size_t>(it - curve.n2.begin());
    const double lo = std::log(curve.n1[i == 0 ? 0 : i - 1]);
    const double hi = std::log(curve.n1[std::min(i + 1, curve.n1.size() - 1)]);
    std::uintmax_t iterations = 200;
    const auto [x, value] = boost::math::tools::brent_find_minima(
        [&](double t) { return cbi::compensation_miles(cs, std::exp(t), setting.confidence).extra_miles; }, lo, hi,
        std::numeric_limits<double>::digits / 2, iterations);
    if (value <= *it) {
        curve.argmin_n1 = std::exp(x);
        curve.n2_min = value;
    } else {
        curve.argmin_n1 = curve.n1[i];
        curve.n2_min = *it;
    }
    return curve;
}

CommandResult cmd_compensate(const CompensationConfig& config) {
    CsvTable table({"setting", "confidence", "theta", "n1", "supported_bound", "total_miles", "n2", "n_star",
                    "p_star", "n1_at_p_star", "asymptote"});
    CommandResult result;
    for (const auto& setting : config.settings) {
        CompensationCurve curve;
        try {
            curve = compensation_curve(config, setting);
        } catch (const Error& e) {
            ++result.hard_errors;
            result.notes.push_back(fmt::format("{}: {} ({})", setting.label, e.what(), to_string(e.code())));
            continue;
        }
        for (std::size_t i = 0; i < curve.n1.size(); ++i) {
            table.add_row({setting.label, num(setting.confidence), num(setting.theta), num(curve.n1[i]),
                           num(curve.supported_bound[i]), num(curve.total_miles[i]), num(curve.n2[i]),
                           num(curve.n_star), num(curve.p_star), num(curve.n1_at_p_star), num(curve.asymptote)});
        }
        result.notes.push_back(fmt::format(
            "{}: n*={:.5g} p*={} min n2={:.5g} at n1={:.5g}; n2(n1={:.3g})={:.5g}, 1/goal={:.5g}", setting.label,
            curve.n_star, curve.p_star ? fmt::format("{:.5g}", *curve.p_star) : std::string("undefined (c <= theta)"),
            curve.n2_min, curve.argmin_n1, curve.n1.back(), curve.n2_at_largest_n1, curve.asymptote));
    }
    result.outputs.push_back({config.name.empty() ? "compensate" : config.name, std::move(table), "compensate"});
    return result;
}

// oracle ----------------------------------------------------------------

CommandResult cmd_oracle(const OracleQuery& q) {
    const double analytic = cbi::worst_case_posterior_confidence(q.constraints, q.observation, q.p);
    const auto r = oracle::minimize_over_feasible_priors(
        q.constraints, q.observation, q.p, {q.grid_size, q.random_mixtures, q.seed});
    std::string support;
    for (std::size_t i = 0; i < r.minimizer.support.size(); ++i) {
        if (i > 0) support += ' ';
        support += fmt::format("{:.6g}@{:.6g}", r.minimizer.masses[i], r.minimizer.support[i]);
    }
    CsvTable table({"k", "n", "p", "analytic", "oracle_minimum", "pair_minimum", "mixture_minimum", "difference",
                    "pairs_evaluated", "minimizer"});
    table.add_row({std::to_string(q.observation.failures), num(q.observation.miles), num(q.p), num(analytic),
                   num(r.minimum), num(r.pair_minimum), num(r.mixture_minimum), num(r.minimum - analytic),
                   std::to_string(r.pairs_evaluated), support});
    return CommandResult{{{"oracle", std::move(table), ""}},
                         {fmt::format("analytic {:.10g}, search {:.10g}, difference {:.3g}", analytic, r.minimum,
                                      r.minimum - analytic)},
                         0};
}

// ingest ----------------------------------------------------------------

CommandResult cmd_ingest(const std::filesystem::path& monthly_csv, std::uint64_t seed) {
    const auto records = data::load_monthly_csv(monthly_csv.string());
    const auto history = data::expand_to_interfailure(records, seed);
    std::ostringstream text;
    data::write_history_csv(text, history);
    CommandResult result;
    result.outputs.push_back({"history", CsvTable::parse(text.str()), ""});
    result.notes.push_back(fmt::format("{} months, {} events, {:.0f} miles, {:.0f} miles after the last event",
                                       records.size(), history.size(), history.total_miles,
                                       history.censored_tail()));
    return result;
}

// srgm ------------------------------------------------------------------

data::FailureHistory load_history(const std::filesystem::path& path, std::uint64_t seed) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::ParseError, fmt::format("cannot open '{}'", path.string()));
    std::string first;
    std::getline(in, first);
    in.seekg(0);
    if (first.rfind("index", 0) == 0) return data::read_history_csv(in);
    const auto records = data::parse_monthly_csv(in);
    return data::expand_to_interfailure(records, seed);
}

SrgmAnalysis analyse_history(const data::FailureHistory& history, const SrgmRequest& request) {
    SrgmAnalysis analysis;
    analysis.history = history;
    srgm::RollingOptions rolling;
    rolling.start_index = request.start_index;
    rolling.fit.min_history = request.min_history;
    rolling.fit.include_censoring = request.include_censoring;

    std::vector<double> finals_raw;
    std::vector<double> finals_recal;
    for (srgm::ModelKind kind : request.kinds) {
        ModelRun run;
        run.kind = kind;
        run.rolling = srgm::rolling_predictions(kind, history, rolling);
        for (const auto& s : run.rolling.skipped) {
            spdlog::debug("{} step {} skipped: {}", srgm::to_string(kind), s.index, s.message);
        }
        if (!run.rolling.records.empty()) run.ks_raw = eval::u_plot(run.rolling.records).ks_distance;
        if (request.recalibrate && run.rolling.records.size() > request.warmup) {
            run.recalibrated = eval::recalibrate_series(run.rolling.records, run.rolling.predictives, request.warmup);
            run.ks_recal = eval::u_plot(run.recalibrated).ks_distance;
        }
        try {
            srgm::FitOptions fit;
            fit.min_history = request.min_history;
            fit.include_censoring = request.include_censoring;
            const auto model = srgm::fit(kind, history, fit);
            const auto predictive = srgm::predict_next(model, history);
            run.final_raw = predictive.try_median();
            if (request.recalibrate && run.rolling.records.size() >= request.warmup) {
                run.final_recal = eval::recalibrate(predictive, run.rolling.records, request.warmup).try_median();
            }
        } catch (const Error& e) {
            run.error = fmt::format("{}: {}", to_string(e.code()), e.what());
        }
        if (run.final_raw) finals_raw.push_back(*run.final_raw);
        if (run.final_recal) finals_recal.push_back(*run.final_recal);
        analysis.runs.push_back(std::move(run));
    }
    analysis.consensus_raw = median_of(finals_raw);
    analysis.consensus_recal = median_of(finals_recal);
    return analysis;
}

namespace {

void add_uplot_rows(CsvTable& table, const std::string& series, std::span<const PredictionRecord> records) {
    const auto plot = eval::u_plot(records);
    const double m = static_cast<double>(plot.sorted_u.size());
    table.add_row({series, "0", "0"});
    for (std::size_t i = 0; i < plot.sorted_u.size(); ++i) {
        table.add_row({series, num(plot.sorted_u[i]), num(static_cast<double>(i) / m)});
        table.add_row({series, num(plot.sorted_u[i]), num(static_cast<double>(i + 1) / m)});
    }
    table.add_row({series, "1", "1"});
}

// Restricts both streams to the indices they share.
std::pair<std::vector<PredictionRecord>, std::vector<PredictionRecord>> align(
    std::span<const PredictionRecord> a, std::span<const PredictionRecord> b) {
    std::map<std::size_t, const PredictionRecord*> in_b;
    for (const auto& r : b) in_b[r.index] = &r;
    std::vector<PredictionRecord> out_a;
    std::vector<PredictionRecord> out_b;
    for (const auto& r : a) {
        if (auto it = in_b.find(r.index); it != in_b.end()) {
            out_a.push_back(r);
            out_b.push_back(*it->second);
        }
    }
    return {std::move(out_a), std::move(out_b)};
}

}  // namespace

CommandResult cmd_srgm(const SrgmRequest& request) {
    CommandResult result;
    result.notes.emplace_back(srgm_caveat);
    const std::size_t seeds = std::max<std::size_t>(request.seeds, 1);

    CsvTable sweep({"seed", "model", "final_raw_mmtd", "final_recal_mmtd"});
    std::vector<double> consensus_values;
    for (std::size_t s = 0; s < seeds; ++s) {
        const std::uint64_t seed = request.seed + s;
        const auto history = load_history(request.dataset, seed);
        const auto analysis = analyse_history(history, request);
        for (const auto& run : analysis.runs) {
            sweep.add_row({std::to_string(seed), std::string(srgm::to_string(run.kind)), num(run.final_raw),
                           num(run.final_recal)});
            if (!run.error.empty()) {
                ++result.hard_errors;
                result.notes.push_back(fmt::format("seed {} {}: final fit failed ({})", seed,
                                                   srgm::to_string(run.kind), run.error));
            }
        }
        sweep.add_row({std::to_string(seed), "consensus", num(analysis.consensus_raw), num(analysis.consensus_recal)});
        if (auto c = request.recalibrate ? analysis.consensus_recal : analysis.consensus_raw) {
            consensus_values.push_back(*c);
        }
        if (s > 0) continue;

        // Full output bundle for the first seed.
        CsvTable summary({"model", "variant", "records", "skipped", "ks_distance", "ks_band_5pct", "final_mmtd"});
        CsvTable mmtd({"series", "index", "median"});
        CsvTable uplot({"series", "u", "ecdf"});
        for (const auto& run : analysis.runs) {
            const std::string name(srgm::to_string(run.kind));
            const auto& raw = run.rolling.records;
            const double band = raw.empty() ? kNaN : eval::kolmogorov_band(raw.size());
            summary.add_row({name, "raw", std::to_string(raw.size()), std::to_string(run.rolling.skipped.size()),
                             num(run.ks_raw), num(band), num(run.final_raw)});
            for (const auto& r : raw) mmtd.add_row({name + " raw", std::to_string(r.index), num(r.median)});
            if (!raw.empty()) add_uplot_rows(uplot, name + " raw", raw);
            result.outputs.push_back({"records_" + name, records_table(raw), ""});
            if (!run.recalibrated.empty()) {
                const auto& rec = run.recalibrated;
                summary.add_row({name, "recalibrated", std::to_string(rec.size()),
                                 std::to_string(run.rolling.skipped.size()), num(run.ks_recal),
                                 num(eval::kolmogorov_band(rec.size())), num(run.final_recal)});
                for (const auto& r : rec) mmtd.add_row({name + " recal", std::to_string(r.index), num(r.median)});
                add_uplot_rows(uplot, name + " recal", rec);
                result.outputs.push_back({"records_" + name + "_recal", records_table(rec), ""});
            }
            result.notes.push_back(fmt::format(
                "{}: {} predictions, {} skipped, KS raw {:.4f}{}, final MMTD raw {}{}", name, raw.size(),
                run.rolling.skipped.size(), run.ks_raw,
                run.recalibrated.empty() ? std::string() : fmt::format(" recal {:.4f}", run.ks_recal),
                run.final_raw ? fmt::format("{:.0f}", *run.final_raw) : std::string("none"),
                run.final_recal ? fmt::format(" recal {:.0f}", *run.final_recal) : std::string()));
        }

        CsvTable plr({"pair", "index", "log_plr", "floored"});
        for (std::size_t a = 0; a < analysis.runs.size(); ++a) {
            for (std::size_t b = a + 1; b < analysis.runs.size(); ++b) {
                const auto& ra = analysis.runs[a];
                const auto& rb = analysis.runs[b];
                const bool use_recal = request.recalibrate && !ra.recalibrated.empty() && !rb.recalibrated.empty();
                const auto sa = eval::from_index(use_recal ? ra.recalibrated : ra.rolling.records, request.plr_start);
                const auto sb = eval::from_index(use_recal ? rb.recalibrated : rb.rolling.records, request.plr_start);
                const auto [xa, xb] = align(sa, sb);
                const auto series = eval::log_plr(xa, xb);
                const std::string pair =
                    fmt::format("{}:{}", srgm::to_string(ra.kind), srgm::to_string(rb.kind));
                for (std::size_t i = 0; i < series.log_plr.size(); ++i) {
                    plr.add_row({pair, std::to_string(series.index[i]), num(series.log_plr[i]),
                                 series.floored[i] ? "1" : "0"});
                }
            }
        }
        result.outputs.push_back({"summary", std::move(summary), ""});
        result.outputs.push_back({"mmtd", std::move(mmtd), "mmtd"});
        result.outputs.push_back({"uplot", std::move(uplot), "uplot"});
        result.outputs.push_back({"plr", std::move(plr), "plr"});
        result.notes.push_back(fmt::format("consensus final MMTD (median over models): raw {}, recalibrated {}",
                                           analysis.consensus_raw ? fmt::format("{:.0f}", *analysis.consensus_raw) : "none",
                                           analysis.consensus_recal ? fmt::format("{:.0f}", *analysis.consensus_recal) : "none"));
    }
    if (seeds > 1 && !consensus_values.empty()) {
        const auto [lo, hi] = std::minmax_element(consensus_values.begin(), consensus_values.end());
        result.notes.push_back(fmt::format("consensus MMTD over {} seeds: min {:.0f}, median {:.0f}, max {:.0f}",
                                           consensus_values.size(), *lo, *median_of(consensus_values), *hi));
        result.outputs.push_back({"sweep", std::move(sweep), ""});
    }
    return result;
}

// evaluate --------------------------------------------------------------

CsvTable records_table(const std::vector<PredictionRecord>& records) {
    CsvTable table({"index", "u", "log_density", "median", "realized"});
    for (const auto& r : records) {
        table.add_row({std::to_string(r.index), num(r.u), num(r.log_density), num(r.median), num(r.realized)});
    }
    return table;
}

std::vector<PredictionRecord> records_from_table(const CsvTable& table) {
    const auto index = table.numeric_column("index");
    const auto u = table.numeric_column("u");
    const auto ld = table.numeric_column("log_density");
    const auto median = table.numeric_column("median");
    const auto realized = table.numeric_column("realized");
    std::vector<PredictionRecord> out;
    for (std::size_t i = 0; i < index.size(); ++i) {
        if (!(index[i] >= 0.0) || !(u[i] >= 0.0 && u[i] <= 1.0)) {
            fail(ErrorCode::ParseError, fmt::format("record {}: index must be >= 0 and u in [0, 1]", i + 1));
        }
        PredictionRecord r;
        r.index = static_cast<std::size_t>(index[i]);
        r.u = u[i];
        r.log_density = ld[i];
        if (std::isfinite(median[i])) r.median = median[i];
        r.realized = realized[i];
        out.push_back(r);
    }
    return out;
}

namespace {

CsvTable read_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::ParseError, fmt::format("cannot open '{}'", path.string()));
    return CsvTable::read(in);
}

}  // namespace

CommandResult cmd_evaluate(const EvaluateRequest& request) {
    CommandResult result;
    if (request.render) {
        const CsvTable table = read_table(*request.render);
        result.outputs.push_back({request.render->stem().string(), table, request.chart});
        return result;
    }
    const auto a = records_from_table(read_table(request.records));
    if (a.empty()) fail(ErrorCode::InvalidArgument, "no prediction records to evaluate");
    CsvTable uplot({"series", "u", "ecdf"});
    add_uplot_rows(uplot, request.records.stem().string(), a);
    const double ks = eval::u_plot(a).ks_distance;
    result.notes.push_back(fmt::format("{}: {} records, KS distance {:.4f} (5% band {:.4f})",
                                       request.records.stem().string(), a.size(), ks,
                                       eval::kolmogorov_band(a.size())));
    if (request.against) {
        const auto b = records_from_table(read_table(*request.against));
        add_uplot_rows(uplot, request.against->stem().string(), b);
        const auto series = eval::log_plr(a, b);
        CsvTable plr({"pair", "index", "log_plr", "floored"});
        const std::string pair =
            fmt::format("{}:{}", request.records.stem().string(), request.against->stem().string());
        for (std::size_t i = 0; i < series.log_plr.size(); ++i) {
            plr.add_row({pair, std::to_string(series.index[i]), num(series.log_plr[i]), series.floored[i] ? "1" : "0"});
        }
        result.notes.push_back(fmt::format("{} final log PLR {:.4f}", pair,
                                           series.log_plr.empty() ? 0.0 : series.log_plr.back()));
        result.outputs.push_back({"plr", std::move(plr), "plr"});
    }
    result.outputs.insert(result.outputs.begin(), Output{"uplot", std::move(uplot), "uplot"});
    return result;
}

}  // namespace reliab::cli
