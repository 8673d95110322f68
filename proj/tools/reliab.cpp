// reliab: conservative reliability claims and growth-model forecasts from the
// command line. Run `reliab --help` for the subcommands.

#include "reliab/cli/commands.hpp"
#include "reliab/error.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

using namespace reliab;
using namespace reliab::cli;

void configure_logging() {
    auto logger = spdlog::stderr_color_mt("reliab");
    spdlog::set_default_logger(logger);
    spdlog::set_pattern("[%l] %v");
    const char* env = std::getenv("RELIAB_LOG");
    spdlog::set_level(env ? spdlog::level::from_str(env) : spdlog::level::warn);
}

std::vector<srgm::ModelKind> parse_kinds(const std::string& list) {
    std::vector<srgm::ModelKind> kinds;
    std::stringstream in(list);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (!item.empty()) kinds.push_back(srgm::parse_model_kind(item));
    }
    if (kinds.empty()) fail(ErrorCode::InvalidArgument, "no models selected");
    return kinds;
}

std::string default_dataset() {
#ifdef RELIAB_SOURCE_DIR
    return std::string(RELIAB_SOURCE_DIR) + "/data/waymo_monthly.csv";
#else
    return "data/waymo_monthly.csv";
#endif
}

}  // namespace

int main(int argc, char** argv) {
    configure_logging();

    CLI::App app{"Conservative Bayesian reliability claims and reliability growth forecasts"};
    app.require_subcommand(1);

    std::uint64_t seed = 42;
    std::string out_dir;
    std::string format = "csv";
    std::string config;
    app.add_option("--seed", seed, "Seed for every random choice")->capture_default_str();
    app.add_option("--out", out_dir, "Write outputs to this directory instead of stdout");
    app.add_option("--format", format, "csv, svg or both")
        ->check(CLI::IsMember({"csv", "svg", "both"}))
        ->capture_default_str();
    app.add_option("--config", config, "Scenario JSON file (overrides --scenario)");

    // Shared claim and prior parameters.
    std::string method = "cbi";
    double p = 0.0;
    double c = 0.95;
    std::uint64_t k = 0;
    double n = 0.0;
    double theta = 0.9;
    double goal = 1.09e-10;
    double floor = 1e-15;
    double bound = 0.0;
    auto add_prior = [&](CLI::App* cmd) {
        cmd->add_option("--theta", theta, "Prior confidence that the goal is met")->capture_default_str();
        cmd->add_option("--goal", goal, "Engineering goal for the per-mile failure probability")->capture_default_str();
        cmd->add_option("--floor", floor, "Lowest per-mile failure probability the prior allows")->capture_default_str();
    };

    std::string scenario;
    auto* miles = app.add_subcommand("miles", "Miles needed to support a claim");
    miles->add_option("--scenario", scenario, "table1, fig2, fig3 or a JSON path");
    miles->add_option("--method", method, "cbi, classical, rand-power, beta-uniform, beta-jeffreys")
        ->capture_default_str();
    miles->add_option("--p", p, "Claimed bound on the per-mile failure probability");
    miles->add_option("--c", c, "Required confidence")->capture_default_str();
    miles->add_option("--k", k, "Failures observed")->capture_default_str();
    miles->add_option("--bound", bound, "rand-power: bound tested against (p is the true rate)");
    add_prior(miles);

    auto* confidence = app.add_subcommand("confidence", "Posterior confidence in a claim");
    confidence->add_option("--method", method, "cbi, classical, beta-uniform, beta-jeffreys")->capture_default_str();
    confidence->add_option("--p", p, "Claimed bound")->required();
    confidence->add_option("--k", k, "Failures observed")->capture_default_str();
    confidence->add_option("--n", n, "Miles driven")->required();
    add_prior(confidence);

    std::string comp_scenario = "fig4";
    double from = 1e7;
    double to = 1e14;
    std::size_t points = 281;
    bool comp_custom = false;
    auto* compensate = app.add_subcommand("compensate", "Extra failure-free miles needed after one failure");
    compensate->add_option("--scenario", comp_scenario, "Scenario name or JSON path")->capture_default_str();
    compensate->add_flag("--custom", comp_custom, "Use --c/--theta/--goal/--floor and the n1 grid flags instead");
    compensate->add_option("--c", c, "Required confidence")->capture_default_str();
    compensate->add_option("--from", from, "Smallest n1")->capture_default_str();
    compensate->add_option("--to", to, "Largest n1")->capture_default_str();
    compensate->add_option("--points", points, "Grid points (log-spaced)")->capture_default_str();
    add_prior(compensate);

    std::size_t grid = 2000;
    std::size_t mixtures = 1000;
    auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force check of the worst-case confidence");
    oracle_cmd->add_option("--p", p, "Claimed bound")->required();
    oracle_cmd->add_option("--k", k, "Failures observed")->capture_default_str();
    oracle_cmd->add_option("--n", n, "Miles driven")->required();
    oracle_cmd->add_option("--grid", grid, "Support grid size")->capture_default_str();
    oracle_cmd->add_option("--mixtures", mixtures, "Random feasible mixtures")->capture_default_str();
    add_prior(oracle_cmd);

    std::string input = default_dataset();
    auto* ingest = app.add_subcommand("ingest", "Expand monthly counts into inter-failure miles");
    ingest->add_option("--input", input, "Monthly CSV (month,miles,disengagements)")->capture_default_str();

    SrgmRequest srgm_request;
    std::string models = "GO,DU,MO,LI,LV";
    bool no_recalibrate = false;
    bool exclude_censoring = false;
    auto* srgm_cmd = app.add_subcommand("srgm", "Rolling growth-model forecasts with u-plots and PLR");
    srgm_cmd->add_option("--data", input, "Monthly CSV or index,interfailure_miles CSV")->capture_default_str();
    srgm_cmd->add_option("--models", models, "Comma-separated subset of GO,DU,MO,LI,LV")->capture_default_str();
    srgm_cmd->add_option("--start", srgm_request.start_index, "First prefix length to predict from")
        ->capture_default_str();
    srgm_cmd->add_option("--min-history", srgm_request.min_history, "Shortest prefix a model is fitted on")
        ->capture_default_str();
    srgm_cmd->add_option("--warmup", srgm_request.warmup, "Predictions needed before recalibrating")
        ->capture_default_str();
    srgm_cmd->add_option("--plr-start", srgm_request.plr_start, "First index in the PLR comparison")
        ->capture_default_str();
    srgm_cmd->add_option("--seeds", srgm_request.seeds, "Repeat the monthly expansion over this many seeds")
        ->capture_default_str();
    srgm_cmd->add_flag("--no-recalibrate", no_recalibrate, "Skip recalibration");
    srgm_cmd->add_flag("--exclude-censoring", exclude_censoring,
                       "Ignore the miles after the last event when fitting");

    EvaluateRequest evaluate_request;
    std::string records;
    std::string against;
    std::string render;
    std::string chart;
    auto* evaluate = app.add_subcommand("evaluate", "Score prediction records or re-render a CSV");
    evaluate->add_option("--records", records, "index,u,log_density,median,realized CSV");
    evaluate->add_option("--against", against, "Second record stream for a PLR comparison");
    evaluate->add_option("--render", render, "CSV written earlier by this tool");
    evaluate->add_option("--chart", chart, "Chart for --render: miles, compensate, mmtd, uplot, plr");

    CLI11_PARSE(app, argc, argv);

    const EmitOptions emit_options{out_dir, format == "svg"    ? OutputFormat::Svg
                                            : format == "both" ? OutputFormat::Both
                                                               : OutputFormat::Csv};
    try {
        CommandResult result;
        if (*miles) {
            if (!config.empty() || !scenario.empty()) {
                result = cmd_miles(load_miles_scenario(scenario_path(config.empty() ? scenario : config)));
            } else {
                if (!(p > 0.0)) fail(ErrorCode::InvalidArgument, "give --scenario or a claim with --p");
                ScenarioConfig single;
                single.name = "miles";
                single.goal = goal;
                single.rate_floor = floor;
                single.methods.push_back({parse_method(method), method, theta, bound, {}});
                single.claims.push_back({p, c, k, ""});
                single.validate();
                result = cmd_miles(single);
            }
        } else if (*confidence) {
            result = cmd_confidence({parse_method(method), {goal, theta, floor}, {k, n}, p});
        } else if (*compensate) {
            CompensationConfig cfg;
            if (comp_custom) {
                cfg.name = "compensate";
                cfg.goal = goal;
                cfg.rate_floor = floor;
                cfg.settings.push_back({c, theta, fmt::format("c={:g} theta={:g}", c, theta)});
                cfg.n1_from = from;
                cfg.n1_to = to;
                cfg.points = points;
                cfg.validate();
            } else {
                cfg = load_compensation_scenario(scenario_path(config.empty() ? comp_scenario : config));
            }
            result = cmd_compensate(cfg);
        } else if (*oracle_cmd) {
            result = cmd_oracle({{goal, theta, floor}, {k, n}, p, grid, mixtures, seed});
        } else if (*ingest) {
            result = cmd_ingest(input, seed);
        } else if (*srgm_cmd) {
            srgm_request.dataset = input;
            srgm_request.kinds = parse_kinds(models);
            srgm_request.seed = seed;
            srgm_request.recalibrate = !no_recalibrate;
            srgm_request.include_censoring = !exclude_censoring;
            result = cmd_srgm(srgm_request);
        } else if (*evaluate) {
            if (!render.empty()) {
                if (chart.empty()) fail(ErrorCode::InvalidArgument, "--render needs --chart");
                evaluate_request.render = render;
                evaluate_request.chart = chart;
            } else if (records.empty()) {
                fail(ErrorCode::InvalidArgument, "give --records or --render");
            }
            evaluate_request.records = records;
            if (!against.empty()) evaluate_request.against = against;
            result = cmd_evaluate(evaluate_request);
        }
        emit(result, emit_options, std::cout);
        return result.hard_errors == 0 ? 0 : 1;
    } catch (const Error& e) {
        spdlog::error("{} ({})", e.what(), to_string(e.code()));
        return 2;
    } catch (const std::exception& e) {
        spdlog::error("{}", e.what());
        return 2;
    }
}
