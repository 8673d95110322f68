#pragma once

// The subcommands as library functions returning tables, so the acceptance
// tests and the executable share one code path.

#include "reliab/cbi.hpp"
#include "reliab/cli/csv_table.hpp"
#include "reliab/cli/scenario.hpp"
#include "reliab/disengagement.hpp"
#include "reliab/srgm.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace reliab::cli {

struct Output {
    std::string name;   // file stem
    CsvTable table;
    std::string chart;  // chart_preset name, empty for no chart
};

struct CommandResult {
    std::vector<Output> outputs;
    std::vector<std::string> notes;  // human-readable summary lines
    int hard_errors = 0;
};

enum class OutputFormat { Csv, Svg, Both };

struct EmitOptions {
    std::filesystem::path out_dir;  // empty: tables go to the stream
    OutputFormat format = OutputFormat::Csv;
};

// Writes tables (and charts) to out_dir, or to `out` when no directory is set;
// notes always go to `out`.
void emit(const CommandResult& result, const EmitOptions& options, std::ostream& out);

inline constexpr const char* srgm_caveat =
    "note: reliability growth models forecast disengagement trends; they are not a basis for "
    "deciding whether a safety requirement is met.";

// miles -----------------------------------------------------------------

struct MilesCell {
    std::string label;
    Method method = Method::Cbi;
    ClaimPoint claim;
    std::optional<double> miles;
    std::string status;  // "ok", "not reproduced" or an error code
};

MilesCell evaluate_miles(const ScenarioConfig& config, const MethodSpec& method, const ClaimPoint& claim);
CommandResult cmd_miles(const ScenarioConfig& config);

// confidence ------------------------------------------------------------

struct ConfidenceQuery {
    Method method = Method::Cbi;
    cbi::PriorConstraints constraints;  // cbi only
    Observation observation;
    double p = 0.0;
};

double evaluate_confidence(const ConfidenceQuery& query);
CommandResult cmd_confidence(const ConfidenceQuery& query);

// compensate ------------------------------------------------------------

struct CompensationCurve {
    CompensationSetting setting;
    std::vector<double> n1;
    std::vector<double> supported_bound;
    std::vector<double> total_miles;
    std::vector<double> n2;
    double n_star = 0.0;
    std::optional<double> p_star;        // defined for confidence > theta
    std::optional<double> n1_at_p_star;  // failure-free miles supporting p*
    double argmin_n1 = 0.0;              // refined minimiser of n2 right of its peak
    double n2_min = 0.0;
    double asymptote = 0.0;              // 1 / goal
    double n2_at_largest_n1 = 0.0;
};

CompensationCurve compensation_curve(const CompensationConfig& config, const CompensationSetting& setting);
CommandResult cmd_compensate(const CompensationConfig& config);

// oracle ----------------------------------------------------------------

struct OracleQuery {
    cbi::PriorConstraints constraints;
    Observation observation;
    double p = 0.0;
    std::size_t grid_size = 2000;
    std::size_t random_mixtures = 1000;
    std::uint64_t seed = 42;
};

CommandResult cmd_oracle(const OracleQuery& query);

// ingest ----------------------------------------------------------------

CommandResult cmd_ingest(const std::filesystem::path& monthly_csv, std::uint64_t seed);

// srgm ------------------------------------------------------------------

struct SrgmRequest {
    std::filesystem::path dataset;  // monthly CSV or index,interfailure_miles CSV
    std::vector<srgm::ModelKind> kinds{srgm::all_models.begin(), srgm::all_models.end()};
    std::uint64_t seed = 42;
    std::size_t seeds = 1;          // > 1 repeats the expansion with seed, seed+1, ...
    std::size_t start_index = 50;
    std::size_t min_history = 10;
    bool recalibrate = true;
    std::size_t warmup = 20;
    std::size_t plr_start = 50;
    bool include_censoring = true;
};

struct ModelRun {
    srgm::ModelKind kind = srgm::ModelKind::GO;
    srgm::RollingResult rolling;
    std::vector<PredictionRecord> recalibrated;
    std::optional<double> final_raw;    // MMTD after the whole history
    std::optional<double> final_recal;
    double ks_raw = 0.0;
    double ks_recal = 0.0;
    std::string error;                  // nonempty when the final fit failed
};

struct SrgmAnalysis {
    data::FailureHistory history;
    std::vector<ModelRun> runs;
    std::optional<double> consensus_raw;    // median of the models' final MMTDs
    std::optional<double> consensus_recal;
};

// Loads either input format; monthly data are expanded with `seed`.
data::FailureHistory load_history(const std::filesystem::path& path, std::uint64_t seed);

SrgmAnalysis analyse_history(const data::FailureHistory& history, const SrgmRequest& request);
CommandResult cmd_srgm(const SrgmRequest& request);

// evaluate --------------------------------------------------------------

struct EvaluateRequest {
    std::filesystem::path records;          // index,u,log_density,median,realized
    std::optional<std::filesystem::path> against;
    std::optional<std::filesystem::path> render;  // re-render a CSV written earlier
    std::string chart;
};

CsvTable records_table(const std::vector<PredictionRecord>& records);
std::vector<PredictionRecord> records_from_table(const CsvTable& table);
CommandResult cmd_evaluate(const EvaluateRequest& request);

}  // namespace reliab::cli
