#pragma once

// Five reliability growth models fitted by maximum likelihood to the
// inter-failure miles seen so far, each yielding a predictive distribution for
// the miles to the next event.
//
//   GO  NHPP, m(t) = a (1 - exp(-b t))
//   DU  NHPP, m(t) = alpha t^beta
//   MO  NHPP, m(t) = ln(1 + lambda0 theta0 t) / theta0
//   LI  after i-1 events at elapsed t the rate is (N - i + 1) alpha / (beta + t)
//   LV  gap i is exponential with a Gamma(alpha, rate psi(i)) rate,
//       psi(i) = beta1 + beta2 i, so gaps are Pareto
//
// Times are rescaled by the exposure before fitting so the optimiser sees
// quantities of order one. GO and MO are profiled down to one parameter, DU
// has a closed form, LI and LV are profiled to two and searched with
// restarted Nelder-Mead.

#include "reliab/disengagement.hpp"
#include "reliab/error.hpp"
#include "reliab/predictive.hpp"

#include <array>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace reliab::srgm {

enum class ModelKind { GO, DU, MO, LI, LV };

inline constexpr std::array<ModelKind, 5> all_models{ModelKind::GO, ModelKind::DU, ModelKind::MO,
                                                     ModelKind::LI, ModelKind::LV};

std::string_view to_string(ModelKind kind) noexcept;
// Case-insensitive; throws InvalidArgument.
ModelKind parse_model_kind(std::string_view name);

// Parameter names in the order used by FittedModel and log_likelihood.
std::span<const std::string_view> parameter_names(ModelKind kind) noexcept;

struct FittedModel {
    ModelKind kind = ModelKind::GO;
    std::vector<double> parameters;  // in miles, order of parameter_names(kind)
    std::size_t history_length = 0;
    double exposure = 0.0;           // miles covered by the fit
    double log_likelihood = 0.0;
    // NHPP only: Kolmogorov distance of the time-rescaled gaps from the unit
    // exponential. Diagnostic; not used to accept or reject a fit.
    double rescaling_ks = std::numeric_limits<double>::quiet_NaN();

    double parameter(std::string_view name) const;
};

struct FitOptions {
    std::size_t min_history = 10;
    // Count the open interval after the last event as survival evidence.
    bool include_censoring = true;
    std::size_t restarts = 5;
    // Previous fit of the same kind, used as one of the restart points.
    const FittedModel* warm_start = nullptr;
};

// Throws InsufficientHistory, or FitDiverged when the search fails or settles
// on a degenerate edge (GO/MO with every event squeezed to time zero).
FittedModel fit(ModelKind kind, const data::FailureHistory& history, const FitOptions& options = {});

// Log-likelihood in miles, evaluated directly from the model definition.
double log_likelihood(ModelKind kind, std::span<const double> parameters,
                      const data::FailureHistory& history, bool include_censoring = true);

// Distribution of the miles from the end of the fitted exposure to the next
// event. `history` must be the one the model was fitted on.
PredictiveDistribution predict_next(const FittedModel& model, const data::FailureHistory& history);

struct SkippedStep {
    std::size_t index = 0;
    ErrorCode code = ErrorCode::FitDiverged;
    std::string message;
};

struct RollingOptions {
    std::size_t start_index = 50;
    FitOptions fit;
    bool warm_start = true;
};

struct RollingResult {
    ModelKind kind = ModelKind::GO;
    std::vector<PredictionRecord> records;
    std::vector<PredictiveDistribution> predictives;  // parallel to records
    std::vector<SkippedStep> skipped;
};

// For each j in [start_index, size): fit on the first j gaps, predict gap j+1
// and score it against the realized value. Failed fits are recorded in
// `skipped` and leave no record.
RollingResult rolling_predictions(ModelKind kind, const data::FailureHistory& history,
                                  const RollingOptions& options = {});

}  // namespace reliab::srgm
