#include "reliab/srgm.hpp"

#include "reliab/numeric.hpp"
#include "reliab/optimize.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <numeric>
#include <optional>

namespace reliab::srgm {

namespace {

constexpr std::array<std::string_view, 2> go_names{"a", "b"};
constexpr std::array<std::string_view, 2> du_names{"alpha", "beta"};
constexpr std::array<std::string_view, 2> mo_names{"theta0", "lambda0"};
constexpr std::array<std::string_view, 3> li_names{"N", "alpha", "beta"};
constexpr std::array<std::string_view, 3> lv_names{"alpha", "beta1", "beta2"};

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Failure times and exposure rescaled so that the exposure is 1.
struct Scaled {
    std::vector<double> times;
    std::vector<double> gaps;
    double tail = 0.0;   // censored gap after the last event
    double scale = 1.0;  // miles per unit
    double n = 0.0;
};

double exposure_of(const data::FailureHistory& history, bool include_censoring) {
    const auto times = history.failure_times();
    const double last = times.empty() ? 0.0 : times.back();
    return include_censoring ? std::max(last, history.total_miles) : last;
}

Scaled rescale(const data::FailureHistory& history, bool include_censoring) {
    Scaled s;
    s.scale = exposure_of(history, include_censoring);
    s.n = static_cast<double>(history.size());
    s.gaps.reserve(history.size());
    for (double g : history.interfailure_miles) s.gaps.push_back(g / s.scale);
    s.times.resize(s.gaps.size());
    std::partial_sum(s.gaps.begin(), s.gaps.end(), s.times.begin());
    s.tail = std::max(0.0, 1.0 - s.times.back());
    return s;
}

// Profile log-likelihoods on the unit-exposure scale. Each returns -inf off
// the domain so the optimiser treats it as a wall.

double go_profile(const Scaled& s, double b) {
    const double a = s.n / -std::expm1(-b);
    const double sum_t = std::accumulate(s.times.begin(), s.times.end(), 0.0);
    return s.n * std::log(a * b) - b * sum_t - s.n;
}

double mo_profile(const Scaled& s, double b) {
    const double c = s.n / std::log1p(b);
    double sum = 0.0;
    for (double t : s.times) sum += std::log1p(b * t);
    return s.n * std::log(c * b) - sum - s.n;
}

double li_profile(const Scaled& s, double remaining, double beta) {
    const double n = s.n;
    double log_counts = 0.0;
    double log_terms = 0.0;
    double exposure = remaining * std::log1p(1.0 / beta);
    for (std::size_t i = 0; i < s.times.size(); ++i) {
        log_counts += std::log(remaining + n - static_cast<double>(i));
        log_terms += std::log(beta + s.times[i]);
        exposure += std::log1p(s.times[i] / beta);
    }
    if (!(exposure > 0.0)) return kNegInf;
    return log_counts + n * std::log(n / exposure) - n - log_terms;
}

double lv_psi(double beta1, double beta2, std::size_t i) {
    return beta1 + beta2 * static_cast<double>(i);
}

double lv_profile(const Scaled& s, double beta1, double beta2) {
    double spread = 0.0;
    double log_terms = 0.0;
    for (std::size_t i = 0; i < s.gaps.size(); ++i) {
        const double psi = lv_psi(beta1, beta2, i + 1);
        spread += std::log1p(s.gaps[i] / psi);
        log_terms += std::log(psi + s.gaps[i]);
    }
    if (s.tail > 0.0) spread += std::log1p(s.tail / lv_psi(beta1, beta2, s.gaps.size() + 1));
    if (!(spread > 0.0)) return kNegInf;
    return s.n * std::log(s.n / spread) - s.n - log_terms;
}

double rescaling_ks(const std::vector<double>& increments) {
    std::vector<double> u;
    u.reserve(increments.size());
    for (double e : increments) u.push_back(-std::expm1(-e));
    std::sort(u.begin(), u.end());
    return kolmogorov_distance(u);
}

template <class MeanFn>
double nhpp_rescaling_ks(const Scaled& s, MeanFn&& mean) {
    std::vector<double> inc;
    inc.reserve(s.times.size());
    double prev = 0.0;
    for (double t : s.times) {
        const double m = mean(t);
        inc.push_back(m - prev);
        prev = m;
    }
    return rescaling_ks(inc);
}

[[noreturn]] void diverged(ModelKind kind, std::size_t n, const std::string& why) {
    fail(ErrorCode::FitDiverged, fmt::format("{} fit on {} events: {}", to_string(kind), n, why));
}

void check_finite(ModelKind kind, const FittedModel& m) {
    bool ok = std::isfinite(m.log_likelihood);
    for (double p : m.parameters) ok = ok && std::isfinite(p) && p >= 0.0;
    if (!ok) diverged(kind, m.history_length, "non-finite estimate");
}

// GO and MO share the one-parameter profile search over ln b.
constexpr double kLogRateLow = -12.0;

FittedModel fit_go(const Scaled& s, FittedModel out) {
    constexpr double high = 8.0;
    const auto best = optimize::scan_then_brent(
        [&](double x) { return -go_profile(s, std::exp(x)); }, kLogRateLow, high);
    if (!std::isfinite(best.value)) diverged(ModelKind::GO, out.history_length, "no finite likelihood");
    if (best.x[0] >= high - 1e-6) {
        diverged(ModelKind::GO, out.history_length, "all events concentrated at the start");
    }
    const double b = std::exp(best.x[0]);
    const double a = s.n / -std::expm1(-b);
    out.parameters = {a, b / s.scale};
    out.log_likelihood = -best.value - s.n * std::log(s.scale);
    out.rescaling_ks = nhpp_rescaling_ks(s, [&](double t) { return a * -std::expm1(-b * t); });
    return out;
}

FittedModel fit_du(const Scaled& s, FittedModel out) {
    double spread = 0.0;
    double sum_log = 0.0;
    for (double t : s.times) {
        spread -= std::log(t);
        sum_log += std::log(t);
    }
    if (!(spread > 0.0)) diverged(ModelKind::DU, out.history_length, "degenerate event times");
    const double beta = s.n / spread;
    // On the unit scale alpha = n; in miles alpha = n / T^beta.
    const double log_alpha_miles = std::log(s.n) - beta * std::log(s.scale);
    out.parameters = {std::exp(log_alpha_miles), beta};
    out.log_likelihood = s.n * std::log(s.n * beta) + (beta - 1.0) * sum_log - s.n - s.n * std::log(s.scale);
    out.rescaling_ks = nhpp_rescaling_ks(s, [&](double t) { return s.n * std::pow(t, beta); });
    return out;
}

FittedModel fit_mo(const Scaled& s, FittedModel out) {
    constexpr double high = 12.0;
    const auto best = optimize::scan_then_brent(
        [&](double x) { return -mo_profile(s, std::exp(x)); }, kLogRateLow, high);
    if (!std::isfinite(best.value)) diverged(ModelKind::MO, out.history_length, "no finite likelihood");
    if (best.x[0] >= high - 1e-6) {
        diverged(ModelKind::MO, out.history_length, "all events concentrated at the start");
    }
    const double b = std::exp(best.x[0]);
    const double c = s.n / std::log1p(b);
    out.parameters = {1.0 / c, c * b / s.scale};
    out.log_likelihood = -best.value - s.n * std::log(s.scale);
    out.rescaling_ks = nhpp_rescaling_ks(s, [&](double t) { return c * std::log1p(b * t); });
    return out;
}

optimize::Minimum restarted_search(const std::function<double(const std::vector<double>&)>& f,
                                   std::vector<std::vector<double>> starts, const optimize::Box& box,
                                   std::size_t restarts) {
    starts.resize(std::min(starts.size(), std::max<std::size_t>(restarts, 1)));
    optimize::Minimum best;
    best.value = std::numeric_limits<double>::infinity();
    for (const auto& start : starts) {
        auto m = optimize::nelder_mead(f, start, box);
        // Polish from the best vertex with a fresh simplex.
        m = optimize::nelder_mead(f, m.x, box, {.initial_step = 0.1});
        if (m.value < best.value) best = m;
    }
    return best;
}

FittedModel fit_li(const Scaled& s, FittedModel out, const FitOptions& options) {
    const optimize::Box box{{std::log(1e-6), -14.0}, {std::log(1e8), 14.0}};
    std::vector<std::vector<double>> starts;
    if (options.warm_start && options.warm_start->kind == ModelKind::LI) {
        const auto& w = options.warm_start->parameters;
        starts.push_back({std::log(std::max(w[0] - s.n, 1e-6)), std::log(w[2] / s.scale)});
    }
    const double ln_n = std::log(s.n);
    for (const auto& p : {std::vector<double>{ln_n, 0.0}, {ln_n - 2.0, -2.0}, {ln_n + 2.0, 0.0},
                          {ln_n, 2.0}, {ln_n - 1.0, -4.0}}) {
        starts.push_back(p);
    }
    const auto objective = [&](const std::vector<double>& x) {
        return -li_profile(s, std::exp(x[0]), std::exp(x[1]));
    };
    const auto best = restarted_search(objective, starts, box, options.restarts);
    if (!std::isfinite(best.value)) diverged(ModelKind::LI, out.history_length, "no finite likelihood");

    const double remaining = std::exp(best.x[0]);
    const double beta = std::exp(best.x[1]);
    double exposure = remaining * std::log1p(1.0 / beta);
    for (double t : s.times) exposure += std::log1p(t / beta);
    out.parameters = {s.n + remaining, s.n / exposure, beta * s.scale};
    out.log_likelihood = -best.value - s.n * std::log(s.scale);
    return out;
}

FittedModel fit_lv(const Scaled& s, FittedModel out, const FitOptions& options) {
    const optimize::Box box{{-20.0, -25.0}, {12.0, 8.0}};
    std::vector<std::vector<double>> starts;
    if (options.warm_start && options.warm_start->kind == ModelKind::LV) {
        const auto& w = options.warm_start->parameters;
        starts.push_back({std::log(std::max(w[1] / s.scale, 1e-9)),
                          std::log(std::max(w[2] / s.scale, 1e-11))});
    }
    const double ln_gap = -std::log(s.n);
    for (const auto& p :
         {std::vector<double>{ln_gap, 2.0 * ln_gap}, {ln_gap + 2.0, ln_gap}, {ln_gap - 2.0, ln_gap - 1.0},
          {ln_gap + 4.0, -20.0}, {ln_gap, ln_gap + 1.0}}) {
        starts.push_back(p);
    }
    const auto objective = [&](const std::vector<double>& x) {
        return -lv_profile(s, std::exp(x[0]), std::exp(x[1]));
    };
    const auto best = restarted_search(objective, starts, box, options.restarts);
    if (!std::isfinite(best.value)) diverged(ModelKind::LV, out.history_length, "no finite likelihood");

    const double beta1 = std::exp(best.x[0]);
    const double beta2 = std::exp(best.x[1]);
    double spread = 0.0;
    for (std::size_t i = 0; i < s.gaps.size(); ++i) {
        spread += std::log1p(s.gaps[i] / lv_psi(beta1, beta2, i + 1));
    }
    if (s.tail > 0.0) spread += std::log1p(s.tail / lv_psi(beta1, beta2, s.gaps.size() + 1));
    out.parameters = {s.n / spread, beta1 * s.scale, beta2 * s.scale};
    out.log_likelihood = -best.value - s.n * std::log(s.scale);
    return out;
}

}  // namespace

std::string_view to_string(ModelKind kind) noexcept {
    switch (kind) {
        case ModelKind::GO: return "GO";
        case ModelKind::DU: return "DU";
        case ModelKind::MO: return "MO";
        case ModelKind::LI: return "LI";
        case ModelKind::LV: return "LV";
    }
    return "?";
}

ModelKind parse_model_kind(std::string_view name) {
    std::string upper(name);
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    for (ModelKind kind : all_models) {
        if (upper == to_string(kind)) return kind;
    }
    fail(ErrorCode::InvalidArgument,
         fmt::format("unknown model '{}' (expected GO, DU, MO, LI or LV)", name));
}

std::span<const std::string_view> parameter_names(ModelKind kind) noexcept {
    switch (kind) {
        case ModelKind::GO: return go_names;
        case ModelKind::DU: return du_names;
        case ModelKind::MO: return mo_names;
        case ModelKind::LI: return li_names;
        case ModelKind::LV: return lv_names;
    }
    return {};
}

double FittedModel::parameter(std::string_view name) const {
    const auto names = parameter_names(kind);
    for (std::size_t i = 0; i < names.size() && i < parameters.size(); ++i) {
        if (names[i] == name) return parameters[i];
    }
    fail(ErrorCode::InvalidArgument, fmt::format("{} has no parameter '{}'", to_string(kind), name));
}

FittedModel fit(ModelKind kind, const data::FailureHistory& history, const FitOptions& options) {
    const std::size_t minimum = std::max<std::size_t>(options.min_history, 2);
    if (history.size() < minimum) {
        fail(ErrorCode::InsufficientHistory,
             fmt::format("{} needs at least {} events, got {}", to_string(kind), minimum,
                         history.size()));
    }
    for (double g : history.interfailure_miles) {
        if (!(g > 0.0) || !std::isfinite(g)) {
            fail(ErrorCode::InvalidArgument, "inter-failure miles must be positive and finite");
        }
    }
    const Scaled s = rescale(history, options.include_censoring);
    FittedModel out;
    out.kind = kind;
    out.history_length = history.size();
    out.exposure = s.scale;

    switch (kind) {
        case ModelKind::GO: out = fit_go(s, std::move(out)); break;
        case ModelKind::DU: out = fit_du(s, std::move(out)); break;
        case ModelKind::MO: out = fit_mo(s, std::move(out)); break;
        case ModelKind::LI: out = fit_li(s, std::move(out), options); break;
        case ModelKind::LV: out = fit_lv(s, std::move(out), options); break;
    }
    check_finite(kind, out);
    return out;
}

double log_likelihood(ModelKind kind, std::span<const double> p, const data::FailureHistory& history,
                      bool include_censoring) {
    if (p.size() != parameter_names(kind).size()) {
        fail(ErrorCode::InvalidArgument,
             fmt::format("{} takes {} parameters, got {}", to_string(kind), parameter_names(kind).size(),
                         p.size()));
    }
    const auto times = history.failure_times();
    const double end = exposure_of(history, include_censoring);
    const double n = static_cast<double>(times.size());
    double ll = 0.0;
    switch (kind) {
        case ModelKind::GO: {
            const double a = p[0], b = p[1];
            for (double t : times) ll += std::log(a) + std::log(b) - b * t;
            return ll - a * -std::expm1(-b * end);
        }
        case ModelKind::DU: {
            const double alpha = p[0], beta = p[1];
            for (double t : times) ll += std::log(alpha) + std::log(beta) + (beta - 1.0) * std::log(t);
            return ll - alpha * std::pow(end, beta);
        }
        case ModelKind::MO: {
            const double theta0 = p[0], lambda0 = p[1];
            for (double t : times) ll += std::log(lambda0) - std::log1p(lambda0 * theta0 * t);
            return ll - std::log1p(lambda0 * theta0 * end) / theta0;
        }
        case ModelKind::LI: {
            const double N = p[0], alpha = p[1], beta = p[2];
            if (!(N > n)) return kNegInf;
            double previous = 0.0;
            for (std::size_t i = 0; i < times.size(); ++i) {
                const double remaining = N - static_cast<double>(i);
                ll += std::log(remaining * alpha / (beta + times[i]));
                ll -= remaining * alpha * std::log((beta + times[i]) / (beta + previous));
                previous = times[i];
            }
            return ll - (N - n) * alpha * std::log((beta + end) / (beta + previous));
        }
        case ModelKind::LV: {
            const double alpha = p[0], beta1 = p[1], beta2 = p[2];
            const auto& gaps = history.interfailure_miles;
            for (std::size_t i = 0; i < gaps.size(); ++i) {
                const double psi = lv_psi(beta1, beta2, i + 1);
                ll += std::log(alpha) + alpha * std::log(psi) - (alpha + 1.0) * std::log(psi + gaps[i]);
            }
            const double tail = times.empty() ? end : end - times.back();
            if (tail > 0.0) {
                const double psi = lv_psi(beta1, beta2, gaps.size() + 1);
                ll -= alpha * std::log1p(tail / psi);
            }
            return ll;
        }
    }
    return kNegInf;
}

PredictiveDistribution predict_next(const FittedModel& model, const data::FailureHistory& history) {
    if (history.size() != model.history_length) {
        fail(ErrorCode::InvalidArgument,
             fmt::format("model was fitted on {} events, history has {}", model.history_length,
                         history.size()));
    }
    const double T = model.exposure;
    const double n = static_cast<double>(model.history_length);
    const double hint = T / std::max(n, 1.0);
    const auto& p = model.parameters;
    switch (model.kind) {
        case ModelKind::GO: {
            const double a = p[0], b = p[1];
            const double remaining = a * std::exp(-b * T);
            return PredictiveDistribution::from_hazard(
                [=](double x) { return remaining * -std::expm1(-b * x); },
                [=](double x) { return std::log(a * b) - b * (T + x); }, remaining, hint);
        }
        case ModelKind::DU: {
            const double alpha = p[0], beta = p[1];
            const double base = alpha * std::pow(T, beta);
            return PredictiveDistribution::from_hazard(
                [=](double x) { return base * std::expm1(beta * std::log1p(x / T)); },
                [=](double x) { return std::log(alpha * beta) + (beta - 1.0) * std::log(T + x); },
                std::numeric_limits<double>::infinity(), hint);
        }
        case ModelKind::MO: {
            const double theta0 = p[0], lambda0 = p[1];
            const double r = lambda0 * theta0;
            return PredictiveDistribution::from_hazard(
                [=](double x) { return std::log1p(r * x / (1.0 + r * T)) / theta0; },
                [=](double x) { return std::log(lambda0) - std::log1p(r * (T + x)); },
                std::numeric_limits<double>::infinity(), hint);
        }
        case ModelKind::LI: {
            const double N = p[0], alpha = p[1], beta = p[2];
            return PredictiveDistribution::pareto((N - n) * alpha, beta + T);
        }
        case ModelKind::LV: {
            const double alpha = p[0], beta1 = p[1], beta2 = p[2];
            const auto times = history.failure_times();
            const double tail = std::max(0.0, T - (times.empty() ? 0.0 : times.back()));
            return PredictiveDistribution::pareto(alpha, lv_psi(beta1, beta2, model.history_length + 1) + tail);
        }
    }
    fail(ErrorCode::InvalidArgument, "unknown model kind");
}

RollingResult rolling_predictions(ModelKind kind, const data::FailureHistory& history,
                                  const RollingOptions& options) {
    const std::size_t minimum = std::max<std::size_t>(options.fit.min_history, 2);
    if (options.start_index < minimum) {
        fail(ErrorCode::InsufficientHistory,
             fmt::format("rolling start {} is below the minimum fit length {}", options.start_index,
                         minimum));
    }
    RollingResult result;
    result.kind = kind;
    std::optional<FittedModel> previous;
    for (std::size_t j = options.start_index; j < history.size(); ++j) {
        const data::FailureHistory prefix = history.prefix(j);
        FitOptions fit_options = options.fit;
        fit_options.warm_start = options.warm_start && previous ? &*previous : nullptr;
        try {
            FittedModel model = fit(kind, prefix, fit_options);
            PredictiveDistribution predictive = predict_next(model, prefix);
            const double realized = history.interfailure_miles[j];
            PredictionRecord record;
            record.index = j;
            record.realized = realized;
            record.u = std::clamp(predictive.cdf(realized), 0.0, 1.0);
            record.log_density = predictive.log_density(realized);
            record.median = predictive.try_median();
            result.records.push_back(record);
            result.predictives.push_back(std::move(predictive));
            previous = std::move(model);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::FitDiverged && e.code() != ErrorCode::NumericFailure) throw;
            result.skipped.push_back(SkippedStep{j, e.code(), e.what()});
        }
    }
    return result;
}

}  // namespace reliab::srgm
