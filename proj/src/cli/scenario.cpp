#include "reliab/cli/scenario.hpp"

#include "reliab/error.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>

namespace reliab::cli {

namespace {

using nlohmann::json;

json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::ParseError, fmt::format("cannot open scenario '{}'", path.string()));
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        fail(ErrorCode::ParseError, fmt::format("{}: {}", path.string(), e.what()));
    }
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
    return j.contains(key) ? j.at(key).get<T>() : fallback;
}

std::vector<double> log_grid(double from, double to, std::size_t points) {
    if (!(from > 0.0 && to > from) || points < 2) {
        fail(ErrorCode::InvalidArgument, "grid needs 0 < from < to and at least 2 points");
    }
    std::vector<double> grid(points);
    const double a = std::log(from);
    const double b = std::log(to);
    for (std::size_t i = 0; i < points; ++i) {
        grid[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(points - 1));
    }
    grid.front() = from;
    grid.back() = to;
    return grid;
}

}  // namespace

std::string to_string(Method method) {
    switch (method) {
        case Method::Cbi: return "cbi";
        case Method::Classical: return "classical";
        case Method::RandPower: return "rand-power";
        case Method::BetaUniform: return "beta-uniform";
        case Method::BetaJeffreys: return "beta-jeffreys";
    }
    return "?";
}

Method parse_method(const std::string& name) {
    for (Method m : {Method::Cbi, Method::Classical, Method::RandPower, Method::BetaUniform,
                     Method::BetaJeffreys}) {
        if (to_string(m) == name) return m;
    }
    fail(ErrorCode::InvalidArgument,
         fmt::format("unknown method '{}' (cbi, classical, rand-power, beta-uniform, beta-jeffreys)", name));
}

void ScenarioConfig::validate() const {
    if (methods.empty()) fail(ErrorCode::InvalidArgument, fmt::format("scenario '{}' has no methods", name));
    if (claims.empty()) fail(ErrorCode::InvalidArgument, fmt::format("scenario '{}' has an empty claim grid", name));
    for (const auto& m : methods) {
        if (m.method == Method::Cbi) {
            cbi::PriorConstraints{goal, m.theta, rate_floor}.validate();
        }
        if (m.method == Method::RandPower && !(m.power_bound > 0.0 && m.power_bound < 1.0)) {
            fail(ErrorCode::InvalidArgument, fmt::format("method '{}' needs a bound in (0, 1)", m.label));
        }
    }
    for (const auto& c : claims) ReliabilityClaim{c.p, c.confidence}.validate();
}

bool ScenarioConfig::applies(const MethodSpec& method, const ClaimPoint& claim) const {
    if (method.only_claims.empty()) return true;
    return std::find(method.only_claims.begin(), method.only_claims.end(), claim.label) !=
           method.only_claims.end();
}

void CompensationConfig::validate() const {
    if (settings.empty()) fail(ErrorCode::InvalidArgument, "compensation scenario has no (c, theta) settings");
    for (const auto& s : settings) {
        cbi::PriorConstraints{goal, s.theta, rate_floor}.validate();
        if (!(s.confidence > 0.0 && s.confidence < 1.0)) {
            fail(ErrorCode::InvalidArgument, fmt::format("confidence {} outside (0, 1)", s.confidence));
        }
    }
    log_grid(n1_from, n1_to, points);
}

std::vector<double> CompensationConfig::n1_grid() const { return log_grid(n1_from, n1_to, points); }

std::filesystem::path scenario_directory() {
    if (const char* env = std::getenv("RELIAB_CONFIG_DIR"); env && *env) return env;
#ifdef RELIAB_SOURCE_DIR
    return std::filesystem::path(RELIAB_SOURCE_DIR) / "config" / "scenarios";
#else
    return std::filesystem::path("config") / "scenarios";
#endif
}

std::filesystem::path scenario_path(const std::string& name_or_path) {
    std::filesystem::path p(name_or_path);
    if (p.has_extension() || p.has_parent_path()) return p;
    return scenario_directory() / (name_or_path + ".json");
}

ScenarioConfig load_miles_scenario(const std::filesystem::path& path) {
    const json j = read_json(path);
    ScenarioConfig cfg;
    try {
        cfg.name = get_or<std::string>(j, "name", path.stem().string());
        cfg.description = get_or<std::string>(j, "description", "");
        cfg.goal = j.at("constraints").at("goal").get<double>();
        cfg.rate_floor = j.at("constraints").at("rate_floor").get<double>();
        for (const auto& m : j.at("methods")) {
            MethodSpec spec;
            spec.method = parse_method(m.at("method").get<std::string>());
            spec.theta = get_or<double>(m, "theta", 0.0);
            spec.power_bound = get_or<double>(m, "bound", 0.0);
            spec.label = get_or<std::string>(m, "label", to_string(spec.method));
            spec.only_claims = get_or<std::vector<std::string>>(m, "claims", {});
            cfg.methods.push_back(std::move(spec));
        }
        if (j.contains("claims")) {
            for (const auto& c : j.at("claims")) {
                cfg.claims.push_back(ClaimPoint{c.at("p").get<double>(), get_or<double>(c, "confidence", 0.95),
                                                get_or<std::uint64_t>(c, "k", 0),
                                                get_or<std::string>(c, "label", "")});
            }
        }
        if (j.contains("claim_grid")) {
            const auto& g = j.at("claim_grid");
            for (double p : log_grid(g.at("from").get<double>(), g.at("to").get<double>(),
                                     g.at("points").get<std::size_t>())) {
                cfg.claims.push_back(ClaimPoint{p, get_or<double>(g, "confidence", 0.95),
                                                get_or<std::uint64_t>(g, "k", 0), ""});
            }
        }
        if (j.contains("reference")) {
            for (const auto& r : j.at("reference")) {
                cfg.reference.push_back(ExpectedMiles{
                    r.at("method").get<std::string>(), get_or<std::string>(r, "claim", ""),
                    get_or<double>(r, "p", 0.0), r.at("miles").get<double>(),
                    get_or<double>(r, "tolerance", 0.01), get_or<bool>(r, "reproduced", true)});
            }
        }
    } catch (const json::exception& e) {
        fail(ErrorCode::ParseError, fmt::format("{}: {}", path.string(), e.what()));
    }
    cfg.validate();
    return cfg;
}

CompensationConfig load_compensation_scenario(const std::filesystem::path& path) {
    const json j = read_json(path);
    CompensationConfig cfg;
    try {
        cfg.name = get_or<std::string>(j, "name", path.stem().string());
        cfg.goal = j.at("constraints").at("goal").get<double>();
        cfg.rate_floor = j.at("constraints").at("rate_floor").get<double>();
        for (const auto& s : j.at("settings")) {
            CompensationSetting setting{s.at("confidence").get<double>(), s.at("theta").get<double>(), ""};
            setting.label = get_or<std::string>(
                s, "label", fmt::format("c={:g} theta={:g}", setting.confidence, setting.theta));
            cfg.settings.push_back(std::move(setting));
        }
        const auto& grid = j.at("n1_grid");
        cfg.n1_from = grid.at("from").get<double>();
        cfg.n1_to = grid.at("to").get<double>();
        cfg.points = grid.at("points").get<std::size_t>();
        if (j.contains("reference")) {
            const auto& r = j.at("reference");
            if (r.contains("n_star")) cfg.n_star = r.at("n_star").get<double>();
            if (r.contains("p_star")) cfg.p_star = r.at("p_star").get<double>();
            if (r.contains("asymptote")) cfg.asymptote = r.at("asymptote").get<double>();
            cfg.minimum_abscissa_tolerance = get_or<double>(r, "n_star_tolerance", 0.01);
            cfg.p_star_tolerance = get_or<double>(r, "p_star_tolerance", 0.02);
            cfg.asymptote_tolerance = get_or<double>(r, "asymptote_tolerance", 0.01);
        }
    } catch (const json::exception& e) {
        fail(ErrorCode::ParseError, fmt::format("{}: {}", path.string(), e.what()));
    }
    cfg.validate();
    return cfg;
}

}  // namespace reliab::cli
