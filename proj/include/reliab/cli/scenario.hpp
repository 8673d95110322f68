#pragma once

// Parameter sets for the miles and compensation commands, loaded from JSON.
// Checked-in scenarios live under config/scenarios/ and carry the expected
// values that the acceptance tests compare against.

#include "reliab/cbi.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace reliab::cli {

enum class Method { Cbi, Classical, RandPower, BetaUniform, BetaJeffreys };

std::string to_string(Method method);
Method parse_method(const std::string& name);  // cbi, classical, rand-power, beta-uniform, beta-jeffreys

struct MethodSpec {
    Method method = Method::Cbi;
    std::string label;
    double theta = 0.0;         // cbi: prior confidence in the goal
    double power_bound = 0.0;   // rand-power: bound tested against; the claim p is the true rate
    std::vector<std::string> only_claims;  // restrict to these claim labels when nonempty
};

struct ClaimPoint {
    double p = 0.0;
    double confidence = 0.95;
    std::uint64_t k = 0;
    std::string label;
};

struct ExpectedMiles {
    std::string method_label;
    std::string claim_label;   // empty matches a claim by p instead
    double p = 0.0;
    double miles = 0.0;
    double tolerance = 0.01;   // relative
    bool reproduced = true;
};

struct ScenarioConfig {
    std::string name;
    std::string description;
    double goal = 0.0;
    double rate_floor = 0.0;
    std::vector<MethodSpec> methods;
    std::vector<ClaimPoint> claims;
    std::vector<ExpectedMiles> reference;

    // Nonempty grid, known methods, valid parameters; throws InvalidArgument.
    void validate() const;
    bool applies(const MethodSpec& method, const ClaimPoint& claim) const;
};

struct CompensationSetting {
    double confidence = 0.95;
    double theta = 0.9;
    std::string label;
};

struct CompensationConfig {
    std::string name;
    double goal = 0.0;
    double rate_floor = 0.0;
    std::vector<CompensationSetting> settings;
    double n1_from = 1e7;
    double n1_to = 1e14;
    std::size_t points = 200;
    // Expected values.
    std::optional<double> n_star;
    std::optional<double> p_star;
    std::optional<double> asymptote;
    double minimum_abscissa_tolerance = 0.01;
    double p_star_tolerance = 0.02;
    double asymptote_tolerance = 0.01;

    void validate() const;
    std::vector<double> n1_grid() const;  // log-spaced, inclusive
};

// Directory holding the checked-in scenarios: $RELIAB_CONFIG_DIR when set,
// otherwise the source tree's config/scenarios.
std::filesystem::path scenario_directory();
std::filesystem::path scenario_path(const std::string& name_or_path);

ScenarioConfig load_miles_scenario(const std::filesystem::path& path);
CompensationConfig load_compensation_scenario(const std::filesystem::path& path);

}  // namespace reliab::cli
