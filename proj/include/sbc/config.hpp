#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sbc/distribution.hpp"
#include "sbc/mechanism.hpp"
#include "sbc/noise.hpp"
#include "sbc/params.hpp"
#include "sbc/signal_rule.hpp"
#include "sbc/technology.hpp"

namespace sbc {

/// One scenario: model primitives plus run settings. See README for the
/// JSON schema; omitted optional keys take the documented defaults
/// (grid 101, draws 200000, seed 42).
struct ScenarioConfig {
    ParamSet params;
    std::optional<TypeDistribution> distribution;
    NoiseModel noise;
    EffortTechnology technology;
    std::optional<SignalRule> rule;
    LocalChoice base_choice;

    int grid_size = 101;
    int cap_grid_size = 201;
    int ic_grid_size = 21;
    long draws = 200000;
    long effort_draws = 20000;
    std::uint64_t seed = 42;
    IroningMode ironing = IroningMode::Auto;
    std::vector<double> simulate_thetas;
    double k_base = 0.0;
    double k_slope = 0.0;
    double reservation_utility = 0.0;
    std::string out_dir = "out";

    SolveOptions solve_options() const;
};

struct LoadResult {
    std::optional<ScenarioConfig> config;
    std::vector<std::string> errors; // "key: reason", aggregated
    bool ok() const { return errors.empty() && config.has_value(); }
};

/// Parse and validate a scenario file. Parse errors carry line/column;
/// validation errors are aggregated, one per offending key.
LoadResult load_config(const std::string& path);

} // namespace sbc
