#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sbc/config.hpp"

namespace sbc {

struct SweepSpec {
    std::string key;
    double from = 0.0;
    double to = 0.0;
    int steps = 2;
};

struct RunOverrides {
    std::optional<std::string> out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<double> rho;
    std::optional<SweepSpec> sweep;
};

struct RunResult {
    int exit_code = 0; // 0 ok, 1 validation failure, 2 verification-suite failure
    std::vector<std::string> files;
    std::vector<std::string> messages;
};

/// Dispatch one CLI command against a loaded scenario.
/// Commands: solve, simulate, verify, credibility, sweep.
RunResult execute(const std::string& command, ScenarioConfig config,
                  const RunOverrides& overrides = {});

} // namespace sbc
