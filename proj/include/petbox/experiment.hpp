#pragma once

#include <cstdint>
#include <string>

#include "petbox/json_io.hpp"

namespace petbox {

// Exit codes shared by the scenario runner and the CLI.
enum ExitCode : int {
    kExitOk = 0,
    kExitAssertionFailed = 1,
    kExitConfigError = 2,
    kExitCapExceeded = 3,
};

struct ScenarioResult {
    int exit_code = kExitOk;
    std::string csv;    // deterministic CSV body (header + rows)
    std::string log;    // human-readable report
    Json extra;         // scenario-specific structured output (e.g. PET trace)
};

// Builds a function from a constructor spec:
//   {"type": "indicator_box", "lo": [...], "hi": [...]}
//   {"type": "random_pm1", "lo": [...], "hi": [...], "seed": u64?}
//   {"type": "random_unimodular", "lo": [...], "hi": [...], "seed": u64?}
//   {"type": "points", "values": [[[x...], [re, im]], ...]}
// Omitted seeds derive deterministically from (base_seed, index).
LatticeFunction build_function(const Json& spec, int dim, std::uint64_t base_seed, std::uint64_t index);

// Runs the scenario named by config["scenario"]; never throws, converting
// errors to exit codes (2 = bad config, 3 = cap exceeded, 1 = assertion).
ScenarioResult run_scenario(const Json& config);

// Individual runners (also used directly by tests).
ScenarioResult run_pet_scenario(const Json& config);
ScenarioResult run_norm_scenario(const Json& config);
ScenarioResult run_count_op_scenario(const Json& config);
ScenarioResult run_theorem15_scenario(const Json& config);
ScenarioResult run_concat_scenario(const Json& config);
ScenarioResult run_equidist_sweep_scenario(const Json& config);

// Deterministic number formatting used for every CSV cell.
std::string format_double(double v);

}  // namespace petbox
