#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "erts/config.hpp"
#include "erts/simulator.hpp"

namespace erts {

/// Theory report as emitted by the CLI: per-arm constants with flags,
/// bounds, and the lower-bound witness at the configured epsilon. Every
/// emitted number is finite; infeasibility shows up as flags.
nlohmann::json theory_report_json(const BanditInstance& instance, const XiPolicy& xi_policy,
                                  double witness_epsilon);

struct SimulateOutputs {
    std::string csv_path;
    std::string json_path;
    std::string plot_path;
};

/// Runs every configured policy and writes the checkpoint CSV, the JSON
/// summary (theory report embedded) and the plot-data file. Byte-identical
/// outputs for identical configs.
SimulateOutputs cmd_simulate(const ExperimentConfig& config,
                             ExecMode mode = ExecMode::parallel);

/// Writes the standalone theory report; returns its path.
std::string cmd_theory(const ExperimentConfig& config);

/// Test fixture hooks for the validate command's negative controls.
struct ValidateFaults {
    bool corrupt_beta_update = false;
};

/// Fast invariant suite: posterior sequential/batch equivalence, h-inverse
/// round trips, witness KL identity, Gamma tail bound vs exact survival.
/// Prints one line per check; returns 0 when all pass, 1 otherwise.
int cmd_validate(std::ostream& out, const ValidateFaults& faults = {});

} // namespace erts
