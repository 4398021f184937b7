#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "erts/policies.hpp"
#include "erts/risk.hpp"
#include "erts/theory.hpp"

namespace erts {

inline constexpr int kSchemaVersion = 1;

struct TheorySettings {
    double fixed_xi = 0.9;      // fixed choice, and fallback for xi_gamma
    bool use_xi_gamma = true;
    double witness_epsilon = 0.5;

    bool operator==(const TheorySettings&) const = default;
};

struct OutputSettings {
    std::string dir = "out";
    std::string prefix = "experiment";

    bool operator==(const OutputSettings&) const = default;
};

/// Everything one experiment needs. parse_config resolves defaults, so
/// parse(emit(config)) == config.
struct ExperimentConfig {
    std::vector<ArmSpec> arms;
    double gamma = 1.0;
    double sigma_max_sq = 2.0;
    std::vector<PolicySpec> policies;
    std::int64_t horizon = 1000;
    std::int64_t n_runs = 10;
    std::uint64_t root_seed = 1;
    std::vector<std::int64_t> checkpoints; // resolved; subset of [K, horizon]
    TheorySettings theory;
    OutputSettings output;

    bool operator==(const ExperimentConfig&) const = default;
};

/// Parses and fully validates; throws std::invalid_argument naming the
/// offending field.
ExperimentConfig parse_config(const nlohmann::json& j);
nlohmann::json emit_config(const ExperimentConfig& config);
ExperimentConfig load_config_file(const std::string& path);

/// Re-checks every module precondition (fail-fast before any run starts).
void validate_config(const ExperimentConfig& config);

BanditInstance make_instance(const ExperimentConfig& config);
XiPolicy make_xi_policy(const ExperimentConfig& config);

/// Scalar CLI overrides applied on top of a parsed config.
struct ConfigOverrides {
    std::optional<std::string> out_dir;
    std::optional<std::uint64_t> root_seed;
    std::optional<std::int64_t> n_runs;
    std::optional<std::int64_t> horizon;
};
void apply_overrides(ExperimentConfig& config, const ConfigOverrides& overrides);

} // namespace erts
