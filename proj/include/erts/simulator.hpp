#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "erts/policies.hpp"
#include "erts/risk.hpp"
#include "erts/run_result.hpp"
#include "erts/theory.hpp"

namespace erts {

/// sum over suboptimal arms of pulls[i] * gap(i).
double pseudo_regret(const BanditInstance& instance, std::span<const std::int64_t> pulls);

struct AggregateResult {
    std::vector<double> mean_regret_trajectory; // per round
    std::vector<double> std_regret_trajectory;  // per round, 1/n normalization
    std::vector<double> mean_pull_fractions;    // per arm, sums to 1
    std::int64_t n_runs = 0;
    std::vector<std::int64_t> checkpoints;
    std::vector<double> mean_regret_at;     // at checkpoints
    std::vector<double> std_regret_at;      // at checkpoints
    std::vector<double> regret_over_log_n;  // mean regret / log(n) at checkpoints
};

/// Run scheduling. Both modes produce bit-identical aggregates: every run
/// owns a stream derived from (root_seed, run index) and the reduction is
/// always performed in run-index order. `serial` is the reference
/// implementation the OpenMP path is checked against.
enum class ExecMode { serial, parallel };

AggregateResult run_many(const BanditInstance& instance, const PolicySpec& policy,
                         std::int64_t horizon, std::int64_t n_runs, std::uint64_t root_seed,
                         std::span<const std::int64_t> checkpoints,
                         ExecMode mode = ExecMode::parallel);

/// Side-by-side of empirical regret and the theory constant per checkpoint.
/// No pass/fail judgment here; acceptance owns thresholds.
struct TheoryComparisonRow {
    std::int64_t n = 0;
    double mean_regret = 0.0;
    double std_regret = 0.0;
    double regret_over_log_n = 0.0;
    double theory_upper = 0.0;
    double theory_lower = 0.0;
};
std::vector<TheoryComparisonRow> regret_vs_theory(const AggregateResult& aggregate,
                                                  const TheoryReport& theory);

} // namespace erts
