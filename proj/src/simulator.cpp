#include "erts/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace erts {

double pseudo_regret(const BanditInstance& instance, std::span<const std::int64_t> pulls) {
    if (pulls.size() != instance.num_arms()) {
        throw std::invalid_argument("pseudo_regret: pull counts must match the arm count");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < pulls.size(); ++i) {
        if (pulls[i] < 0) {
            throw std::domain_error("pseudo_regret: pull counts must be non-negative");
        }
        if (i != instance.optimal_arm()) {
            total += static_cast<double>(pulls[i]) * instance.gap(i);
        }
    }
    return total;
}

namespace {

void validate_checkpoints(std::span<const std::int64_t> checkpoints, std::int64_t k,
                          std::int64_t horizon) {
    for (std::int64_t c : checkpoints) {
        if (c < k || c > horizon) {
            throw std::invalid_argument(
                "run_many: checkpoints must lie in [num_arms, horizon]");
        }
    }
}

} // namespace

AggregateResult run_many(const BanditInstance& instance, const PolicySpec& policy,
                         std::int64_t horizon, std::int64_t n_runs, std::uint64_t root_seed,
                         std::span<const std::int64_t> checkpoints, ExecMode mode) {
    if (n_runs < 1) {
        throw std::invalid_argument("run_many: n_runs must be >= 1");
    }
    const std::size_t k = instance.num_arms();
    if (horizon < static_cast<std::int64_t>(k)) {
        throw std::domain_error("run_many: horizon must be >= the number of arms");
    }
    validate_checkpoints(checkpoints, static_cast<std::int64_t>(k), horizon);

    const auto hz = static_cast<std::size_t>(horizon);
    std::vector<double> mean(hz, 0.0);
    std::vector<double> m2(hz, 0.0);
    std::vector<std::int64_t> pull_totals(k, 0);

    // Runs execute in batches; the Welford reduction over runs always
    // proceeds in run-index order, so the aggregate is the same whether a
    // batch ran on one thread or many.
    constexpr std::int64_t batch_size = 32;
    std::vector<RunResult> slots(static_cast<std::size_t>(std::min(batch_size, n_runs)));

    std::int64_t runs_reduced = 0;
    for (std::int64_t start = 0; start < n_runs; start += batch_size) {
        const std::int64_t m = std::min(batch_size, n_runs - start);
        if (mode == ExecMode::parallel) {
#pragma omp parallel for schedule(dynamic)
            for (std::int64_t r = 0; r < m; ++r) {
                const auto seed = derive_stream_seed(root_seed,
                                                     static_cast<std::uint64_t>(start + r));
                RandomStream rs(seed);
                slots[static_cast<std::size_t>(r)] =
                    run_episode(instance, policy, horizon, rs, seed);
            }
        } else {
            for (std::int64_t r = 0; r < m; ++r) {
                const auto seed = derive_stream_seed(root_seed,
                                                     static_cast<std::uint64_t>(start + r));
                RandomStream rs(seed);
                slots[static_cast<std::size_t>(r)] =
                    run_episode(instance, policy, horizon, rs, seed);
            }
        }

        for (std::int64_t r = 0; r < m; ++r) {
            const RunResult& run = slots[static_cast<std::size_t>(r)];
            ++runs_reduced;
            const double inv_n = 1.0 / static_cast<double>(runs_reduced);
            for (std::size_t t = 0; t < hz; ++t) {
                const double x = run.regret_trajectory[t];
                const double delta = x - mean[t];
                mean[t] += delta * inv_n;
                m2[t] += delta * (x - mean[t]);
            }
            for (std::size_t i = 0; i < k; ++i) {
                pull_totals[i] += run.pulls[i];
            }
        }
    }

    AggregateResult agg;
    agg.n_runs = n_runs;
    agg.mean_regret_trajectory = std::move(mean);
    agg.std_regret_trajectory.resize(hz);
    const double inv_runs = 1.0 / static_cast<double>(n_runs);
    for (std::size_t t = 0; t < hz; ++t) {
        agg.std_regret_trajectory[t] = std::sqrt(std::max(0.0, m2[t] * inv_runs));
    }
    agg.mean_pull_fractions.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
        agg.mean_pull_fractions[i] = static_cast<double>(pull_totals[i]) /
                                     (static_cast<double>(n_runs) * static_cast<double>(horizon));
    }
    agg.checkpoints.assign(checkpoints.begin(), checkpoints.end());
    agg.mean_regret_at.reserve(checkpoints.size());
    agg.std_regret_at.reserve(checkpoints.size());
    agg.regret_over_log_n.reserve(checkpoints.size());
    for (std::int64_t c : checkpoints) {
        const auto idx = static_cast<std::size_t>(c - 1);
        agg.mean_regret_at.push_back(agg.mean_regret_trajectory[idx]);
        agg.std_regret_at.push_back(agg.std_regret_trajectory[idx]);
        agg.regret_over_log_n.push_back(agg.mean_regret_trajectory[idx] /
                                        std::log(static_cast<double>(c)));
    }
    return agg;
}

std::vector<TheoryComparisonRow> regret_vs_theory(const AggregateResult& aggregate,
                                                  const TheoryReport& theory) {
    std::vector<TheoryComparisonRow> rows;
    rows.reserve(aggregate.checkpoints.size());
    for (std::size_t i = 0; i < aggregate.checkpoints.size(); ++i) {
        TheoryComparisonRow row;
        row.n = aggregate.checkpoints[i];
        row.mean_regret = aggregate.mean_regret_at[i];
        row.std_regret = aggregate.std_regret_at[i];
        row.regret_over_log_n = aggregate.regret_over_log_n[i];
        row.theory_upper = theory.asymptotic_bound;
        row.theory_lower = theory.asymptotic_bound;
        rows.push_back(row);
    }
    return rows;
}

} // namespace erts
