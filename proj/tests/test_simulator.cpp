#include <doctest.h>

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "erts/simulator.hpp"

using namespace erts;

namespace {

const BanditInstance& reference_instance() {
    static const BanditInstance inst({{1.0, 1.0}, {0.0, 1.0}}, 1.0, 2.0);
    return inst;
}

} // namespace

TEST_CASE("pseudo_regret") {
    const BanditInstance& inst = reference_instance();
    const std::vector<std::int64_t> all_optimal = {10, 0};
    CHECK(pseudo_regret(inst, all_optimal) == 0.0);
    const std::vector<std::int64_t> seven = {3, 7};
    CHECK(pseudo_regret(inst, seven) == doctest::Approx(7.0).epsilon(1e-14));

    const std::vector<std::int64_t> wrong_size = {1, 2, 3};
    CHECK_THROWS_AS(pseudo_regret(inst, wrong_size), std::invalid_argument);
    const std::vector<std::int64_t> negative = {-1, 2};
    CHECK_THROWS_AS(pseudo_regret(inst, negative), std::domain_error);
}

TEST_CASE("episode trajectory ends at the pseudo-regret of its pulls") {
    const BanditInstance& inst = reference_instance();
    for (std::uint64_t s : {1ULL, 2ULL, 3ULL}) {
        RandomStream rng(derive_stream_seed(11, s));
        const RunResult r = run_episode(inst, PolicySpec::erts(), 2000, rng);
        const double direct = pseudo_regret(inst, r.pulls);
        CHECK(r.regret_trajectory.back() ==
              doctest::Approx(direct).epsilon(1e-9));
    }
}

TEST_CASE("run_many determinism and serial/parallel equality") {
    const BanditInstance& inst = reference_instance();
    const std::vector<std::int64_t> cps = {2, 100, 500};
    const AggregateResult serial =
        run_many(inst, PolicySpec::erts(), 500, 40, 999, cps, ExecMode::serial);
    const AggregateResult parallel =
        run_many(inst, PolicySpec::erts(), 500, 40, 999, cps, ExecMode::parallel);
    CHECK(serial.mean_regret_trajectory == parallel.mean_regret_trajectory);
    CHECK(serial.std_regret_trajectory == parallel.std_regret_trajectory);
    CHECK(serial.mean_pull_fractions == parallel.mean_pull_fractions);
    CHECK(serial.regret_over_log_n == parallel.regret_over_log_n);

    const AggregateResult again =
        run_many(inst, PolicySpec::erts(), 500, 40, 999, cps, ExecMode::parallel);
    CHECK(again.mean_regret_trajectory == parallel.mean_regret_trajectory);
}

TEST_CASE("n_runs = 1 aggregate equals the single run") {
    const BanditInstance& inst = reference_instance();
    const std::vector<std::int64_t> cps = {300};
    const AggregateResult agg =
        run_many(inst, PolicySpec::erts(), 300, 1, 4321, cps, ExecMode::serial);

    RandomStream rng(derive_stream_seed(4321, 0));
    const RunResult run = run_episode(inst, PolicySpec::erts(), 300, rng);
    CHECK(agg.mean_regret_trajectory == run.regret_trajectory);
    for (double s : agg.std_regret_trajectory) {
        CHECK(s == 0.0);
    }
    CHECK(agg.mean_pull_fractions[0] ==
          static_cast<double>(run.pulls[0]) / 300.0);
}

TEST_CASE("same root seed reproduces the run prefix when n_runs doubles") {
    const BanditInstance& inst = reference_instance();
    // per-run streams depend only on (root_seed, run index), so run k is
    // identical in both experiments; spot-check via episode replay
    for (std::uint64_t k : {0ULL, 3ULL}) {
        RandomStream a(derive_stream_seed(77, k));
        RandomStream b(derive_stream_seed(77, k));
        const RunResult ra = run_episode(inst, PolicySpec::erts(), 400, a);
        const RunResult rb = run_episode(inst, PolicySpec::erts(), 400, b);
        CHECK(ra == rb);
    }
    // and aggregating 4 runs in order matches the first half of 8 runs
    const std::vector<std::int64_t> cps = {400};
    const AggregateResult four =
        run_many(inst, PolicySpec::erts(), 400, 4, 77, cps, ExecMode::serial);
    double mean_first_four = 0.0;
    for (std::uint64_t k = 0; k < 4; ++k) {
        RandomStream rs(derive_stream_seed(77, k));
        mean_first_four +=
            run_episode(inst, PolicySpec::erts(), 400, rs).regret_trajectory.back();
    }
    CHECK(four.mean_regret_trajectory.back() ==
          doctest::Approx(mean_first_four / 4.0).epsilon(1e-12));
}

TEST_CASE("aggregate invariants") {
    const BanditInstance& inst = reference_instance();
    const std::vector<std::int64_t> cps = {2, 50, 800};
    const AggregateResult agg =
        run_many(inst, PolicySpec::epsilon_greedy(0.2), 800, 25, 5, cps);
    CHECK(agg.n_runs == 25);
    const double total = std::accumulate(agg.mean_pull_fractions.begin(),
                                         agg.mean_pull_fractions.end(), 0.0);
    CHECK(std::abs(total - 1.0) < 1e-9);
    // trajectories non-decreasing in the mean as well
    for (std::size_t t = 1; t < agg.mean_regret_trajectory.size(); ++t) {
        CHECK(agg.mean_regret_trajectory[t] >= agg.mean_regret_trajectory[t - 1]);
    }
    // checkpoint at n = K: one forced pull of the gap-1 arm over log 2
    CHECK(agg.regret_over_log_n[0] ==
          doctest::Approx(1.0 / std::log(2.0)).epsilon(1e-12));

    const std::vector<std::int64_t> bad = {1};
    CHECK_THROWS_AS(run_many(inst, PolicySpec::erts(), 800, 2, 5, bad),
                    std::invalid_argument);
    CHECK_THROWS_AS(run_many(inst, PolicySpec::erts(), 800, 0, 5, cps),
                    std::invalid_argument);
}

TEST_CASE("three-arm instance with mixed variances aggregates cleanly") {
    const BanditInstance inst({{1.0, 1.0}, {0.0, 1.5}, {0.5, 0.5}}, 0.8, 2.0);
    const std::vector<std::int64_t> cps = {3, 600};
    for (ExecMode mode : {ExecMode::serial, ExecMode::parallel}) {
        const AggregateResult agg =
            run_many(inst, PolicySpec::erts(), 600, 16, 2024, cps, mode);
        double total = 0.0;
        for (double f : agg.mean_pull_fractions) {
            CHECK(f >= 0.0);
            total += f;
        }
        CHECK(std::abs(total - 1.0) < 1e-9);
        // first checkpoint covers exactly the forced-exploration rounds
        CHECK(agg.mean_regret_at[0] ==
              doctest::Approx(inst.gap(1) + inst.gap(2)).epsilon(1e-12));
    }
}

TEST_CASE("uniform baseline accrues about n * gap / 2") {
    const BanditInstance& inst = reference_instance();
    const std::vector<std::int64_t> cps = {2000};
    const AggregateResult agg =
        run_many(inst, PolicySpec::uniform(), 2000, 50, 31, cps);
    CHECK(agg.mean_regret_trajectory.back() ==
          doctest::Approx(1000.0).epsilon(0.05));
}

TEST_CASE("suboptimal pull fraction keeps shrinking with the horizon") {
    const BanditInstance& inst = reference_instance();
    const std::vector<std::int64_t> cps5k = {5000};
    const std::vector<std::int64_t> cps50k = {50000};
    const AggregateResult at5k =
        run_many(inst, PolicySpec::erts(), 5000, 100, 606, cps5k);
    const AggregateResult at50k =
        run_many(inst, PolicySpec::erts(), 50000, 100, 606, cps50k);
    CHECK(at5k.mean_pull_fractions[1] < 0.05);
    CHECK(at50k.mean_pull_fractions[1] < at5k.mean_pull_fractions[1]);
}

TEST_CASE("uniform regret over log n diverges") {
    const BanditInstance& inst = reference_instance();
    const std::vector<std::int64_t> cps = {1000, 50000};
    const AggregateResult agg =
        run_many(inst, PolicySpec::uniform(), 50000, 20, 13, cps);
    CHECK(agg.regret_over_log_n[1] >= 10.0 * agg.regret_over_log_n[0]);
}

TEST_CASE("regret_vs_theory lines up rows with checkpoints") {
    const BanditInstance& inst = reference_instance();
    const std::vector<std::int64_t> cps = {2, 100, 1000};
    const AggregateResult agg = run_many(inst, PolicySpec::erts(), 1000, 10, 12, cps);
    const TheoryReport rep = asymptotic_upper_bound(inst, XiPolicy::adaptive(0.9));
    const auto rows = regret_vs_theory(agg, rep);
    REQUIRE(rows.size() == cps.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].n == cps[i]);
        CHECK(rows[i].mean_regret == agg.mean_regret_at[i]);
        CHECK(rows[i].regret_over_log_n == agg.regret_over_log_n[i]);
        CHECK(rows[i].theory_upper == rep.asymptotic_bound);
        CHECK(rows[i].theory_lower == rep.asymptotic_bound);
        CHECK(rows[i].regret_over_log_n > 0.0);
        CHECK(std::isfinite(rows[i].regret_over_log_n));
    }
}
