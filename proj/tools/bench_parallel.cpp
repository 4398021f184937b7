// Times the OpenMP episode harness against the serial reference path and
// checks that both produce the same aggregate.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "erts/simulator.hpp"

namespace {

double seconds_for(erts::ExecMode mode, const erts::BanditInstance& instance,
                   const erts::PolicySpec& policy, std::int64_t horizon, std::int64_t n_runs,
                   erts::AggregateResult* out) {
    const auto t0 = std::chrono::steady_clock::now();
    std::int64_t checkpoints[] = {horizon};
    *out = erts::run_many(instance, policy, horizon, n_runs, 0xb3ac4ULL, checkpoints, mode);
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

bool same_aggregate(const erts::AggregateResult& a, const erts::AggregateResult& b) {
    return a.mean_regret_trajectory == b.mean_regret_trajectory &&
           a.std_regret_trajectory == b.std_regret_trajectory &&
           a.mean_pull_fractions == b.mean_pull_fractions;
}

} // namespace

int main(int argc, char** argv) {
    std::int64_t horizon = 20000;
    std::int64_t n_runs = 64;
    if (argc > 1) horizon = std::atoll(argv[1]);
    if (argc > 2) n_runs = std::atoll(argv[2]);

    const erts::BanditInstance instance({{1.0, 1.0}, {0.0, 1.0}}, 1.0, 2.0);

#ifdef _OPENMP
    std::printf("threads available: %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; parallel mode degrades to serial\n");
#endif
    std::printf("instance: 2 arms, gamma=1; horizon=%lld, runs=%lld\n\n",
                static_cast<long long>(horizon), static_cast<long long>(n_runs));
    std::printf("%-18s %10s %10s %9s\n", "policy", "serial[s]", "openmp[s]", "speedup");

    bool all_match = true;
    for (const erts::PolicySpec& policy :
         {erts::PolicySpec::erts(), erts::PolicySpec::uniform(), erts::PolicySpec::ftl()}) {
        erts::AggregateResult serial_agg;
        erts::AggregateResult parallel_agg;
        const double ts = seconds_for(erts::ExecMode::serial, instance, policy, horizon,
                                      n_runs, &serial_agg);
        const double tp = seconds_for(erts::ExecMode::parallel, instance, policy, horizon,
                                      n_runs, &parallel_agg);
        const bool match = same_aggregate(serial_agg, parallel_agg);
        all_match = all_match && match;
        std::printf("%-18s %10.3f %10.3f %8.2fx %s\n", erts::policy_name(policy).c_str(), ts,
                    tp, ts / tp, match ? "" : "AGGREGATES DIFFER");
    }

    if (!all_match) {
        std::printf("\nserial and OpenMP aggregates differ: investigate before trusting results\n");
        return 1;
    }
    std::printf("\nserial and OpenMP aggregates are bit-identical\n");
    return 0;
}
