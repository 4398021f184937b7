#pragma once

#include <cstdint>
#include <vector>

namespace erts {

/// Full record of one episode. regret_trajectory[t] is the cumulative
/// pseudo-regret after round t+1; it is non-decreasing and its final entry
/// equals sum_i pulls[i] * gap(i).
struct RunResult {
    std::vector<std::int64_t> pulls;        // per-arm pull counts
    std::vector<std::uint32_t> choices;     // chosen arm per round
    std::vector<double> regret_trajectory;  // cumulative pseudo-regret per round
    std::uint64_t seed = 0;                 // stream seed this episode ran with

    bool operator==(const RunResult&) const = default;
};

} // namespace erts
