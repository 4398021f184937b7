#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "erts/posterior.hpp"
#include "erts/random.hpp"
#include "erts/risk.hpp"
#include "erts/run_result.hpp"

namespace erts {

enum class PolicyKind { erts, uniform, epsilon_greedy_er, ftl_er };

struct PolicySpec {
    PolicyKind kind = PolicyKind::erts;
    double epsilon = 0.0; // epsilon_greedy_er only

    static PolicySpec erts() { return {PolicyKind::erts, 0.0}; }
    static PolicySpec uniform() { return {PolicyKind::uniform, 0.0}; }
    static PolicySpec epsilon_greedy(double eps) { return {PolicyKind::epsilon_greedy_er, eps}; }
    static PolicySpec ftl() { return {PolicyKind::ftl_er, 0.0}; }

    bool operator==(const PolicySpec&) const = default;
};

std::string policy_name(const PolicySpec& spec);
PolicyKind policy_kind_from_name(const std::string& name);

/// Index of the smallest value; ties go to the lowest index.
std::size_t argmin_lowest_index(std::span<const double> values);

/// One decision. arm_index is always the argmin position of diagnostic.
struct PolicyDecision {
    std::size_t arm_index = 0;
    std::vector<double> diagnostic; // per-arm scores, same order as arms
};

/// Thompson step: per arm, draw (kappa, theta) from the posterior (arms in
/// index order, kappa before theta), score -theta + gamma/(2 kappa), play
/// the argmin. Requires every t_count >= 1.
PolicyDecision erts_choose(std::span<const PosteriorState> states, double gamma,
                           RandomStream& rng);

/// uniform: random arm. epsilon_greedy_er: with prob 1-eps the argmin of
/// the plug-in score -mu_hat + gamma/(2 alpha/beta), random otherwise.
/// ftl_er: the eps = 0 case (no exploration draw is consumed).
PolicyDecision baseline_choose(const PolicySpec& spec, std::span<const PosteriorState> states,
                               double gamma, RandomStream& rng);

PolicyDecision choose(const PolicySpec& spec, std::span<const PosteriorState> states,
                      double gamma, RandomStream& rng);

/// Full episode: rounds 1..K play each arm once, later rounds use the
/// policy rule; the chosen arm's posterior is updated with a fresh reward
/// from its true Gaussian. seed_label is recorded in the result only.
RunResult run_episode(const BanditInstance& instance, const PolicySpec& spec,
                      std::int64_t horizon, RandomStream& rng,
                      std::uint64_t seed_label = 0);

RunResult erts_episode(const BanditInstance& instance, std::int64_t horizon,
                       RandomStream& rng, std::uint64_t seed_label = 0);

} // namespace erts
