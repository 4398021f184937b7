#include "erts/policies.hpp"

#include <cmath>
#include <stdexcept>

namespace erts {

std::string policy_name(const PolicySpec& spec) {
    switch (spec.kind) {
        case PolicyKind::erts: return "erts";
        case PolicyKind::uniform: return "uniform";
        case PolicyKind::epsilon_greedy_er: return "epsilon_greedy_er";
        case PolicyKind::ftl_er: return "ftl_er";
    }
    throw std::logic_error("policy_name: unknown kind");
}

PolicyKind policy_kind_from_name(const std::string& name) {
    if (name == "erts") return PolicyKind::erts;
    if (name == "uniform") return PolicyKind::uniform;
    if (name == "epsilon_greedy_er") return PolicyKind::epsilon_greedy_er;
    if (name == "ftl_er") return PolicyKind::ftl_er;
    throw std::invalid_argument("unknown policy name: " + name);
}

std::size_t argmin_lowest_index(std::span<const double> values) {
    if (values.empty()) {
        throw std::domain_error("argmin_lowest_index: empty input");
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i] < values[best]) {
            best = i;
        }
    }
    return best;
}

PolicyDecision erts_choose(std::span<const PosteriorState> states, double gamma,
                           RandomStream& rng) {
    if (states.empty()) {
        throw std::domain_error("erts_choose: need at least one arm");
    }
    PolicyDecision d;
    d.diagnostic.resize(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) {
        const PosteriorSample s = sample_posterior(states[i], rng);
        d.diagnostic[i] = -s.theta + gamma / (2.0 * s.kappa);
    }
    d.arm_index = argmin_lowest_index(d.diagnostic);
    return d;
}

namespace {

// Indicator diagnostic: 0 at the picked arm, 1 elsewhere, so the argmin
// contract holds for random picks too.
PolicyDecision pick_indicator(std::size_t arm, std::size_t k) {
    PolicyDecision d;
    d.diagnostic.assign(k, 1.0);
    d.diagnostic[arm] = 0.0;
    d.arm_index = arm;
    return d;
}

PolicyDecision plugin_er_choice(std::span<const PosteriorState> states, double gamma) {
    PolicyDecision d;
    d.diagnostic.resize(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) {
        const double precision = states[i].alpha / states[i].beta;
        d.diagnostic[i] = -states[i].mu_hat + gamma / (2.0 * precision);
    }
    d.arm_index = argmin_lowest_index(d.diagnostic);
    return d;
}

} // namespace

PolicyDecision baseline_choose(const PolicySpec& spec, std::span<const PosteriorState> states,
                               double gamma, RandomStream& rng) {
    if (states.empty()) {
        throw std::domain_error("baseline_choose: need at least one arm");
    }
    const std::size_t k = states.size();
    switch (spec.kind) {
        case PolicyKind::uniform:
            return pick_indicator(rng.uniform_index(k), k);
        case PolicyKind::epsilon_greedy_er: {
            if (!std::isfinite(spec.epsilon) || spec.epsilon < 0.0 || spec.epsilon > 1.0) {
                throw std::domain_error("baseline_choose: epsilon must be in [0, 1]");
            }
            if (spec.epsilon > 0.0 && rng.uniform01() < spec.epsilon) {
                return pick_indicator(rng.uniform_index(k), k);
            }
            return plugin_er_choice(states, gamma);
        }
        case PolicyKind::ftl_er:
            return plugin_er_choice(states, gamma);
        case PolicyKind::erts:
            throw std::domain_error("baseline_choose: erts is not a baseline");
    }
    throw std::logic_error("baseline_choose: unknown kind");
}

PolicyDecision choose(const PolicySpec& spec, std::span<const PosteriorState> states,
                      double gamma, RandomStream& rng) {
    if (spec.kind == PolicyKind::erts) {
        return erts_choose(states, gamma, rng);
    }
    return baseline_choose(spec, states, gamma, rng);
}

RunResult run_episode(const BanditInstance& instance, const PolicySpec& spec,
                      std::int64_t horizon, RandomStream& rng, std::uint64_t seed_label) {
    const std::size_t k = instance.num_arms();
    if (horizon < static_cast<std::int64_t>(k)) {
        throw std::domain_error("run_episode: horizon must be >= the number of arms");
    }

    std::vector<PosteriorState> states(k);
    std::vector<double> stddev(k);
    for (std::size_t i = 0; i < k; ++i) {
        stddev[i] = std::sqrt(instance.arm(i).variance);
    }

    RunResult res;
    res.seed = seed_label;
    res.pulls.assign(k, 0);
    res.choices.reserve(static_cast<std::size_t>(horizon));
    res.regret_trajectory.reserve(static_cast<std::size_t>(horizon));

    double cum_regret = 0.0;
    const auto pull = [&](std::size_t j) {
        const double x = rng.normal(instance.arm(j).mean, stddev[j]);
        states[j] = update(states[j], x);
        ++res.pulls[j];
        res.choices.push_back(static_cast<std::uint32_t>(j));
        cum_regret += instance.gap(j);
        res.regret_trajectory.push_back(cum_regret);
    };

    for (std::size_t j = 0; j < k; ++j) {
        pull(j);
    }
    for (std::int64_t t = static_cast<std::int64_t>(k); t < horizon; ++t) {
        pull(choose(spec, states, instance.gamma(), rng).arm_index);
    }
    return res;
}

RunResult erts_episode(const BanditInstance& instance, std::int64_t horizon,
                       RandomStream& rng, std::uint64_t seed_label) {
    return run_episode(instance, PolicySpec::erts(), horizon, rng, seed_label);
}

} // namespace erts
