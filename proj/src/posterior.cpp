#include "erts/posterior.hpp"

#include <cmath>
#include <stdexcept>

namespace erts {

PosteriorState update(const PosteriorState& state, double x) {
    if (!std::isfinite(x)) {
        throw std::domain_error("update: sample must be finite");
    }
    const double t = static_cast<double>(state.t_count);
    const double w = t / (t + 1.0);
    const double d = x - state.mu_hat;
    return PosteriorState{
        .mu_hat = w * state.mu_hat + x / (t + 1.0),
        .t_count = state.t_count + 1,
        .alpha = state.alpha + 0.5,
        .beta = state.beta + w * d * d / 2.0,
    };
}

PosteriorState batch_posterior(std::span<const double> samples) {
    double mean = 0.0;
    double m2 = 0.0;
    std::int64_t n = 0;
    for (double x : samples) {
        ++n;
        const double delta = x - mean;
        mean += delta / static_cast<double>(n);
        m2 += delta * (x - mean);
    }
    return PosteriorState{
        .mu_hat = mean,
        .t_count = n,
        .alpha = 0.5 + static_cast<double>(n) / 2.0,
        .beta = 0.5 + m2 / 2.0,
    };
}

PosteriorSample sample_posterior(const PosteriorState& state, RandomStream& rng) {
    if (state.t_count < 1) {
        throw std::logic_error(
            "sample_posterior: t_count must be >= 1; play every arm once first");
    }
    // kappa before theta: this order is part of the reproducibility contract
    const double kappa = rng.gamma(state.alpha, state.beta);
    const double theta =
        rng.normal(state.mu_hat, std::sqrt(1.0 / static_cast<double>(state.t_count)));
    return PosteriorSample{.theta = theta, .kappa = kappa};
}

} // namespace erts
