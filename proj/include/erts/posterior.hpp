#pragma once

#include <cstdint>
#include <span>

#include "erts/random.hpp"

namespace erts {

/// Normal-Gamma posterior parameters of one arm. Immutable value type;
/// updates return a new state. The prior is (0, 0, 1/2, 1/2).
struct PosteriorState {
    double mu_hat = 0.0;     // posterior mean estimate
    std::int64_t t_count = 0; // samples seen
    double alpha = 0.5;      // Gamma shape, always 1/2 + t_count/2
    double beta = 0.5;       // Gamma rate, non-decreasing

    bool operator==(const PosteriorState&) const = default;
};

/// One Thompson draw: precision kappa ~ Gamma(alpha, beta), then
/// theta ~ N(mu_hat, 1/t_count).
struct PosteriorSample {
    double theta = 0.0;
    double kappa = 0.0;
};

/// One-sample update:
///   mu'    = (T/(T+1)) mu + (1/(T+1)) x
///   T'     = T + 1
///   alpha' = alpha + 1/2
///   beta'  = beta + (T/(T+1)) (x - mu)^2 / 2
PosteriorState update(const PosteriorState& state, double x);

/// Closed-form state after seeing all samples at once:
///   (xbar, n, 1/2 + n/2, 1/2 + sum((x - xbar)^2)/2),
/// computed in one pass (Welford). Independent route used to cross-check
/// the sequential update.
PosteriorState batch_posterior(std::span<const double> samples);

/// Draws kappa then theta, in that order, from the given stream.
/// Requires t_count >= 1 (every arm is played once before sampling).
PosteriorSample sample_posterior(const PosteriorState& state, RandomStream& rng);

} // namespace erts
