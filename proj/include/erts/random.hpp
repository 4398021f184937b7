#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>

namespace erts {

/// SplitMix64 finalizer. Bijective on 64-bit words, so distinct inputs
/// never collide.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Seed for substream `k` of `root_seed`. The multiplier is odd, so
/// k -> root_seed + c*(k+1) is injective mod 2^64 and mix64 keeps it so.
constexpr std::uint64_t derive_stream_seed(std::uint64_t root_seed, std::uint64_t k) noexcept {
    return mix64(root_seed + 0x9e3779b97f4a7c15ULL * (k + 1));
}

/// Deterministic random stream used everywhere in the library.
///
/// The base generator is std::mt19937_64 (bit-exact across conforming
/// standard libraries). Doubles, normals and gammas are produced by fixed,
/// documented recipes on top of it:
///   - uniform01: top 53 bits of one 64-bit word, value in [0, 1)
///   - normal:    Box-Muller, sqrt(-2 log(1-u1)) * cos(2*pi*u2)
///   - gamma:     Marsaglia-Tsang squeeze/rejection, shape boost for a < 1
/// A stream is owned by a single episode; never share one across threads.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : gen_(seed) {}

    /// Uniform in [0, 1) with 53-bit resolution.
    double uniform01() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double standard_normal() {
        const double u1 = uniform01();
        const double u2 = uniform01();
        // log1p(-u1) = log(1-u1), finite because 1-u1 is in (0, 1]
        return std::sqrt(-2.0 * std::log1p(-u1)) *
               std::cos(2.0 * std::numbers::pi * u2);
    }

    double normal(double mean, double stddev) {
        return mean + stddev * standard_normal();
    }

    /// Gamma(shape, rate) via Marsaglia-Tsang. Consumes a variable but
    /// stream-determined number of draws.
    double gamma(double shape, double rate) {
        if (!(shape > 0.0) || !(rate > 0.0)) {
            throw std::domain_error("RandomStream::gamma: shape and rate must be > 0");
        }
        if (shape < 1.0) {
            const double g = gamma_shape_ge1(shape + 1.0);
            const double u = 1.0 - uniform01(); // (0, 1]
            return g * std::pow(u, 1.0 / shape) / rate;
        }
        return gamma_shape_ge1(shape) / rate;
    }

    /// Index uniform over {0, ..., k-1}.
    std::size_t uniform_index(std::size_t k) {
        if (k == 0) {
            throw std::domain_error("RandomStream::uniform_index: k must be >= 1");
        }
        auto idx = static_cast<std::size_t>(uniform01() * static_cast<double>(k));
        return idx < k ? idx : k - 1;
    }

    std::uint64_t next_u64() { return gen_(); }

private:
    double gamma_shape_ge1(double shape) {
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x = 0.0;
            double v = 0.0;
            do {
                x = standard_normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = 1.0 - uniform01(); // (0, 1], safe for log
            const double x2 = x * x;
            if (u < 1.0 - 0.0331 * x2 * x2) {
                return d * v;
            }
            if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) {
                return d * v;
            }
        }
    }

    std::mt19937_64 gen_;
};

} // namespace erts
