#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace erts {

/// True Gaussian parameters of one arm.
struct ArmSpec {
    double mean = 0.0;
    double variance = 1.0;

    bool operator==(const ArmSpec&) const = default;
};

/// Entropic risk of N(mean, variance) at risk aversion gamma:
///   ER_gamma = -mean + (gamma/2) * variance.
/// Lower is better; gamma -> 0+ recovers the risk-neutral ordering.
double er_gaussian(double mean, double variance, double gamma);

/// Sample analogue (1/gamma) * log(mean of exp(-gamma*x)). Shifted by the
/// max exponent before exponentiating, so it cannot overflow.
double er_empirical(std::span<const double> samples, double gamma);

/// KL divergence between two Gaussians:
///   log(sd_b/sd_a) + (var_a + (mean_a - mean_b)^2) / (2 var_b) - 1/2.
double kl_gaussian(const ArmSpec& a, const ArmSpec& b);

/// A K-armed Gaussian instance with risk aversion gamma and variance cap.
/// Construction validates K >= 2, gamma > 0, sigma_max_sq > 1, per-arm
/// variances in (0, sigma_max_sq], and that exactly one arm attains the
/// minimum entropic risk. Ties are rejected outright: every downstream
/// theory constant divides by the gap.
class BanditInstance {
public:
    BanditInstance(std::vector<ArmSpec> arms, double gamma, double sigma_max_sq);

    const std::vector<ArmSpec>& arms() const { return arms_; }
    const ArmSpec& arm(std::size_t i) const;
    std::size_t num_arms() const { return arms_.size(); }
    double gamma() const { return gamma_; }
    double sigma_max_sq() const { return sigma_max_sq_; }

    std::size_t optimal_arm() const { return optimal_; }
    /// Entropic risk of arm i.
    double er(std::size_t i) const;
    /// ER gap of arm i relative to the optimal arm; 0 exactly for the
    /// optimal arm, > 0 otherwise.
    double gap(std::size_t i) const;
    std::span<const double> gaps() const { return gaps_; }

    bool operator==(const BanditInstance& other) const {
        return arms_ == other.arms_ && gamma_ == other.gamma_ &&
               sigma_max_sq_ == other.sigma_max_sq_;
    }

private:
    std::vector<ArmSpec> arms_;
    double gamma_;
    double sigma_max_sq_;
    std::vector<double> er_;
    std::vector<double> gaps_;
    std::size_t optimal_ = 0;
};

/// Free-function form of BanditInstance::gap.
double er_gap(const BanditInstance& instance, std::size_t arm_index);

} // namespace erts
