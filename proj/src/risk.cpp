#include "erts/risk.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace erts {

double er_gaussian(double mean, double variance, double gamma) {
    if (!std::isfinite(mean)) {
        throw std::domain_error("er_gaussian: mean must be finite");
    }
    if (!std::isfinite(variance) || variance <= 0.0) {
        throw std::domain_error("er_gaussian: variance must be finite and > 0");
    }
    if (!std::isfinite(gamma) || gamma <= 0.0) {
        throw std::domain_error("er_gaussian: gamma must be finite and > 0");
    }
    return 0.5 * gamma * variance - mean;
}

double er_empirical(std::span<const double> samples, double gamma) {
    if (samples.empty()) {
        throw std::domain_error("er_empirical: sample set must be non-empty");
    }
    if (!std::isfinite(gamma) || gamma <= 0.0) {
        throw std::domain_error("er_empirical: gamma must be finite and > 0");
    }
    // log-sum-exp shift: m = max(-gamma*x), every exponent becomes <= 0
    double m = -std::numeric_limits<double>::infinity();
    for (double x : samples) {
        m = std::max(m, -gamma * x);
    }
    double sum = 0.0;
    for (double x : samples) {
        sum += std::exp(-gamma * x - m);
    }
    const double n = static_cast<double>(samples.size());
    return (m + std::log(sum / n)) / gamma;
}

double kl_gaussian(const ArmSpec& a, const ArmSpec& b) {
    if (!(a.variance > 0.0) || !(b.variance > 0.0)) {
        throw std::domain_error("kl_gaussian: variances must be > 0");
    }
    const double dm = a.mean - b.mean;
    return 0.5 * std::log(b.variance / a.variance) +
           (a.variance + dm * dm) / (2.0 * b.variance) - 0.5;
}

BanditInstance::BanditInstance(std::vector<ArmSpec> arms, double gamma, double sigma_max_sq)
    : arms_(std::move(arms)), gamma_(gamma), sigma_max_sq_(sigma_max_sq) {
    if (arms_.size() < 2) {
        throw std::invalid_argument("BanditInstance: need K >= 2 arms");
    }
    if (!std::isfinite(gamma_) || gamma_ <= 0.0) {
        throw std::invalid_argument("BanditInstance: gamma must be finite and > 0");
    }
    if (!std::isfinite(sigma_max_sq_) || sigma_max_sq_ <= 1.0) {
        throw std::invalid_argument("BanditInstance: sigma_max_sq must be > 1");
    }
    for (std::size_t i = 0; i < arms_.size(); ++i) {
        const ArmSpec& a = arms_[i];
        if (!std::isfinite(a.mean)) {
            throw std::invalid_argument("BanditInstance: arm " + std::to_string(i) +
                                        " has non-finite mean");
        }
        if (!std::isfinite(a.variance) || a.variance <= 0.0) {
            throw std::invalid_argument("BanditInstance: arm " + std::to_string(i) +
                                        " has non-positive variance");
        }
        if (a.variance > sigma_max_sq_) {
            throw std::invalid_argument("BanditInstance: arm " + std::to_string(i) +
                                        " exceeds the variance cap sigma_max_sq");
        }
    }

    er_.resize(arms_.size());
    for (std::size_t i = 0; i < arms_.size(); ++i) {
        er_[i] = er_gaussian(arms_[i].mean, arms_[i].variance, gamma_);
    }
    optimal_ = static_cast<std::size_t>(
        std::min_element(er_.begin(), er_.end()) - er_.begin());
    for (std::size_t i = 0; i < er_.size(); ++i) {
        if (i != optimal_ && er_[i] == er_[optimal_]) {
            throw std::invalid_argument(
                "BanditInstance: arms " + std::to_string(optimal_) + " and " +
                std::to_string(i) + " tie for the minimum entropic risk; "
                "the optimal arm must be unique");
        }
    }
    gaps_.resize(er_.size());
    for (std::size_t i = 0; i < er_.size(); ++i) {
        gaps_[i] = i == optimal_ ? 0.0 : er_[i] - er_[optimal_];
    }
}

const ArmSpec& BanditInstance::arm(std::size_t i) const {
    if (i >= arms_.size()) {
        throw std::out_of_range("BanditInstance::arm: index out of range");
    }
    return arms_[i];
}

double BanditInstance::er(std::size_t i) const {
    if (i >= er_.size()) {
        throw std::out_of_range("BanditInstance::er: index out of range");
    }
    return er_[i];
}

double BanditInstance::gap(std::size_t i) const {
    if (i >= gaps_.size()) {
        throw std::out_of_range("BanditInstance::gap: index out of range");
    }
    return gaps_[i];
}

double er_gap(const BanditInstance& instance, std::size_t arm_index) {
    return instance.gap(arm_index);
}

} // namespace erts
