#pragma once

#include <cstddef>
#include <vector>

#include "erts/risk.hpp"

namespace erts {

/// h(x) = (x - 1 - log x) / 2 for x > 0. Strictly convex, zero at x = 1.
double h(double x);

/// Inverse branches of h: h_inv_plus(y) is the unique root in [1, inf),
/// h_inv_minus(y) the unique root in (0, 1]. Both round-trip through h
/// within 1e-12 absolute; y = 0 returns 1 exactly.
double h_inv_plus(double y);
double h_inv_minus(double y);

/// Regularized upper incomplete gamma Q(alpha, beta*x) = P(X >= x) for
/// X ~ Gamma(alpha, rate beta). Series/continued-fraction evaluation;
/// used by the validate command to check the tail bound grid.
double gamma_survival(double alpha, double beta, double x);

/// Tail bound for X ~ Gamma(alpha, beta), valid for shape alpha >= 2 and
/// x > alpha/beta:  P(X >= x) <= exp(-2 alpha h(beta x / alpha)).
double gamma_tail_bound(double alpha, double beta, double x);

/// Per-arm constant  R_i = max{ 2 / (xi^2 gap^2),
///                              1 / h(g s2 / (g s2 - 2 (1-xi) gap)) }
/// with g = gamma, s2 = sigma_i^2. When the h-argument denominator
/// g s2 - 2 (1-xi) gap is <= 0 the second term leaves its domain; that is
/// surfaced as feasible = false, never clamped.
struct RConstant {
    bool feasible = false;
    double value = 0.0;          // max of the two terms; meaningful iff feasible
    double mean_term = 0.0;      // 2 / (xi^2 gap^2)
    double precision_term = 0.0; // 1 / h(arg); meaningful iff feasible
    double denominator = 0.0;    // g s2 - 2 (1-xi) gap
};
RConstant r_constant(const BanditInstance& instance, std::size_t arm_index, double xi);

/// The explicit near-optimal weight
///   xi_gamma = 1 - (g s2 / (2 gap)) (1 - 1 / h_inv_plus(gap^2 / 2)).
/// By construction h(g s2 / (g s2 - 2 (1-xi_gamma) gap)) = gap^2 / 2, and
/// when xi_gamma is in (0,1) the precision term of R_i is dominated by the
/// mean term. The raw value is always returned; range and the claimed
/// inequality are reported as flags.
struct XiGammaResult {
    double value = 0.0;
    bool in_range = false;           // value in (0, 1)
    double h_at_arg = 0.0;           // h evaluated at the induced argument
    bool inequality_holds = false;   // 1/h(arg) <= 2/(xi^2 gap^2); only when in_range
};
XiGammaResult xi_gamma(const BanditInstance& instance, std::size_t arm_index);

/// How to pick xi per arm when evaluating bounds.
struct XiPolicy {
    enum class Mode { fixed, xi_gamma };
    Mode mode = Mode::xi_gamma;
    double fixed_xi = 0.9; // the fixed choice, and the fallback when
                           // xi_gamma falls outside (0, 1)

    static XiPolicy fixed(double xi) { return {Mode::fixed, xi}; }
    static XiPolicy adaptive(double fallback_xi = 0.9) {
        return {Mode::xi_gamma, fallback_xi};
    }
};

struct ArmTheory {
    std::size_t arm_index = 0;
    bool is_optimal = false;
    double gap = 0.0;
    XiGammaResult xi_gamma;     // raw xi_gamma diagnostics (suboptimal arms)
    double xi_used = 0.0;
    bool used_fallback_xi = false;
    RConstant r;                // feasibility flag lives here
};

struct TheoryReport {
    std::size_t optimal_arm = 0;
    std::vector<ArmTheory> arms;    // one entry per arm, in arm order
    double asymptotic_bound = 0.0;  // sum of R_i * gap_i over feasible suboptimal arms
    bool all_feasible = false;
    std::size_t feasible_arms = 0;  // count of feasible suboptimal arms
};

/// Fills the report without throwing on infeasibility (flags carry it).
TheoryReport build_theory_report(const BanditInstance& instance, const XiPolicy& xi_policy);

/// Asymptotic upper bound sum R_i * gap_i. Errors when every suboptimal
/// arm is infeasible under the chosen xi.
TheoryReport asymptotic_upper_bound(const BanditInstance& instance, const XiPolicy& xi_policy);

/// Matching lower bound: same sum, bit-for-bit, valid when every
/// suboptimal arm is feasible (infeasibility propagates as an error).
double lower_bound(const BanditInstance& instance, const XiPolicy& xi_policy);

/// Alternative-instance certificate for the lower bound: the arm
/// N(mu_i + sigma_i sqrt(2/R_i) + eps, sigma_i^2), its KL divergence from
/// arm i, and the closed-form identity the KL must satisfy.
struct WitnessResult {
    ArmSpec witness;
    double epsilon = 0.0;
    double r_value = 0.0;          // R_i used in the construction
    double kl = 0.0;               // kl_gaussian(arm i, witness)
    double kl_identity = 0.0;      // 1/R_i + (2 sigma sqrt(2/R_i) + eps) eps / (2 sigma^2)
    double er_shift = 0.0;         // er(witness) - er(arm i) = -(sigma sqrt(2/R_i) + eps)
    bool in_alternative_set = false; // er(witness) < er(optimal arm)
};
WitnessResult lower_bound_witness(const BanditInstance& instance, std::size_t arm_index,
                                  double epsilon, const XiPolicy& xi_policy);

} // namespace erts
