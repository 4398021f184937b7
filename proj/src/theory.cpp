#include "erts/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace erts {

double h(double x) {
    if (!std::isfinite(x) || x <= 0.0) {
        throw std::domain_error("h: argument must be finite and > 0");
    }
    return 0.5 * (x - 1.0 - std::log(x));
}

namespace {

// Bisection on a monotone branch. The bracket is tight (width comparable
// to the endpoints), so iterating until the midpoint collapses reaches
// ulp-level precision on x, well inside the 1e-13 target.
template <typename Pred>
double bisect_collapse(double lo, double hi, Pred root_is_right) {
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        if (root_is_right(mid)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

void check_h_inv_domain(double y, const char* name) {
    if (!std::isfinite(y) || y < 0.0) {
        throw std::domain_error(std::string(name) + ": y must be finite and >= 0");
    }
}

} // namespace

double h_inv_plus(double y) {
    check_h_inv_domain(y, "h_inv_plus");
    if (y == 0.0) {
        return 1.0;
    }
    // expand upward from 2 until h exceeds y; h is increasing on [1, inf)
    double hi = 2.0;
    while (h(hi) < y) {
        hi *= 2.0;
        if (!std::isfinite(hi)) {
            throw std::overflow_error("h_inv_plus: root exceeds double range");
        }
    }
    const double lo = hi == 2.0 ? 1.0 : hi * 0.5;
    return bisect_collapse(lo, hi, [y](double x) { return h(x) < y; });
}

double h_inv_minus(double y) {
    check_h_inv_domain(y, "h_inv_minus");
    if (y == 0.0) {
        return 1.0;
    }
    // expand downward from 1/2 until h exceeds y; h is decreasing on (0, 1]
    double lo = 0.5;
    while (h(lo) < y) {
        lo *= 0.5;
        if (lo < 1e-300) {
            throw std::overflow_error("h_inv_minus: root underflows double range");
        }
    }
    const double hi = lo == 0.5 ? 1.0 : lo * 2.0;
    return bisect_collapse(lo, hi, [y](double x) { return h(x) > y; });
}

namespace {

// Regularized lower incomplete gamma P(a, x) by power series; valid and
// fast for x < a + 1.
double gamma_p_series(double a, double x) {
    double ap = a;
    double term = 1.0 / a;
    double sum = term;
    for (int n = 0; n < 1000; ++n) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::abs(term) < std::abs(sum) * 1e-16) {
            break;
        }
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Regularized upper incomplete gamma Q(a, x) by modified Lentz continued
// fraction; valid and fast for x >= a + 1.
double gamma_q_contfrac(double a, double x) {
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double frac = d;
    for (int i = 1; i <= 1000; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        frac *= delta;
        if (std::abs(delta - 1.0) < 1e-16) {
            break;
        }
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * frac;
}

} // namespace

double gamma_survival(double alpha, double beta, double x) {
    if (!(alpha > 0.0) || !(beta > 0.0)) {
        throw std::domain_error("gamma_survival: alpha and beta must be > 0");
    }
    if (!(x >= 0.0)) {
        throw std::domain_error("gamma_survival: x must be >= 0");
    }
    const double xs = beta * x;
    if (xs == 0.0) {
        return 1.0;
    }
    if (xs < alpha + 1.0) {
        return 1.0 - gamma_p_series(alpha, xs);
    }
    return gamma_q_contfrac(alpha, xs);
}

double gamma_tail_bound(double alpha, double beta, double x) {
    if (!(alpha >= 2.0)) {
        throw std::domain_error("gamma_tail_bound: requires shape alpha >= 2");
    }
    if (!(beta > 0.0)) {
        throw std::domain_error("gamma_tail_bound: requires rate beta > 0");
    }
    if (!(x > alpha / beta)) {
        throw std::domain_error("gamma_tail_bound: requires x > alpha/beta");
    }
    return std::exp(-2.0 * alpha * h(beta * x / alpha));
}

namespace {

void check_suboptimal(const BanditInstance& instance, std::size_t arm_index,
                      const char* name) {
    if (arm_index >= instance.num_arms()) {
        throw std::out_of_range(std::string(name) + ": arm index out of range");
    }
    if (arm_index == instance.optimal_arm()) {
        throw std::domain_error(std::string(name) + ": arm is optimal; defined for suboptimal arms only");
    }
}

double resolve_xi(const XiPolicy& policy, const XiGammaResult& xg, bool* used_fallback) {
    if (!(policy.fixed_xi > 0.0 && policy.fixed_xi < 1.0)) {
        throw std::invalid_argument("XiPolicy: fixed_xi must be in (0, 1)");
    }
    if (policy.mode == XiPolicy::Mode::fixed) {
        *used_fallback = false;
        return policy.fixed_xi;
    }
    if (xg.in_range) {
        *used_fallback = false;
        return xg.value;
    }
    *used_fallback = true;
    return policy.fixed_xi;
}

} // namespace

RConstant r_constant(const BanditInstance& instance, std::size_t arm_index, double xi) {
    check_suboptimal(instance, arm_index, "r_constant");
    if (!(xi > 0.0 && xi < 1.0)) {
        throw std::domain_error("r_constant: xi must be in (0, 1)");
    }
    const double gap = instance.gap(arm_index);
    const double gs2 = instance.gamma() * instance.arm(arm_index).variance;

    RConstant rc;
    rc.mean_term = 2.0 / (xi * xi * gap * gap);
    rc.denominator = gs2 - 2.0 * (1.0 - xi) * gap;
    if (rc.denominator <= 0.0) {
        rc.feasible = false;
        return rc;
    }
    rc.precision_term = 1.0 / h(gs2 / rc.denominator);
    rc.value = std::max(rc.mean_term, rc.precision_term);
    rc.feasible = true;
    return rc;
}

XiGammaResult xi_gamma(const BanditInstance& instance, std::size_t arm_index) {
    check_suboptimal(instance, arm_index, "xi_gamma");
    const double gap = instance.gap(arm_index);
    const double gs2 = instance.gamma() * instance.arm(arm_index).variance;

    XiGammaResult res;
    const double hplus = h_inv_plus(gap * gap / 2.0);
    res.value = 1.0 - (gs2 / (2.0 * gap)) * (1.0 - 1.0 / hplus);
    res.in_range = res.value > 0.0 && res.value < 1.0;

    // With xi = xi_gamma the denominator reduces to gs2 / hplus > 0, so the
    // h-argument stays in domain regardless of the range flag.
    const double denominator = gs2 - 2.0 * (1.0 - res.value) * gap;
    if (denominator > 0.0) {
        res.h_at_arg = h(gs2 / denominator);
        if (res.in_range && res.h_at_arg > 0.0) {
            res.inequality_holds =
                1.0 / res.h_at_arg <= 2.0 / (res.value * res.value * gap * gap);
        }
    } else {
        res.h_at_arg = std::numeric_limits<double>::infinity();
    }
    return res;
}

TheoryReport build_theory_report(const BanditInstance& instance, const XiPolicy& xi_policy) {
    TheoryReport report;
    report.optimal_arm = instance.optimal_arm();
    report.arms.reserve(instance.num_arms());

    for (std::size_t i = 0; i < instance.num_arms(); ++i) {
        ArmTheory at;
        at.arm_index = i;
        at.is_optimal = i == report.optimal_arm;
        at.gap = instance.gap(i);
        if (!at.is_optimal) {
            at.xi_gamma = xi_gamma(instance, i);
            at.xi_used = resolve_xi(xi_policy, at.xi_gamma, &at.used_fallback_xi);
            at.r = r_constant(instance, i, at.xi_used);
            if (at.r.feasible) {
                report.asymptotic_bound += at.r.value * at.gap;
                ++report.feasible_arms;
            }
        }
        report.arms.push_back(at);
    }
    report.all_feasible = report.feasible_arms == instance.num_arms() - 1;
    return report;
}

TheoryReport asymptotic_upper_bound(const BanditInstance& instance, const XiPolicy& xi_policy) {
    TheoryReport report = build_theory_report(instance, xi_policy);
    if (report.feasible_arms == 0) {
        throw std::domain_error(
            "asymptotic_upper_bound: every suboptimal arm is infeasible at the chosen xi");
    }
    return report;
}

double lower_bound(const BanditInstance& instance, const XiPolicy& xi_policy) {
    const TheoryReport report = asymptotic_upper_bound(instance, xi_policy);
    if (!report.all_feasible) {
        throw std::domain_error("lower_bound: an arm is infeasible at the chosen xi");
    }
    return report.asymptotic_bound;
}

WitnessResult lower_bound_witness(const BanditInstance& instance, std::size_t arm_index,
                                  double epsilon, const XiPolicy& xi_policy) {
    check_suboptimal(instance, arm_index, "lower_bound_witness");
    if (!std::isfinite(epsilon) || epsilon <= 0.0) {
        throw std::domain_error("lower_bound_witness: epsilon must be finite and > 0");
    }
    const XiGammaResult xg = xi_gamma(instance, arm_index);
    bool used_fallback = false;
    const double xi = resolve_xi(xi_policy, xg, &used_fallback);
    const RConstant rc = r_constant(instance, arm_index, xi);
    if (!rc.feasible) {
        throw std::domain_error("lower_bound_witness: R_i is infeasible at the chosen xi");
    }

    const ArmSpec& arm = instance.arm(arm_index);
    const double sigma = std::sqrt(arm.variance);
    const double q = std::sqrt(2.0 / rc.value);

    WitnessResult w;
    w.epsilon = epsilon;
    w.r_value = rc.value;
    w.witness = ArmSpec{arm.mean + sigma * q + epsilon, arm.variance};
    w.kl = kl_gaussian(arm, w.witness);
    w.kl_identity =
        1.0 / rc.value + (2.0 * sigma * q + epsilon) * epsilon / (2.0 * arm.variance);
    const double witness_er = er_gaussian(w.witness.mean, w.witness.variance, instance.gamma());
    w.er_shift = witness_er - instance.er(arm_index);
    w.in_alternative_set = witness_er < instance.er(instance.optimal_arm());

    if (std::abs(w.kl - w.kl_identity) > 1e-12 * std::max(1.0, std::abs(w.kl))) {
        throw std::logic_error(
            "lower_bound_witness: KL and its closed-form identity disagree beyond 1e-12");
    }
    return w;
}

} // namespace erts
