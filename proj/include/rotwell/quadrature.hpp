#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <type_traits>
#include <vector>

namespace rotwell {

struct QuadratureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TailBoundError : QuadratureError {
    using QuadratureError::QuadratureError;
};

// Gauss-Legendre rule on (-1,1). Immutable after construction; the same rule
// is applied to every panel of a composite integral.
struct QuadratureRule {
    int order = 16;
    int panels = 4;
    std::vector<double> nodes;    // strictly increasing, symmetric about 0
    std::vector<double> weights;  // positive, sum to 2
};

inline QuadratureRule make_rule(int order, int panels = 1) {
    if (order < 2) throw std::invalid_argument("make_rule: order must be >= 2");
    if (panels < 1) throw std::invalid_argument("make_rule: panels must be >= 1");
    QuadratureRule rule;
    rule.order = order;
    rule.panels = panels;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    // Newton iteration on P_order; roots come in +/- pairs, so only half are solved.
    const int half = (order + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (order + 0.5));
        double deriv = 0.0;
        for (int iter = 0; iter < 60; ++iter) {
            double p = 1.0, pm = 0.0;
            for (int k = 0; k < order; ++k) {
                const double pmm = pm;
                pm = p;
                p = ((2.0 * k + 1.0) * x * pm - k * pmm) / (k + 1.0);
            }
            deriv = order * (x * p - pm) / (x * x - 1.0);
            const double step = p / deriv;
            x -= step;
            if (std::abs(step) < 1e-15) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[order - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * deriv * deriv);
        rule.weights[i] = w;
        rule.weights[order - 1 - i] = w;
    }
    return rule;
}

// Single composite pass over [a,b] with a fixed panel count.
template <typename F>
auto integrate_composite(F&& f, double a, double b, const QuadratureRule& rule, int panels)
    -> std::invoke_result_t<F&, double> {
    using value_type = std::invoke_result_t<F&, double>;
    value_type total{};
    const double width = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (p + 0.5) * width;
        const double half = 0.5 * width;
        value_type acc{};
        for (int i = 0; i < rule.order; ++i)
            acc += rule.weights[i] * f(mid + half * rule.nodes[i]);
        total += half * acc;
    }
    return total;
}

template <typename F>
auto integrate_composite(F&& f, double a, double b, const QuadratureRule& rule)
    -> std::invoke_result_t<F&, double> {
    return integrate_composite(f, a, b, rule, rule.panels);
}

// Panel-doubling acceptance: the value is returned only after one doubling
// moves it by less than rel_tol (relative to max(1,|I|)).
template <typename F>
auto integrate_finite(F&& f, double a, double b, const QuadratureRule& rule,
                      double rel_tol = 1e-10, int panel_cap = 1 << 15)
    -> std::invoke_result_t<F&, double> {
    if (!(a < b)) throw std::invalid_argument("integrate_finite: requires a < b");
    int panels = rule.panels;
    auto previous = integrate_composite(f, a, b, rule, panels);
    while (panels <= panel_cap) {
        panels *= 2;
        auto current = integrate_composite(f, a, b, rule, panels);
        const double scale = std::max(1.0, std::abs(current));
        if (std::abs(current - previous) <= rel_tol * scale) return current;
        previous = current;
    }
    throw QuadratureError("integrate_finite: panel doubling did not converge at the panel cap");
}

// Policy for integrals over (0,inf) under the fixed substitution J = u^2.
// decay_rate is the caller's exponential bound rate b with |2u g(u^2)| <= M e^{-b u}
// for u beyond the integrand's peak; it controls the cutoff and the tail estimate.
struct SemiInfinitePolicy {
    double decay_rate = 1.0;
    double tolerance = 1e-10;
    double u_max = 0.0;  // 0: grown automatically up to the hard cap b*u = 700
};

struct SemiInfiniteResult {
    double value = 0.0;
    double tail_bound = 0.0;  // estimated truncated mass relative to |value|
    double u_max = 0.0;
};

template <typename G>
SemiInfiniteResult integrate_semiinfinite_moment(G&& g, const SemiInfinitePolicy& policy,
                                                 const QuadratureRule& rule,
                                                 bool require_tail = true) {
    const double b = policy.decay_rate;
    if (!(b > 0.0)) throw std::invalid_argument("integrate_semiinfinite_moment: decay_rate must be > 0");
    const double u_cap = 700.0 / b;  // keeps e^{-b u} representable with margin
    const bool fixed_cutoff = policy.u_max > 0.0;
    double u_max = fixed_cutoff ? std::min(policy.u_max, u_cap) : std::min(30.0 / b, u_cap);
    auto h = [&](double u) { return 2.0 * u * g(u * u); };

    for (;;) {
        // If the integrand is still rising at the cutoff the domain is too short.
        const double edge = std::abs(h(u_max));
        const bool decaying = edge <= std::abs(h(0.95 * u_max));
        double value = 0.0, tail_rel = std::numeric_limits<double>::infinity();
        if (decaying) {
            const int base_panels = std::max(rule.panels, static_cast<int>(std::ceil(u_max / 4.0)));
            QuadratureRule seeded = rule;
            seeded.panels = base_panels;
            value = integrate_finite(h, 0.0, u_max, seeded, policy.tolerance);
            const double tail = 2.0 * edge / b;  // exponential-tail estimate with safety factor
            tail_rel = tail / std::max(std::abs(value), std::numeric_limits<double>::min());
            if (tail_rel <= policy.tolerance) return {value, tail_rel, u_max};
        }
        if (fixed_cutoff || u_max >= u_cap) {
            if (require_tail)
                throw TailBoundError("integrate_semiinfinite_moment: cutoff cannot meet the tail tolerance");
            return {value, tail_rel, u_max};
        }
        u_max = std::min(1.5 * u_max, u_cap);
    }
}

}  // namespace rotwell
