#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <tuple>
#include <utility>

namespace rotwell {

// ln Gamma(x) for x > 0, Lanczos approximation (g = 7, 9 terms).
// Relative error is a few ULP over the positive axis; x < 0.5 goes through
// the reflection formula so the rational sum stays on its accurate half-line.
inline double ln_gamma(double x) {
    if (!(x > 0.0)) throw std::domain_error("ln_gamma: requires x > 0");
    static constexpr double lanczos[9] = {
        0.99999999999980993,
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7,
    };
    if (x < 0.5) return std::log(M_PI / std::sin(M_PI * x)) - ln_gamma(1.0 - x);
    const double z = x - 1.0;
    double s = lanczos[0];
    for (int i = 1; i < 9; ++i) s += lanczos[i] / (z + i);
    const double t = z + 7.5;
    return 0.5 * std::log(2.0 * M_PI) + (z + 0.5) * std::log(t) - t + std::log(s);
}

namespace detail {

// Ascending series sum_{m>=0} (x/2)^{2m+n} / (m! (m+n)!), all terms positive.
inline double bessel_i_series(int n, double x) {
    const double q = 0.25 * x * x;
    double term = std::exp(n * std::log(0.5 * x) - ln_gamma(n + 1.0));
    double sum = term;
    for (int m = 1; m < 500; ++m) {
        term *= q / (static_cast<double>(m) * (m + n));
        sum += term;
        if (term <= 1e-17 * sum) break;
    }
    return sum;
}

// ln I_n(x) from the large-argument expansion
//   I_n(x) ~ e^x / sqrt(2 pi x) * sum_k t_k,  t_k = -t_{k-1} (mu - (2k-1)^2)/(8 k x),
// mu = 4 n^2, truncated at the smallest term.
inline double bessel_i_asymptotic_log(int n, double x) {
    const double mu = 4.0 * static_cast<double>(n) * n;
    double term = 1.0, sum = 1.0;
    double prev_mag = 1.0;
    for (int k = 1; k < 80; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= -(mu - odd * odd) / (8.0 * k * x);
        const double mag = std::abs(term);
        // terms grow while (2k-1)^2 < mu; truncate at the smallest term past that
        if (k > n && mag > prev_mag) break;
        sum += term;
        prev_mag = mag;
        if (mag <= 1e-17 * std::abs(sum)) break;
    }
    return x - 0.5 * std::log(2.0 * M_PI * x) + std::log(sum);
}

inline constexpr double kBesselISwitch = 30.0;

// K_0 and K_1 for 0 < x <= 2 by the convergent series with logarithmic terms:
//   K_0 = -(ln(x/2) + g) I_0 + sum_{k>=1} H_k q^k / (k!)^2
//   K_1 = 1/x + ln(x/2) I_1 - (x/4) sum_{k>=0} (H_k + H_{k+1} - 2 g) q^k / (k!(k+1)!)
// with q = x^2/4, H_k the harmonic numbers and g the Euler constant.
inline std::pair<double, double> bessel_k01_series(double x) {
    constexpr double euler_gamma = 0.57721566490153286060651209;
    const double q = 0.25 * x * x;
    const double lnxh = std::log(0.5 * x);

    double i0 = 1.0, k0_sum = 0.0;
    double term = 1.0, harmonic = 0.0;
    for (int k = 1; k < 60; ++k) {
        term *= q / (static_cast<double>(k) * k);
        harmonic += 1.0 / k;
        i0 += term;
        k0_sum += term * harmonic;
        if (term * (harmonic + 1.0) <= 1e-18 * i0) break;
    }
    const double k0 = -(lnxh + euler_gamma) * i0 + k0_sum;

    double i1_sum = 1.0, k1_sum = 1.0 - 2.0 * euler_gamma;  // k = 0 terms
    term = 1.0;
    harmonic = 0.0;
    for (int k = 1; k < 60; ++k) {
        term *= q / (static_cast<double>(k) * (k + 1.0));
        harmonic += 1.0 / k;
        const double psi_pair = 2.0 * harmonic + 1.0 / (k + 1.0) - 2.0 * euler_gamma;
        i1_sum += term;
        k1_sum += term * psi_pair;
        if (term * (psi_pair + 1.0) <= 1e-18 * i1_sum) break;
    }
    const double i1 = 0.5 * x * i1_sum;
    const double k1 = 1.0 / x + lnxh * i1 - 0.25 * x * k1_sum;
    return {k0, k1};
}

// e^x K_0(x) and e^x K_1(x) for x >= 2 by Steed's continued fraction
// (Thompson-Barnett CF2 at order mu = 0); this is the resummed form of the
// divergent e^{-x} sqrt(pi/2x) expansion and converges to machine precision.
inline std::pair<double, double> bessel_k01_scaled_cf(double x) {
    constexpr double eps = 1e-16;
    const double a1 = 0.25;  // 1/4 - mu^2 with mu = 0
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double h = d, delh = d;
    double q1 = 0.0, q2 = 1.0;
    double a = -a1;
    double q = a1, c = a1;
    double s = 1.0 + q * delh;
    bool converged = false;
    for (int i = 2; i < 40000; ++i) {
        a -= 2.0 * (i - 1);
        c = -a * c / i;
        const double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const double dels = q * delh;
        s += dels;
        if (std::abs(dels / s) < eps) {
            converged = true;
            break;
        }
    }
    if (!converged) throw std::runtime_error("bessel_k: continued fraction failed to converge");
    h *= a1;
    const double k0_scaled = std::sqrt(M_PI / (2.0 * x)) / s;
    const double k1_scaled = k0_scaled * (x + 0.5 - h) / x;
    return {k0_scaled, k1_scaled};
}

inline constexpr double kBesselKSwitch = 2.0;

}  // namespace detail

inline double bessel_i(int order, double x) {
    if (order < 0) throw std::domain_error("bessel_i: requires order >= 0");
    if (x < 0.0) throw std::domain_error("bessel_i: requires x >= 0");
    if (x == 0.0) return order == 0 ? 1.0 : 0.0;
    if (x < detail::kBesselISwitch) return detail::bessel_i_series(order, x);
    return std::exp(detail::bessel_i_asymptotic_log(order, x));
}

// ln I_order(x); stays in range well past x = 1e4 where the plain value overflows.
inline double bessel_i_log(int order, double x) {
    if (order < 0) throw std::domain_error("bessel_i_log: requires order >= 0");
    if (x < 0.0) throw std::domain_error("bessel_i_log: requires x >= 0");
    if (x == 0.0)
        return order == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
    if (x < detail::kBesselISwitch) return std::log(detail::bessel_i_series(order, x));
    return detail::bessel_i_asymptotic_log(order, x);
}

// e^x K_order(x); the upward recurrence K_{n+1} = K_{n-1} + (2n/x) K_n is
// stable for K, so only orders 0 and 1 need a kernel evaluation.
inline double bessel_k_scaled(int order, double x) {
    if (order < 0) throw std::domain_error("bessel_k: requires order >= 0");
    if (!(x > 0.0)) throw std::domain_error("bessel_k: requires x > 0");
    double k0, k1;
    if (x < detail::kBesselKSwitch) {
        const auto [p0, p1] = detail::bessel_k01_series(x);
        const double ex = std::exp(x);
        k0 = p0 * ex;
        k1 = p1 * ex;
    } else {
        std::tie(k0, k1) = detail::bessel_k01_scaled_cf(x);
    }
    if (order == 0) return k0;
    double below = k0, current = k1;
    for (int n = 1; n < order; ++n) {
        const double next = below + (2.0 * n / x) * current;
        below = current;
        current = next;
    }
    return current;
}

inline double bessel_k(int order, double x) {
    return std::exp(-x) * bessel_k_scaled(order, x);
}

inline double bessel_k_log(int order, double x) {
    return std::log(bessel_k_scaled(order, x)) - x;
}

}  // namespace rotwell
