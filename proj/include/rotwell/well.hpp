#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace rotwell {

// Geometry of the well: the interval is [-L/2, L/2] and every represented
// state vanishes at the walls, so the potential itself is never evaluated.
struct WellConfig {
    double L = M_PI;
    double tol = 1e-10;  // default relative tolerance handed to quadrature oracles
};

// The physical index j >= 1 labels Phi_j / E_j; the shifted index k >= 0
// labels psi_k = Phi_{k+1} with spectrum starting at 0. Conversions are kept
// explicit because both conventions are in constant use.
constexpr int shifted_index(int j) { return j - 1; }
constexpr int physical_index(int k) { return k + 1; }

namespace detail {

inline void require_inside(double x, const WellConfig& cfg, const char* who) {
    if (std::abs(x) > 0.5 * cfg.L * (1.0 + 8.0 * 1e-16))
        throw std::domain_error(std::string(who) + ": x outside [-L/2, L/2]");
}

inline void require_physical(int j, const char* who) {
    if (j < 1) throw std::invalid_argument(std::string(who) + ": requires j >= 1");
}

}  // namespace detail

// Phi_j(x): sqrt(2/L) sin(j pi x / L) for even j, sqrt(2/L) cos(j pi x / L) for odd j.
inline double eigenfunction(int j, double x, const WellConfig& cfg = {}) {
    detail::require_physical(j, "eigenfunction");
    detail::require_inside(x, cfg, "eigenfunction");
    const double a = j * M_PI / cfg.L;
    const double scale = std::sqrt(2.0 / cfg.L);
    return (j % 2 == 0) ? scale * std::sin(a * x) : scale * std::cos(a * x);
}

// Closed-form second derivative of Phi_j, used by the eigen-relation oracles.
inline double eigenfunction_xx(int j, double x, const WellConfig& cfg = {}) {
    detail::require_physical(j, "eigenfunction_xx");
    detail::require_inside(x, cfg, "eigenfunction_xx");
    const double a = j * M_PI / cfg.L;
    const double scale = std::sqrt(2.0 / cfg.L);
    const double value = (j % 2 == 0) ? std::sin(a * x) : std::cos(a * x);
    return -a * a * scale * value;
}

// E_j = (j pi / L)^2
inline double energy(int j, const WellConfig& cfg = {}) {
    detail::require_physical(j, "energy");
    const double w = j * M_PI / cfg.L;
    return w * w;
}

// Shifted spectrum for the coherent-state construction:
// curly_E_k = E_{k+1} - E_1 = (pi/L)^2 k (k+2), strictly increasing from 0.
inline double shifted_energy(int k, const WellConfig& cfg = {}) {
    if (k < 0) throw std::invalid_argument("shifted_energy: requires k >= 0");
    const double e1 = (M_PI / cfg.L) * (M_PI / cfg.L);
    return e1 * k * (k + 2.0);
}

// ln rho_n with rho_0 = 1 and rho_n = curly_E_1 ... curly_E_n. rho_n grows
// like (n!)^2 and overflows double precision near n = 85, so only the log
// is ever materialized.
inline double log_rho(int n, const WellConfig& cfg = {}) {
    if (n < 0) throw std::invalid_argument("log_rho: requires n >= 0");
    double acc = 0.0;
    for (int k = 1; k <= n; ++k) acc += std::log(shifted_energy(k, cfg));
    return acc;
}

}  // namespace rotwell
