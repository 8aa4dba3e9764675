#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <vector>

#include "quadrature.hpp"
#include "rotation.hpp"
#include "special_functions.hpp"
#include "spectral.hpp"
#include "well.hpp"

namespace rotwell {

// Gazeau-Klauder parameters: action J >= 0, angle gamma, rotation frame,
// and the truncation order (number of retained psi_n).
struct GKState {
    double J = 0.0;
    double gamma = 0.0;
    double frame = 0.0;
    int truncation = 1;
    WellConfig cfg{};
};

// Smallest N whose coefficient magnitude J^{N/2}/sqrt(rho_N) drops below
// 1e-16 of the running norm; sqrt(rho_n) grows like n!, so this is reached
// quickly for every finite J. Hard cap 400.
inline int gk_truncation(double J, const WellConfig& cfg = {}) {
    if (J < 0.0) throw std::domain_error("gk_truncation: requires J >= 0");
    if (J == 0.0) return 1;
    constexpr int cap = 400;
    const double ln_j = std::log(J);
    double ln_rho = 0.0;
    double norm_sq = 0.0;
    for (int n = 0; n < cap; ++n) {
        if (n > 0) ln_rho += std::log(shifted_energy(n, cfg));
        const double magnitude = std::exp(0.5 * n * ln_j - 0.5 * ln_rho);
        if (n > 0 && magnitude < 1e-16 * std::sqrt(norm_sq)) return n;
        norm_sq += magnitude * magnitude;
    }
    return cap;
}

inline GKState make_gk_state(double J, double gamma, double frame = 0.0,
                             const WellConfig& cfg = {}) {
    return {J, gamma, frame, gk_truncation(J, cfg), cfg};
}

// N(J) = (sum_n J^n / rho_n)^{-1/2} by direct summation, log-scaled so that
// neither J^n nor rho_n is ever materialized. The sum is extended until the
// last term falls below 1e-16 of the partial sum. This is the ground truth
// the Bessel closed form is checked against.
inline double normalization_series(double J, const WellConfig& cfg = {}) {
    if (J < 0.0) throw std::domain_error("normalization_series: requires J >= 0");
    if (J == 0.0) return 1.0;
    const double ln_j = std::log(J);
    double peak = 0.0;    // running max of the log terms; n = 0 contributes 0
    double scaled = 1.0;  // sum of exp(term - peak)
    double ln_rho = 0.0;
    for (int n = 1; n < 500; ++n) {
        ln_rho += std::log(shifted_energy(n, cfg));
        const double lt = n * ln_j - ln_rho;
        if (lt > peak) {
            scaled = scaled * std::exp(peak - lt) + 1.0;
            peak = lt;
        } else {
            const double t = std::exp(lt - peak);
            scaled += t;
            if (t < 1e-17 * scaled) break;
        }
    }
    return std::exp(-0.5 * (peak + std::log(scaled)));
}

// Bessel closed form of the same sum:
//   sum_n J^n / rho_n = (2 pi^2 / (J L^2)) I_2(2 L sqrt(J) / pi).
// The argument/prefactor convention is the one that matches the series
// oracle to 1e-10 relative across J in [1e-3, 1e3].
inline double normalization_closed(double J, const WellConfig& cfg = {}) {
    if (!(J > 0.0))
        throw std::domain_error("normalization_closed: requires J > 0; the series gives N(0) = 1");
    const double arg = 2.0 * cfg.L * std::sqrt(J) / M_PI;
    const double ln_sum =
        std::log(2.0 * M_PI * M_PI / (J * cfg.L * cfg.L)) + bessel_i_log(2, arg);
    return std::exp(-0.5 * ln_sum);
}

// c_n = N(J) J^{n/2} e^{-i curly_E_n gamma} / sqrt(rho_n) for n < truncation.
inline CoefficientVector gk_coefficients(const GKState& state) {
    const int n_terms = state.truncation;
    if (n_terms < 1) throw std::invalid_argument("gk_coefficients: requires truncation >= 1");
    std::vector<cplx> c(static_cast<std::size_t>(n_terms), cplx{});
    if (state.J == 0.0) {
        c[0] = 1.0;
        return {state.frame, std::move(c)};
    }
    const double norm = normalization_series(state.J, state.cfg);
    const double ln_j = std::log(state.J);
    double ln_rho = 0.0;
    for (int n = 0; n < n_terms; ++n) {
        if (n > 0) ln_rho += std::log(shifted_energy(n, state.cfg));
        const double magnitude = norm * std::exp(0.5 * n * ln_j - 0.5 * ln_rho);
        c[n] = std::polar(magnitude, -shifted_energy(n, state.cfg) * state.gamma);
    }
    return {state.frame, std::move(c)};
}

struct StateValue {
    cplx value;
    double truncation_bound;  // dropped-tail estimate including basis growth
};

// Psi^(frame)(J, gamma; x) by reconstruction of the truncated expansion. The
// reported bound is the first dropped coefficient magnitude times the
// rotated-basis growth envelope e^{(N+1) pi |sin frame| / 2}.
inline StateValue evaluate_state(const GKState& state, double x) {
    const CoefficientVector c = gk_coefficients(state);
    const cplx value = reconstruct(c, x, state.cfg);
    const int n_next = c.size();
    double magnitude_next = 0.0;
    if (state.J > 0.0) {
        magnitude_next = normalization_series(state.J, state.cfg) *
                         std::exp(0.5 * n_next * std::log(state.J) -
                                  0.5 * log_rho(n_next, state.cfg));
    }
    const double growth =
        std::exp(0.5 * (n_next + 1) * M_PI * std::abs(std::sin(state.frame)));
    const double bound = 2.0 * magnitude_next * std::sqrt(2.0 / state.cfg.L) * growth;
    return {value, bound};
}

// ln rho(J) for the moment-problem density
//   rho(J) = (L/pi)^4 J K_2(2 L sqrt(J) / pi),
// the convention whose moments reproduce rho_n (the printed variant with
// argument L sqrt(J)/pi and prefactor (L/2pi)^4 yields 4^n rho_n instead).
// Log-scaled so the K_2 decay never underflows before J^n is applied.
inline double measure_density_log(double J, const WellConfig& cfg = {}) {
    if (!(J > 0.0)) throw std::domain_error("measure_density: requires J > 0");
    const double arg = 2.0 * cfg.L * std::sqrt(J) / M_PI;
    return 4.0 * std::log(cfg.L / M_PI) + std::log(J) + bessel_k_log(2, arg);
}

inline double measure_density(double J, const WellConfig& cfg = {}) {
    return std::exp(measure_density_log(J, cfg));
}

// The decay rate of 2u J^n rho(J)|_{J=u^2} in u, set by the K_2 argument.
inline double measure_decay_rate(const WellConfig& cfg = {}) { return 2.0 * cfg.L / M_PI; }

struct MomentReport {
    int n = 0;
    double quadrature_value = 0.0;
    double target = 0.0;  // rho_n
    double relative_error = 0.0;
    double tail_bound = 0.0;
};

// integral_0^inf J^n rho(J) dJ against rho_n, compared in log space.
// Tail-bound failures are recorded in the report, not thrown.
inline std::vector<MomentReport> verify_moments(int n_max, const WellConfig& cfg = {},
                                                const QuadratureRule& rule = default_rule(),
                                                double tol = 1e-8) {
    if (n_max < 0) throw std::invalid_argument("verify_moments: requires n_max >= 0");
    std::vector<MomentReport> reports;
    reports.reserve(static_cast<std::size_t>(n_max) + 1);
    double ln_rho = 0.0;
    for (int n = 0; n <= n_max; ++n) {
        if (n > 0) ln_rho += std::log(shifted_energy(n, cfg));
        auto integrand = [&](double J) {
            return std::exp(n * std::log(J) + measure_density_log(J, cfg));
        };
        const SemiInfinitePolicy policy{measure_decay_rate(cfg), tol, 0.0};
        const SemiInfiniteResult r =
            integrate_semiinfinite_moment(integrand, policy, rule, /*require_tail=*/false);
        MomentReport rep;
        rep.n = n;
        rep.quadrature_value = r.value;
        rep.target = std::exp(ln_rho);
        rep.relative_error = r.value > 0.0
                                 ? std::abs(std::expm1(std::log(r.value) - ln_rho))
                                 : std::numeric_limits<double>::infinity();
        rep.tail_bound = r.tail_bound;
        reports.push_back(rep);
    }
    return reports;
}

// Left side of the resolution of identity, after the Bohr mean in gamma is
// taken analytically: the cross terms carry e^{i(curly_E_n - curly_E_m)gamma}
// and average to zero because the shifted spectrum is strictly increasing,
// leaving sum_n conj(c_n(f)) c_n(g) (1/rho_n) integral J^n rho(J) dJ.
inline cplx resolution_check(const CoefficientVector& f, const CoefficientVector& g,
                             const WellConfig& cfg = {},
                             const QuadratureRule& rule = default_rule(), double tol = 1e-8) {
    require_same_frame(f, g, "resolution_check");
    const int n_terms = std::max(f.size(), g.size());
    cplx acc{};
    double ln_rho = 0.0;
    for (int n = 0; n < n_terms; ++n) {
        if (n > 0) ln_rho += std::log(shifted_energy(n, cfg));
        const cplx weight = std::conj(f.coeff(n)) * g.coeff(n);
        if (weight == cplx{}) continue;
        const double ln_rho_n = ln_rho;
        auto integrand = [&](double J) {
            return std::exp(n * std::log(J) + measure_density_log(J, cfg) - ln_rho_n);
        };
        const SemiInfinitePolicy policy{measure_decay_rate(cfg), tol, 0.0};
        acc += weight * integrate_semiinfinite_moment(integrand, policy, rule).value;
    }
    return acc;
}

// a_gamma psi_n = sqrt(curly_E_n) e^{i(curly_E_n - curly_E_{n-1}) gamma} psi_{n-1},
// with a_gamma psi_0 = 0; on GK states this reduces to multiplication by sqrt(J).
inline CoefficientVector lowering_apply(const CoefficientVector& f, double gamma,
                                        const WellConfig& cfg = {}) {
    if (f.size() <= 1) return {f.frame(), {}};
    std::vector<cplx> c(static_cast<std::size_t>(f.size() - 1));
    for (int k = 0; k < f.size() - 1; ++k) {
        const double e_up = shifted_energy(k + 1, cfg);
        const double e_dn = shifted_energy(k, cfg);
        c[k] = f.coeff(k + 1) * std::sqrt(e_up) * std::polar(1.0, (e_up - e_dn) * gamma);
    }
    return {f.frame(), std::move(c)};
}

// The adjoint of the lowering operator in H_phi: the unique coefficient map
// with <a f, g>_phi = <f, a^dag g>_phi for all finite f, g.
inline CoefficientVector raising_apply(const CoefficientVector& f, double gamma,
                                       const WellConfig& cfg = {}) {
    std::vector<cplx> c(static_cast<std::size_t>(f.size()) + 1, cplx{});
    for (int k = 1; k <= f.size(); ++k) {
        const double e_up = shifted_energy(k, cfg);
        const double e_dn = shifted_energy(k - 1, cfg);
        c[k] = f.coeff(k - 1) * std::sqrt(e_up) * std::polar(1.0, -(e_up - e_dn) * gamma);
    }
    return {f.frame(), std::move(c)};
}

// <psi_n, [a, a^dag] psi_n>_phi = curly_E_{n+1} - curly_E_n = (pi/L)^2 (2n+3):
// never 1, so the pair is not canonical.
inline double commutator_diagonal(int n, const WellConfig& cfg = {}) {
    if (n < 0) throw std::invalid_argument("commutator_diagonal: requires n >= 0");
    const double e1 = (M_PI / cfg.L) * (M_PI / cfg.L);
    return e1 * (2.0 * n + 3.0);
}

// <Psi, h Psi>_phi; the telescoping curly_E_n / rho_n = 1/rho_{n-1} makes it
// exactly J in the untruncated series.
inline double action_expectation(const GKState& state) {
    const CoefficientVector c = gk_coefficients(state);
    const auto h = SpectralOperator::shifted_hamiltonian(state.cfg);
    return inner_phi(c, h.apply(c)).real();
}

// Coefficientwise gap between e^{-i h t} applied to Psi(J, gamma) and
// Psi(J, gamma + t); zero up to rounding by temporal stability.
inline double stability_check(const GKState& state, double t) {
    const CoefficientVector evolved =
        SpectralOperator::evolution_shifted(t, state.cfg).apply(gk_coefficients(state));
    GKState shifted = state;
    shifted.gamma += t;
    const CoefficientVector target = gk_coefficients(shifted);
    double worst = 0.0;
    const int n_terms = std::max(evolved.size(), target.size());
    for (int k = 0; k < n_terms; ++k)
        worst = std::max(worst, std::abs(evolved.coeff(k) - target.coeff(k)));
    return worst;
}

}  // namespace rotwell
