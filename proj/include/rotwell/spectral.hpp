#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>

#include "rotation.hpp"

namespace rotwell {

// H_phi = T_phi H_0 T_{-phi} acts diagonally on coefficient vectors, so the
// operator is just a multiplier on the shifted index. The differential form
// K_phi = -e^{-2 i phi} d^2/dx^2 appears only in the residual oracles below.
class SpectralOperator {
public:
    enum class Kind {
        hamiltonian,          // E_{k+1}
        shifted_hamiltonian,  // curly_E_k  (h_phi = H_phi - E_1)
        evolution,            // e^{-i E_{k+1} t}
        evolution_shifted,    // e^{-i curly_E_k t}
    };

    static SpectralOperator hamiltonian(const WellConfig& cfg = {}) {
        return {Kind::hamiltonian, 0.0, cfg};
    }
    static SpectralOperator shifted_hamiltonian(const WellConfig& cfg = {}) {
        return {Kind::shifted_hamiltonian, 0.0, cfg};
    }
    static SpectralOperator evolution(double t, const WellConfig& cfg = {}) {
        return {Kind::evolution, t, cfg};
    }
    static SpectralOperator evolution_shifted(double t, const WellConfig& cfg = {}) {
        return {Kind::evolution_shifted, t, cfg};
    }

    Kind kind() const { return kind_; }
    double time() const { return t_; }

    // Multiplier on psi_k = Phi_{k+1}; real for the Hamiltonians, unimodular
    // for the evolutions.
    cplx multiplier(int k) const {
        switch (kind_) {
            case Kind::hamiltonian: return energy(physical_index(k), cfg_);
            case Kind::shifted_hamiltonian: return shifted_energy(k, cfg_);
            case Kind::evolution: return std::polar(1.0, -energy(physical_index(k), cfg_) * t_);
            case Kind::evolution_shifted: return std::polar(1.0, -shifted_energy(k, cfg_) * t_);
        }
        throw std::logic_error("SpectralOperator: unknown kind");
    }

    // Finite vectors are always in the domain; the frame is untouched.
    CoefficientVector apply(const CoefficientVector& f) const {
        std::vector<cplx> c(f.coeffs());
        for (int k = 0; k < static_cast<int>(c.size()); ++k) c[k] *= multiplier(k);
        return {f.frame(), std::move(c)};
    }

private:
    SpectralOperator(Kind kind, double t, const WellConfig& cfg) : kind_(kind), t_(t), cfg_(cfg) {}

    Kind kind_;
    double t_;
    WellConfig cfg_;
};

inline CoefficientVector apply(const SpectralOperator& op, const CoefficientVector& f) {
    return op.apply(f);
}

// Finite expansions reduce the domain sum to a finite one.
inline bool in_domain(const CoefficientVector&, const WellConfig& = {}) { return true; }

// Truncated Cauchy probe of sum_k |c_k E_k|^2 for a synthetic coefficient
// tail |c_k| (shifted index). Membership in D(H_phi) is undecidable from
// finitely many coefficients; this checks whether the second half of the
// partial sums has settled to within tol of the total.
inline bool in_domain(const std::function<double(int)>& coeff_magnitude, int cutoff, double tol,
                      const WellConfig& cfg = {}) {
    if (cutoff < 2) throw std::invalid_argument("in_domain: requires cutoff >= 2");
    double total = 0.0, at_half = 0.0;
    for (int k = 0; k < cutoff; ++k) {
        const double t = coeff_magnitude(k) * energy(physical_index(k), cfg);
        total += t * t;
        if (k == cutoff / 2 - 1) at_half = total;
    }
    return (total - at_half) <= tol * std::max(1.0, total);
}

// K_phi Phi_j^(phi)(x) - E_j Phi_j^(phi)(x): zero whenever the e^{-2 i phi}
// prefactor of the kinetic operator matches the chain-rule factor of the
// rotated basis. Flipping the sign of the exponent breaks it.
inline cplx kinetic_residual(int j, double phi, double x, const WellConfig& cfg = {}) {
    if (std::abs(x) >= 0.5 * cfg.L)
        throw std::domain_error("kinetic_residual: x must be strictly inside the well");
    const cplx kinetic = -std::polar(1.0, -2.0 * phi) * eval_rotated_xx(j, phi, x, cfg);
    return kinetic - energy(j, cfg) * eval_rotated(j, phi, x, cfg);
}

// <H f, g>_phi - <f, H g>_phi: vanishes because the multipliers are real.
inline cplx symmetry_gap(const CoefficientVector& f, const CoefficientVector& g,
                         const WellConfig& cfg = {}) {
    require_same_frame(f, g, "symmetry_gap");
    const auto h = SpectralOperator::hamiltonian(cfg);
    return inner_phi(h.apply(f), g) - inner_phi(f, h.apply(g));
}

// Quadrature value of <K_{-phi} f, g> - <f, K_phi g> in H_0 for finite
// frame-0 expansions (which vanish at the walls, so the double integration
// by parts carries no boundary terms).
inline cplx kinetic_adjoint_gap(const CoefficientVector& f, const CoefficientVector& g, double phi,
                                const WellConfig& cfg = {},
                                const QuadratureRule& rule = default_rule(),
                                double rel_tol = 1e-11) {
    if (!frames_equal(f.frame(), 0.0) || !frames_equal(g.frame(), 0.0))
        throw std::invalid_argument("kinetic_adjoint_gap: expansions must be in frame 0");
    auto kinetic = [&cfg](const CoefficientVector& v, double angle) {
        return [&v, angle, &cfg](double x) {
            return -std::polar(1.0, -2.0 * angle) * reconstruct_xx(v, x, cfg);
        };
    };
    auto value = [&cfg](const CoefficientVector& v) {
        return [&v, &cfg](double x) { return reconstruct(v, x, cfg); };
    };
    const cplx left = inner_h0(kinetic(f, -phi), value(g), cfg, rule, rel_tol);
    const cplx right = inner_h0(value(f), kinetic(g, phi), cfg, rule, rel_tol);
    return left - right;
}

}  // namespace rotwell
