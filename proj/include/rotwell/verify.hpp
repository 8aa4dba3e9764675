#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "coherent.hpp"
#include "quadrature.hpp"
#include "rotation.hpp"
#include "special_functions.hpp"
#include "spectral.hpp"
#include "well.hpp"

namespace rotwell {

struct RunConfig {
    double L = M_PI;
    double phi = 0.3;
    int nmax = 10;
    double tol = 1e-8;
    int quad_order = 16;
    int quad_panels = 8;
    std::string output_format = "json";  // json | csv
    std::string out_path;                // empty: stdout

    WellConfig well() const { return {L, tol}; }
    QuadratureRule rule() const { return make_rule(quad_order, quad_panels); }

    void validate() const {
        if (!(std::isfinite(L) && L > 0.0)) throw std::invalid_argument("config: L must be finite and > 0");
        if (!std::isfinite(phi)) throw std::invalid_argument("config: phi must be finite");
        if (nmax < 0) throw std::invalid_argument("config: nmax must be >= 0");
        if (!(std::isfinite(tol) && tol > 0.0)) throw std::invalid_argument("config: tol must be finite and > 0");
        if (quad_order < 2) throw std::invalid_argument("config: quad-order must be >= 2");
        if (quad_panels < 1) throw std::invalid_argument("config: quad-panels must be >= 1");
        if (output_format != "json" && output_format != "csv")
            throw std::invalid_argument("config: format must be json or csv");
    }
};

// One verified claim: the anchor states the formula being checked, value is
// what was computed, and pass is the verdict at the recorded tolerance.
struct CheckRecord {
    std::string id;
    std::string anchor;
    double value = 0.0;
    double target = 0.0;
    double tol = 0.0;
    bool pass = false;
};

struct SuiteReport {
    std::string name;
    std::vector<CheckRecord> checks;

    bool all_pass() const {
        return std::all_of(checks.begin(), checks.end(),
                           [](const CheckRecord& c) { return c.pass; });
    }
};

struct VerificationReport {
    RunConfig config;
    std::vector<SuiteReport> suites;

    int checks_passed() const {
        int n = 0;
        for (const auto& s : suites)
            for (const auto& c : s.checks) n += c.pass ? 1 : 0;
        return n;
    }
    int checks_failed() const {
        int n = 0;
        for (const auto& s : suites)
            for (const auto& c : s.checks) n += c.pass ? 0 : 1;
        return n;
    }
    bool all_pass() const { return checks_failed() == 0; }
};

namespace detail {

inline CheckRecord check_residual(std::string id, std::string anchor, double value, double tol) {
    CheckRecord r{std::move(id), std::move(anchor), value, 0.0, tol, false};
    r.pass = std::abs(value) <= tol;
    return r;
}

inline CheckRecord check_close(std::string id, std::string anchor, double value, double target,
                               double tol) {
    CheckRecord r{std::move(id), std::move(anchor), value, target, tol, false};
    r.pass = std::abs(value - target) <= tol;
    return r;
}

// pass iff value >= target (negative controls, growth witnesses)
inline CheckRecord check_at_least(std::string id, std::string anchor, double value,
                                  double target) {
    CheckRecord r{std::move(id), std::move(anchor), value, target, 0.0, false};
    r.pass = value >= target;
    return r;
}

inline CoefficientVector random_vector(std::mt19937& rng, int n, double frame) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<cplx> c(static_cast<std::size_t>(n));
    for (auto& v : c) v = cplx(u(rng), u(rng));
    return {frame, std::move(c)};
}

}  // namespace detail

inline SuiteReport run_basis_suite(const RunConfig& rc) {
    const WellConfig cfg = rc.well();
    const QuadratureRule rule = rc.rule();
    SuiteReport suite{"basis", {}};

    double gram_dev = 0.0;
    for (int j = 1; j <= 12; ++j)
        for (int k = j; k <= 12; ++k) {
            const cplx v = inner_h0([&](double x) { return eigenfunction(j, x, cfg); },
                                    [&](double x) { return eigenfunction(k, x, cfg); }, cfg, rule,
                                    rc.tol * 1e-2);
            gram_dev = std::max(gram_dev, std::abs(v - cplx(j == k ? 1.0 : 0.0)));
        }
    suite.checks.push_back(detail::check_residual("basis.orthonormality_gram",
                                                  "<Phi_j,Phi_k> = delta_jk", gram_dev, 1e-10));

    double eig_dev = 0.0;
    for (int j = 1; j <= 8; ++j) {
        const double e = energy(j, cfg);
        for (int p = 1; p <= 20; ++p) {
            const double x = -0.5 * cfg.L + p * cfg.L / 21.0;
            const double lhs = -eigenfunction_xx(j, x, cfg);
            const double rhs = e * eigenfunction(j, x, cfg);
            eig_dev = std::max(eig_dev, std::abs(lhs - rhs) / (e * std::sqrt(2.0 / cfg.L)));
        }
    }
    suite.checks.push_back(detail::check_residual("basis.eigen_relation",
                                                  "-Phi_j'' = E_j Phi_j inside the well",
                                                  eig_dev, 1e-9));

    double wall_dev = 0.0;
    for (int j = 1; j <= 12; ++j)
        wall_dev = std::max({wall_dev, std::abs(eigenfunction(j, 0.5 * cfg.L, cfg)),
                             std::abs(eigenfunction(j, -0.5 * cfg.L, cfg))});
    suite.checks.push_back(
        detail::check_residual("basis.walls_vanish", "Phi_j(+-L/2) = 0", wall_dev, 1e-13));

    // product recurrence vs n! (n+2)!/2 closed form, in log space
    double rho_dev = 0.0;
    for (int n = 0; n <= 30; ++n) {
        const double closed = 2.0 * n * std::log(M_PI / cfg.L) + ln_gamma(n + 1.0) +
                              ln_gamma(n + 3.0) - std::log(2.0);
        rho_dev = std::max(rho_dev,
                           std::abs(log_rho(n, cfg) - closed) / std::max(1.0, std::abs(closed)));
    }
    suite.checks.push_back(detail::check_residual(
        "basis.rho_closed_form", "rho_n = (pi/L)^{2n} n! (n+2)!/2", rho_dev, 1e-12));

    return suite;
}

inline SuiteReport run_rotation_suite(const RunConfig& rc) {
    const WellConfig cfg = rc.well();
    const QuadratureRule rule = rc.rule();
    SuiteReport suite{"rotation", {}};
    std::mt19937 rng(20240521);

    double zero_dev = 0.0;
    for (int j = 1; j <= 8; ++j)
        for (int p = 0; p <= 10; ++p) {
            const double x = -0.5 * cfg.L + p * cfg.L / 10.0;
            zero_dev = std::max(zero_dev,
                                std::abs(eval_rotated(j, 0.0, x, cfg) - eigenfunction(j, x, cfg)));
        }
    suite.checks.push_back(
        detail::check_residual("rotation.phi_zero_reduction", "T_0 Phi_j = Phi_j", zero_dev, 1e-14));

    // trig x hyperbolic split of the complex-argument evaluation
    double split_dev = 0.0;
    for (int j : {2, 3}) {
        const double phi = (rc.phi != 0.0) ? rc.phi : 0.4;
        for (int p = 1; p < 10; ++p) {
            const double x = -0.45 * cfg.L + p * 0.1 * cfg.L;
            const double w = j * M_PI * x / cfg.L;
            const double scale = std::sqrt(2.0 / cfg.L);
            cplx expected;
            if (j % 2 == 0)
                expected = scale * cplx(std::sin(w * std::cos(phi)) * std::cosh(w * std::sin(phi)),
                                        std::cos(w * std::cos(phi)) * std::sinh(w * std::sin(phi)));
            else
                expected = scale * cplx(std::cos(w * std::cos(phi)) * std::cosh(w * std::sin(phi)),
                                        -std::sin(w * std::cos(phi)) * std::sinh(w * std::sin(phi)));
            split_dev = std::max(split_dev, std::abs(eval_rotated(j, phi, x, cfg) - expected));
        }
    }
    suite.checks.push_back(detail::check_residual(
        "rotation.re_im_product_form",
        "Re sin(w e^{i phi}) = sin(w cos phi) cosh(w sin phi), and the cos analogue",
        split_dev, 1e-12));

    // composition law on 50 random tuples, compared pointwise
    std::uniform_real_distribution<double> angle(-0.35, 0.35);
    std::uniform_int_distribution<int> jdist(1, 6);
    std::uniform_real_distribution<double> xdist(-0.5, 0.5);
    double comp_dev = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const double alpha = angle(rng), beta = angle(rng);
        const int j = jdist(rng);
        const double x = xdist(rng) * cfg.L;
        const double a = j * M_PI / cfg.L;
        const cplx two_step = std::polar(1.0, alpha) * (std::polar(1.0, beta) * (a * x));
        const double scale = std::sqrt(2.0 / cfg.L);
        const cplx lhs = (j % 2 == 0) ? scale * std::sin(two_step) : scale * std::cos(two_step);
        const cplx rhs = eval_rotated(j, alpha + beta, x, cfg);
        comp_dev = std::max(comp_dev, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
    }
    suite.checks.push_back(detail::check_residual("rotation.composition_law",
                                                  "T_alpha T_beta = T_{alpha+beta}", comp_dev,
                                                  1e-12));

    const double phi_probe = (std::sin(rc.phi) != 0.0) ? rc.phi : 0.3;
    double norm_gap = 0.0;
    for (int j = 1; j <= 10; ++j) {
        const double closed = norm_sq_h0(j, phi_probe);
        const cplx quad = inner_h0([&](double x) { return eval_rotated(j, phi_probe, x, cfg); },
                                   [&](double x) { return eval_rotated(j, phi_probe, x, cfg); },
                                   cfg, rule, 1e-12);
        norm_gap = std::max(norm_gap, std::abs(quad.real() - closed) / closed);
    }
    suite.checks.push_back(detail::check_residual(
        "rotation.norm_closed_vs_quadrature",
        "||Phi_j^(phi)||^2 = (csc phi sinh(j pi sin phi) -+ sec phi sin(j pi cos phi))/(j pi)",
        norm_gap, 1e-9));

    double limit_dev = 0.0;
    for (int j = 1; j <= 10; ++j)
        limit_dev = std::max(limit_dev, std::abs(norm_sq_h0(j, 1e-9) - 1.0));
    suite.checks.push_back(detail::check_residual(
        "rotation.norm_small_angle_limit", "||Phi_j^(phi)|| -> 1 as phi -> 0", limit_dev, 1e-6));

    double coeff_gram_dev = 0.0;
    for (int k = 0; k < 12; ++k)
        for (int j = 0; j < 12; ++j) {
            const cplx v = inner_phi(CoefficientVector::unit(k, rc.phi),
                                     CoefficientVector::unit(j, rc.phi));
            coeff_gram_dev = std::max(coeff_gram_dev, std::abs(v - cplx(k == j ? 1.0 : 0.0)));
        }
    suite.checks.push_back(detail::check_residual("rotation.coefficient_gram",
                                                  "<Phi_k^(phi),Phi_j^(phi)>_phi = delta_kj",
                                                  coeff_gram_dev, 0.0));

    // the coefficient inner product against its quadrature definition
    double defn_dev = 0.0;
    for (int trial = 0; trial < 6; ++trial) {
        const auto f = detail::random_vector(rng, 6, phi_probe);
        const auto g = detail::random_vector(rng, 6, phi_probe);
        const auto f0 = rotate_frame(f, -phi_probe);
        const auto g0 = rotate_frame(g, -phi_probe);
        const cplx quad = inner_h0([&](double x) { return reconstruct(f0, x, cfg); },
                                   [&](double x) { return reconstruct(g0, x, cfg); }, cfg, rule,
                                   1e-12);
        defn_dev = std::max(defn_dev, std::abs(inner_phi(f, g) - quad));
    }
    suite.checks.push_back(detail::check_residual(
        "rotation.inner_phi_vs_quadrature", "<f,g>_phi = <T_{-phi} f, T_{-phi} g>", defn_dev, 1e-9));

    double unitarity_dev = 0.0;
    for (int trial = 0; trial < 6; ++trial) {
        const auto f = detail::random_vector(rng, 8, 0.0);
        unitarity_dev =
            std::max(unitarity_dev, std::abs(norm_phi(rotate_frame(f, phi_probe)) - norm_phi(f)));
    }
    suite.checks.push_back(detail::check_residual("rotation.unitarity_coefficients",
                                                  "||T_phi f||_phi = ||f||_0", unitarity_dev, 0.0));

    const cplx quad_24 = cross_overlap(2, 4, 0.4, cfg, rule, 1e-12);
    const cplx closed_24 = cross_overlap_closed_24(0.4);
    suite.checks.push_back(detail::check_residual(
        "rotation.cross_overlap_closed",
        "<Phi_2^(phi),Phi_4^(-phi)> = (4 e^{i phi}/3 pi) sin^3(pi e^{-i phi})",
        std::abs(quad_24 - closed_24), 1e-9));
    suite.checks.push_back(detail::check_at_least(
        "rotation.cross_overlap_nonzero",
        "the families at +phi and -phi are not biorthogonal", std::abs(quad_24), 1e-3));
    suite.checks.push_back(detail::check_residual(
        "rotation.cross_overlap_unrotated", "the overlap vanishes at phi = 0",
        std::abs(cross_overlap(2, 4, 0.0, cfg, rule, 1e-13)), 1e-12));

    const double slope = unboundedness_slope(phi_probe, 20);
    const double slope_target = 0.5 * M_PI * std::abs(std::sin(phi_probe));
    suite.checks.push_back(detail::check_close("rotation.unboundedness_slope",
                                               "ln ||Phi_j^(phi)|| grows like (pi |sin phi|/2) j",
                                               slope, slope_target, 0.05 * slope_target));
    suite.checks.push_back(detail::check_residual(
        "rotation.slope_parity", "the growth rate depends only on |sin phi|",
        std::abs(unboundedness_slope(-phi_probe, 20) - slope), 1e-12));

    double min_growth = std::numeric_limits<double>::infinity();
    double prev = std::sqrt(norm_sq_h0(5, phi_probe) * norm_sq_h0(5, -phi_probe));
    for (int j = 6; j <= 25; ++j) {
        const double cur = std::sqrt(norm_sq_h0(j, phi_probe) * norm_sq_h0(j, -phi_probe));
        min_growth = std::min(min_growth, cur / prev);
        prev = cur;
    }
    suite.checks.push_back(detail::check_at_least(
        "rotation.divergent_pairing", "||Phi_j^(-phi)|| ||Phi_j^(phi)|| grows without bound",
        min_growth, 1.0 + 1e-6));

    return suite;
}

inline SuiteReport run_hamiltonian_suite(const RunConfig& rc) {
    const WellConfig cfg = rc.well();
    const QuadratureRule rule = rc.rule();
    SuiteReport suite{"hamiltonian", {}};
    std::mt19937 rng(480911);

    const auto h = SpectralOperator::hamiltonian(cfg);
    double mult_dev = 0.0;
    for (int k = 0; k < 10; ++k) {
        const auto applied = h.apply(CoefficientVector::unit(k, rc.phi));
        for (int m = 0; m < applied.size(); ++m) {
            const cplx want = (m == k) ? cplx(energy(physical_index(k), cfg)) : cplx{};
            mult_dev = std::max(mult_dev, std::abs(applied.coeff(m) - want));
        }
    }
    suite.checks.push_back(detail::check_residual(
        "hamiltonian.eigen_multiplier", "H_phi Phi_j^(phi) = E_j Phi_j^(phi)", mult_dev, 0.0));

    double kin_dev = 0.0;
    for (double phi : {0.0, 0.3, -0.3, 0.7})
        for (int j = 1; j <= 6; ++j) {
            const double e = energy(j, cfg);
            for (int p = 1; p <= 20; ++p) {
                const double x = -0.5 * cfg.L + p * cfg.L / 21.0;
                const double scale =
                    std::max(e * std::abs(eval_rotated(j, phi, x, cfg)), e * std::sqrt(2.0 / cfg.L));
                kin_dev = std::max(kin_dev, std::abs(kinetic_residual(j, phi, x, cfg)) / scale);
            }
        }
    suite.checks.push_back(detail::check_residual(
        "hamiltonian.kinetic_residual",
        "K_phi = -e^{-2 i phi} d^2/dx^2 reproduces E_j on the rotated basis", kin_dev, 1e-9));

    // flipping the exponent sign must break the eigen-relation
    double control = std::numeric_limits<double>::infinity();
    for (double phi : {0.3, 0.7}) {
        const double x = 0.2 * cfg.L;
        const int j = 2;
        const cplx wrong =
            -std::polar(1.0, +2.0 * phi) * eval_rotated_xx(j, phi, x, cfg) -
            energy(j, cfg) * eval_rotated(j, phi, x, cfg);
        control = std::min(control, std::abs(wrong) / energy(j, cfg));
    }
    suite.checks.push_back(detail::check_at_least("hamiltonian.kinetic_negative_control",
                                                  "the flipped exponent e^{+2 i phi} fails",
                                                  control, 1e-3));

    double sym_dev = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const auto f = detail::random_vector(rng, 8, rc.phi);
        const auto g = detail::random_vector(rng, 8, rc.phi);
        sym_dev = std::max(sym_dev, std::abs(symmetry_gap(f, g, cfg)));
    }
    suite.checks.push_back(detail::check_residual(
        "hamiltonian.symmetry_gap", "<H_phi f,g>_phi = <f,H_phi g>_phi", sym_dev, 1e-12));

    double adj_dev = 0.0;
    for (double phi : {0.0, 0.4})
        for (int j = 1; j <= 4; ++j)
            for (int k = 1; k <= 4; ++k) {
                const auto f = CoefficientVector::unit(shifted_index(j), 0.0);
                const auto g = CoefficientVector::unit(shifted_index(k), 0.0);
                adj_dev = std::max(adj_dev, std::abs(kinetic_adjoint_gap(f, g, phi, cfg, rule)));
            }
    suite.checks.push_back(detail::check_residual(
        "hamiltonian.kinetic_adjoint_gap", "<K_{-phi} f, g> = <f, K_phi g>", adj_dev, 1e-9));

    double imag_dev = 0.0;
    for (int k = 0; k < 30; ++k)
        imag_dev = std::max({imag_dev, std::abs(h.multiplier(k).imag()),
                             std::abs(SpectralOperator::shifted_hamiltonian(cfg).multiplier(k).imag())});
    suite.checks.push_back(detail::check_residual("hamiltonian.multiplier_reality",
                                                  "all H_phi eigenvalues are real", imag_dev, 0.0));

    double evo_norm_dev = 0.0, evo_comp_dev = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        const auto f = detail::random_vector(rng, 8, rc.phi);
        std::uniform_real_distribution<double> tdist(-3.0, 3.0);
        const double t = tdist(rng), s = tdist(rng);
        evo_norm_dev = std::max(evo_norm_dev,
                                std::abs(norm_phi(SpectralOperator::evolution(t, cfg).apply(f)) -
                                         norm_phi(f)));
        const auto two = SpectralOperator::evolution(t, cfg).apply(
            SpectralOperator::evolution(s, cfg).apply(f));
        const auto one = SpectralOperator::evolution(t + s, cfg).apply(f);
        for (int k = 0; k < two.size(); ++k)
            evo_comp_dev = std::max(evo_comp_dev, std::abs(two.coeff(k) - one.coeff(k)));
    }
    suite.checks.push_back(detail::check_residual(
        "hamiltonian.evolution_unitary", "||e^{-iHt} f||_phi = ||f||_phi", evo_norm_dev, 1e-13));
    suite.checks.push_back(detail::check_residual(
        "hamiltonian.evolution_composition", "e^{-iHt} e^{-iHs} = e^{-iH(t+s)}", evo_comp_dev,
        1e-13));

    return suite;
}

inline SuiteReport run_coherent_suite(const RunConfig& rc) {
    const WellConfig cfg = rc.well();
    SuiteReport suite{"coherent", {}};
    std::mt19937 rng(77130219);

    double norm_dev = 0.0;
    for (double J : {0.0, 0.5, 1.0, 10.0, 100.0})
        norm_dev = std::max(norm_dev,
                            std::abs(norm_phi(gk_coefficients(make_gk_state(J, 1.3, rc.phi, cfg))) -
                                     1.0));
    suite.checks.push_back(detail::check_residual("coherent.normalization_unit",
                                                  "||Psi(J,gamma)||_phi = 1", norm_dev, 1e-12));

    double closed_dev = 0.0;
    for (int i = 0; i <= 24; ++i) {
        const double J = std::pow(10.0, -3.0 + 6.0 * i / 24.0);
        const double series = normalization_series(J, cfg);
        closed_dev = std::max(closed_dev,
                              std::abs(normalization_closed(J, cfg) - series) / series);
    }
    suite.checks.push_back(detail::check_residual(
        "coherent.normalization_closed_vs_series",
        "sum J^n/rho_n = (2 pi^2/(J L^2)) I_2(2 L sqrt(J)/pi)", closed_dev, 1e-10));

    // the other reading of the printed closed form does not match the series
    {
        const double J = 1.0;
        const double printed =
            std::pow(8.0 * M_PI * M_PI / (J * cfg.L * cfg.L) *
                         bessel_i(2, cfg.L * std::sqrt(J) / M_PI),
                     -0.5);
        const double deviation = std::abs(printed / normalization_series(J, cfg) - 1.0);
        suite.checks.push_back(detail::check_at_least(
            "coherent.printed_convention_deviation",
            "the variant (8 pi^2/(J L^2)) I_2(L sqrt(J)/pi) disagrees with the series",
            deviation, 0.05));
    }

    double stab_dev = 0.0;
    for (auto [J, gamma, t] : {std::tuple{3.0, 0.2, 1.7}, std::tuple{0.5, -1.0, 0.4},
                               std::tuple{10.0, 2.4, -2.2}})
        stab_dev = std::max(stab_dev, stability_check(make_gk_state(J, gamma, rc.phi, cfg), t));
    suite.checks.push_back(detail::check_residual(
        "coherent.temporal_stability", "e^{-i h t} Psi(J,gamma) = Psi(J,gamma+t)", stab_dev,
        1e-13));

    double action_dev = 0.0;
    for (double J : {0.5, 2.5, 10.0})
        action_dev = std::max(action_dev,
                              std::abs(action_expectation(make_gk_state(J, 0.9, rc.phi, cfg)) - J) / J);
    suite.checks.push_back(detail::check_residual("coherent.action_identity",
                                                  "<Psi, h Psi>_phi = J", action_dev, 1e-8));

    double lower_dev = 0.0;
    for (double J : {0.5, 2.0, 10.0}) {
        const auto state = make_gk_state(J, 0.7, rc.phi, cfg);
        const auto psi = gk_coefficients(state);
        const auto lowered = lowering_apply(psi, state.gamma, cfg);
        const auto target = cplx(std::sqrt(J)) * psi;
        double gap_sq = 0.0;
        for (int k = 0; k < target.size(); ++k)
            gap_sq += std::norm(lowered.coeff(k) - target.coeff(k));
        lower_dev = std::max(lower_dev, std::sqrt(gap_sq) / std::sqrt(J));
    }
    suite.checks.push_back(detail::check_residual("coherent.lowering_eigenstate",
                                                  "a_gamma Psi = sqrt(J) Psi", lower_dev, 1e-8));

    double adjoint_dev = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        const auto f = detail::random_vector(rng, 8, rc.phi);
        const auto g = detail::random_vector(rng, 8, rc.phi);
        std::uniform_real_distribution<double> gdist(-3.0, 3.0);
        const double gamma = gdist(rng);
        adjoint_dev = std::max(adjoint_dev,
                               std::abs(inner_phi(lowering_apply(f, gamma, cfg), g) -
                                        inner_phi(f, raising_apply(g, gamma, cfg))));
    }
    suite.checks.push_back(detail::check_residual(
        "coherent.raising_adjointness", "<a f, g>_phi = <f, a^dag g>_phi", adjoint_dev, 1e-12));

    // bracket on psi_n through the ladder maps, against the closed form
    double comm_dev = 0.0;
    double comm_min_gap_from_one = std::numeric_limits<double>::infinity();
    const WellConfig reference{};  // L = pi
    for (int n = 0; n <= 10; ++n) {
        const auto psi_n = CoefficientVector::unit(n, rc.phi);
        const double gamma = 0.35;
        const cplx up_down = inner_phi(psi_n, lowering_apply(raising_apply(psi_n, gamma, cfg),
                                                             gamma, cfg));
        const cplx down_up = inner_phi(psi_n, raising_apply(lowering_apply(psi_n, gamma, cfg),
                                                            gamma, cfg));
        comm_dev = std::max(comm_dev,
                            std::abs(up_down - down_up - cplx(commutator_diagonal(n, cfg))));
        comm_min_gap_from_one =
            std::min(comm_min_gap_from_one, std::abs(commutator_diagonal(n, reference) - 1.0));
    }
    suite.checks.push_back(detail::check_residual(
        "coherent.commutator_diagonal",
        "<psi_n, [a, a^dag] psi_n>_phi = (pi/L)^2 (2n+3)", comm_dev, 1e-12));
    suite.checks.push_back(detail::check_at_least(
        "coherent.commutator_noncanonical", "[a, a^dag] is never the identity (L = pi)",
        comm_min_gap_from_one, 1.0));

    // pointwise value against a long direct summation
    {
        const GKState state = make_gk_state(2.0, 0.7, rc.phi, cfg);
        const double x = 0.1 * cfg.L / M_PI;
        const cplx got = evaluate_state(state, x).value;
        const double norm = normalization_series(2.0, cfg);
        cplx brute{};
        double ln_rho = 0.0;
        for (int n = 0; n < 200; ++n) {
            if (n > 0) ln_rho += std::log(shifted_energy(n, cfg));
            const double mag = norm * std::exp(0.5 * n * std::log(2.0) - 0.5 * ln_rho);
            if (mag == 0.0) break;
            brute += std::polar(mag, -shifted_energy(n, cfg) * state.gamma) *
                     eval_rotated(physical_index(n), rc.phi, x, cfg);
        }
        suite.checks.push_back(detail::check_residual(
            "coherent.value_vs_brute_force", "Psi(J,gamma;x) equals the direct series sum",
            std::abs(got - brute), 1e-10));
    }

    return suite;
}

inline SuiteReport run_moments_suite(const RunConfig& rc) {
    const WellConfig cfg = rc.well();
    const QuadratureRule rule = rc.rule();
    SuiteReport suite{"moments", {}};
    std::mt19937 rng(90901157);

    const auto reports = verify_moments(rc.nmax, cfg, rule, std::min(rc.tol, 1e-8));
    double worst_rel = 0.0, worst_tail = 0.0;
    for (const auto& r : reports) {
        worst_rel = std::max(worst_rel, r.relative_error);
        worst_tail = std::max(worst_tail, r.tail_bound);
    }
    suite.checks.push_back(detail::check_residual(
        "moments.moment_problem", "integral_0^inf J^n rho(J) dJ = rho_n", worst_rel, 1e-6));
    suite.checks.push_back(detail::check_residual(
        "moments.tail_bounds", "every cutoff leaves tail mass below tolerance", worst_tail,
        std::min(rc.tol, 1e-8)));

    // halving the K_2 argument must scale moment n by 4^n (x16 overall)
    double ratio_dev = 0.0;
    double previous_ratio = 0.0;
    for (int n = 0; n <= 5; ++n) {
        auto bad_density_log = [&](double J) {
            return 4.0 * std::log(cfg.L / M_PI) + std::log(J) +
                   bessel_k_log(2, cfg.L * std::sqrt(J) / M_PI);
        };
        auto integrand = [&](double J) { return std::exp(n * std::log(J) + bad_density_log(J)); };
        const SemiInfinitePolicy policy{0.5 * measure_decay_rate(cfg), 1e-9, 0.0};
        const double moment = integrate_semiinfinite_moment(integrand, policy, rule).value;
        const double ratio = moment / std::exp(log_rho(n, cfg));
        if (n > 0) ratio_dev = std::max(ratio_dev, std::abs(ratio / previous_ratio - 4.0));
        previous_ratio = ratio;
    }
    suite.checks.push_back(detail::check_residual(
        "moments.negative_control_scaling",
        "halving the K_2 argument scales moment n by 4^n", ratio_dev, 0.05));

    double res_dev = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const auto f = detail::random_vector(rng, 6, rc.phi);
        const auto g = detail::random_vector(rng, 6, rc.phi);
        res_dev = std::max(res_dev,
                           std::abs(resolution_check(f, g, cfg, rule) - inner_phi(f, g)));
    }
    suite.checks.push_back(detail::check_residual(
        "moments.resolution_of_identity",
        "integral dnu <f,Psi>_phi <Psi,g>_phi = <f,g>_phi", res_dev, 1e-6));

    return suite;
}

inline VerificationReport run_verification(const RunConfig& rc,
                                           const std::vector<std::string>& suites) {
    rc.validate();
    VerificationReport report;
    report.config = rc;
    for (const std::string& name : suites) {
        if (name == "basis")
            report.suites.push_back(run_basis_suite(rc));
        else if (name == "rotation")
            report.suites.push_back(run_rotation_suite(rc));
        else if (name == "hamiltonian")
            report.suites.push_back(run_hamiltonian_suite(rc));
        else if (name == "coherent")
            report.suites.push_back(run_coherent_suite(rc));
        else if (name == "moments")
            report.suites.push_back(run_moments_suite(rc));
        else
            throw std::invalid_argument("unknown suite: " + name);
    }
    return report;
}

inline const std::vector<std::string>& all_suites() {
    static const std::vector<std::string> names{"basis", "rotation", "hamiltonian", "coherent",
                                                "moments"};
    return names;
}

}  // namespace rotwell
