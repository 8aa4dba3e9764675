// Command-line front end: verification suites, norm/spectrum/overlap tables,
// and coherent-state evaluation, emitted as deterministic JSON or CSV.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rotwell/report_io.hpp"
#include "rotwell/rotwell.hpp"

namespace {

using nlohmann::ordered_json;
using namespace rotwell;

// Plot-ready table: one JSON object per row, or CSV with a header line.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

std::string table_to_json_string(const std::string& name, const RunConfig& rc, const Table& t) {
    ordered_json rows = ordered_json::array();
    for (const auto& row : t.rows) {
        ordered_json obj;
        for (std::size_t i = 0; i < t.columns.size(); ++i) obj[t.columns[i]] = row[i];
        rows.push_back(std::move(obj));
    }
    return ordered_json{{"command", name}, {"config", config_to_json(rc)}, {"rows", rows}}
               .dump(2) +
           "\n";
}

std::string table_to_csv(const Table& t) {
    std::string out;
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        out += t.columns[i];
        out += (i + 1 < t.columns.size()) ? ',' : '\n';
    }
    for (const auto& row : t.rows)
        for (std::size_t i = 0; i < row.size(); ++i) {
            out += format_double(row[i]);
            out += (i + 1 < row.size()) ? ',' : '\n';
        }
    return out;
}

int emit(const RunConfig& rc, const std::string& text) {
    if (rc.out_path.empty()) {
        std::fputs(text.c_str(), stdout);
        return 0;
    }
    std::ofstream file(rc.out_path, std::ios::binary);
    if (!file) {
        std::fprintf(stderr, "error: cannot open output path %s\n", rc.out_path.c_str());
        return 2;
    }
    file << text;
    return file.good() ? 0 : 2;
}

int cmd_verify(const RunConfig& rc, std::vector<std::string> suites) {
    if (suites.empty()) suites = all_suites();
    const auto start = std::chrono::steady_clock::now();
    const VerificationReport report = run_verification(rc, suites);
    const auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start);
    std::fprintf(stderr, "verify: %d checks, %d failed, %.2f s\n",
                 report.checks_passed() + report.checks_failed(), report.checks_failed(),
                 elapsed.count());
    const std::string text = rc.output_format == "json" ? report_to_json_string(report)
                                                        : report_to_csv(report);
    const int io_status = emit(rc, text);
    if (io_status != 0) return io_status;
    return report.all_pass() ? 0 : 1;
}

int cmd_norms(const RunConfig& rc, int j_max) {
    if (j_max < 1) throw std::invalid_argument("norms: requires --jmax >= 1");
    const WellConfig cfg = rc.well();
    const QuadratureRule rule = rc.rule();
    Table t{{"j", "norm_sq_closed", "norm_sq_quadrature", "relative_gap", "ln_norm"}, {}};
    for (int j = 1; j <= j_max; ++j) {
        const double closed = norm_sq_h0(j, rc.phi);
        const cplx quad = inner_h0([&](double x) { return eval_rotated(j, rc.phi, x, cfg); },
                                   [&](double x) { return eval_rotated(j, rc.phi, x, cfg); }, cfg,
                                   rule, 1e-12);
        t.rows.push_back({static_cast<double>(j), closed, quad.real(),
                          std::abs(quad.real() - closed) / closed, 0.5 * std::log(closed)});
    }
    return emit(rc, rc.output_format == "json" ? table_to_json_string("norms", rc, t)
                                               : table_to_csv(t));
}

int cmd_spectrum(const RunConfig& rc, int j_max) {
    if (j_max < 1) throw std::invalid_argument("spectrum: requires --jmax >= 1");
    const WellConfig cfg = rc.well();
    Table t{{"j", "energy", "k", "shifted_energy", "log_rho"}, {}};
    for (int j = 1; j <= j_max; ++j) {
        const int k = shifted_index(j);
        t.rows.push_back({static_cast<double>(j), energy(j, cfg), static_cast<double>(k),
                          shifted_energy(k, cfg), log_rho(k, cfg)});
    }
    return emit(rc, rc.output_format == "json" ? table_to_json_string("spectrum", rc, t)
                                               : table_to_csv(t));
}

int cmd_overlap(const RunConfig& rc, int k, int j) {
    if (k < 1 || j < 1) throw std::invalid_argument("overlap: requires indices >= 1");
    const WellConfig cfg = rc.well();
    const QuadratureRule rule = rc.rule();
    const cplx quad = cross_overlap(k, j, rc.phi, cfg, rule, 1e-12);
    const bool has_closed = (k == 2 && j == 4);
    const cplx closed = has_closed ? cross_overlap_closed_24(rc.phi) : cplx{};
    Table t{{"k", "j", "phi", "quad_re", "quad_im", "quad_abs", "has_closed_form", "closed_re",
             "closed_im", "abs_gap"},
            {{static_cast<double>(k), static_cast<double>(j), rc.phi, quad.real(), quad.imag(),
              std::abs(quad), has_closed ? 1.0 : 0.0, closed.real(), closed.imag(),
              has_closed ? std::abs(quad - closed) : 0.0}}};
    return emit(rc, rc.output_format == "json" ? table_to_json_string("overlap", rc, t)
                                               : table_to_csv(t));
}

int cmd_cs_eval(const RunConfig& rc, double J, double gamma, double t_evolve, int grid_points,
                double xmin, double xmax) {
    if (J < 0.0) throw std::invalid_argument("cs-eval: requires J >= 0");
    if (grid_points < 2) throw std::invalid_argument("cs-eval: requires --grid >= 2");
    const WellConfig cfg = rc.well();
    const double half = 0.5 * cfg.L;
    if (std::isnan(xmin)) xmin = -half;
    if (std::isnan(xmax)) xmax = half;
    if (xmin < -half || xmax > half || xmin >= xmax)
        throw std::invalid_argument("cs-eval: grid must lie inside [-L/2, L/2]");
    // evolution by t acts as the shift gamma -> gamma + t
    const GKState state = make_gk_state(J, gamma + t_evolve, rc.phi, cfg);
    Table t{{"x", "re", "im", "abs_sq"}, {}};
    for (int i = 0; i < grid_points; ++i) {
        const double x = xmin + (xmax - xmin) * i / (grid_points - 1);
        const cplx v = evaluate_state(state, x).value;
        t.rows.push_back({x, v.real(), v.imag(), std::norm(v)});
    }
    return emit(rc, rc.output_format == "json" ? table_to_json_string("cs-eval", rc, t)
                                               : table_to_csv(t));
}

int cmd_cs_moments(const RunConfig& rc) {
    const auto reports = verify_moments(rc.nmax, rc.well(), rc.rule(), std::min(rc.tol, 1e-8));
    Table t{{"n", "quadrature_value", "target", "relative_error", "tail_bound"}, {}};
    for (const auto& r : reports)
        t.rows.push_back({static_cast<double>(r.n), r.quadrature_value, r.target,
                          r.relative_error, r.tail_bound});
    return emit(rc, rc.output_format == "json" ? table_to_json_string("cs-moments", rc, t)
                                               : table_to_csv(t));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rotated infinite-well toolkit: verification suites and tables"};
    app.require_subcommand(1);

    RunConfig rc;
    app.add_option("--L", rc.L, "well width; the interval is [-L/2, L/2]")->capture_default_str();
    app.add_option("--phi", rc.phi, "rotation angle")->capture_default_str();
    app.add_option("--nmax", rc.nmax, "moment / truncation order")->capture_default_str();
    app.add_option("--tol", rc.tol, "global quadrature tolerance")->capture_default_str();
    app.add_option("--quad-order", rc.quad_order, "Gauss-Legendre nodes per panel")
        ->capture_default_str();
    app.add_option("--quad-panels", rc.quad_panels, "starting panel count")->capture_default_str();
    app.add_option("--format", rc.output_format, "output format: json or csv")
        ->capture_default_str();
    app.add_option("--out", rc.out_path, "write the report to this path instead of stdout");

    auto* verify = app.add_subcommand("verify", "run verification suites");
    std::vector<std::string> suites;
    verify->add_option("--suites", suites,
                       "subset of basis,rotation,hamiltonian,coherent,moments (default all)")
        ->delimiter(',');
    verify->fallthrough();

    auto* norms = app.add_subcommand("norms", "closed-form vs quadrature norms of the rotated basis");
    int j_max = 20;
    norms->add_option("--jmax", j_max, "largest index")->capture_default_str();
    norms->fallthrough();

    auto* spectrum = app.add_subcommand("spectrum", "energies, shifted spectrum and ln rho_n");
    spectrum->add_option("--jmax", j_max, "largest index")->capture_default_str();
    spectrum->fallthrough();

    auto* overlap = app.add_subcommand("overlap", "cross overlap <Phi_k^(phi), Phi_j^(-phi)>");
    int idx_k = 2, idx_j = 4;
    overlap->add_option("--k", idx_k, "first index")->capture_default_str();
    overlap->add_option("--j", idx_j, "second index")->capture_default_str();
    overlap->fallthrough();

    auto* cs_eval = app.add_subcommand("cs-eval", "coherent state on a spatial grid");
    double J = 1.0, gamma = 0.0, t_evolve = 0.0;
    int grid_points = 101;
    double xmin = std::nan(""), xmax = std::nan("");
    cs_eval->add_option("--J", J, "action variable")->capture_default_str();
    cs_eval->add_option("--gamma", gamma, "angle variable")->capture_default_str();
    cs_eval->add_option("--t", t_evolve, "evolution time (acts as gamma + t)")
        ->capture_default_str();
    cs_eval->add_option("--grid", grid_points, "number of grid points")->capture_default_str();
    cs_eval->add_option("--xmin", xmin, "grid start (default -L/2)");
    cs_eval->add_option("--xmax", xmax, "grid end (default L/2)");
    cs_eval->fallthrough();

    auto* cs_moments = app.add_subcommand("cs-moments", "moment problem report up to nmax");
    cs_moments->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        rc.validate();
        if (verify->parsed()) return cmd_verify(rc, suites);
        if (norms->parsed()) return cmd_norms(rc, j_max);
        if (spectrum->parsed()) return cmd_spectrum(rc, j_max);
        if (overlap->parsed()) return cmd_overlap(rc, idx_k, idx_j);
        if (cs_eval->parsed()) return cmd_cs_eval(rc, J, gamma, t_evolve, grid_points, xmin, xmax);
        if (cs_moments->parsed()) return cmd_cs_moments(rc);
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return 2;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
