// Command-line front end: eigenvalue tables, Green's-function spectra, energy
// moments, identity verification, source convolution, and coordinate mapping.
// Emits CSV (default) or JSON; deterministic output for identical inputs.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "shockspec/eigenbasis.hpp"
#include "shockspec/flow_model.hpp"
#include "shockspec/identities.hpp"
#include "shockspec/quadrature.hpp"
#include "shockspec/specfun.hpp"
#include "shockspec/spectral_solver.hpp"

namespace {

using json = nlohmann::json;
using namespace shockspec;

constexpr double kPi = 3.14159265358979323846;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.11e", v);
    return buf;
}

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

void emit_table(const Table& t, const json& meta, const std::string& format) {
    if (format == "json") {
        json data = json::object();
        for (std::size_t c = 0; c < t.columns.size(); ++c) {
            json col = json::array();
            for (const auto& row : t.rows) {
                col.push_back(row[c]);
            }
            data[t.columns[c]] = std::move(col);
        }
        json out = {{"meta", meta}, {"data", data}};
        std::cout << out.dump(2) << "\n";
        return;
    }
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
        std::cout << (c ? "," : "") << t.columns[c];
    }
    std::cout << "\n";
    for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            std::cout << (c ? "," : "") << fmt(row[c]);
        }
        std::cout << "\n";
    }
}

std::vector<double> log_grid(double lo, double hi, int points) {
    std::vector<double> g;
    const double step = std::log(hi / lo) / (points - 1);
    for (int i = 0; i < points; ++i) {
        g.push_back(lo * std::exp(step * i));
    }
    return g;
}

ColumnGeometry parse_geometry(const std::vector<std::string>& kvs) {
    ColumnGeometry geom;
    std::map<std::string, double*> fields{
        {"r0", &geom.r0},           {"sigma_par", &geom.sigma_par},
        {"sigma_perp", &geom.sigma_perp}, {"J", &geom.J},
        {"M_star", &geom.M_star},   {"R_star", &geom.R_star},
    };
    for (const auto& kv : kvs) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) {
            throw DomainError("geometry: expected key=value, got '" + kv + "'");
        }
        const std::string key = kv.substr(0, eq);
        const auto it = fields.find(key);
        if (it == fields.end()) {
            throw DomainError("geometry: unknown key '" + key + "'");
        }
        *it->second = std::stod(kv.substr(eq + 1));
    }
    validate(geom);
    return geom;
}

struct VerifyCase {
    std::string name;
    double gap;
    double tol;
    bool pass;
};

int run_verify(const ProblemSpec& spec, const std::string& suite, double perturb_lambda0,
               const std::string& format) {
    std::vector<VerifyCase> cases;
    auto record = [&](const std::string& name, double gap, double tol) {
        cases.push_back({name, gap, tol, gap <= tol});
    };
    const bool all = suite == "all";

    GreensEvaluator ev = build_evaluator(spec, 12);
    if (perturb_lambda0 != 0.0) {
        ev.modes[0].lambda_n += perturb_lambda0;
    }

    if (all || suite == "wronskian") {
        // y^{1/4}(1-y) W constant across y
        const double lam = ev.modes[0].lambda_n;
        const double ref = std::pow(0.5, 0.25) * 0.5 * wronskian(lam, 0.5);
        double worst = 0.0;
        for (double y : {0.1, 0.3, 0.7, 0.9}) {
            const double v = std::pow(y, 0.25) * (1.0 - y) * wronskian(lam, y);
            worst = std::max(worst, std::fabs(v - ref) / std::fabs(ref));
        }
        record("wronskian_invariance", worst, 1e-10);
    }
    if (all || suite == "orthogonality") {
        double worst = 0.0;
        for (int n = 0; n < 6; ++n) {
            for (int m = n + 1; m < 6; ++m) {
                auto f = [&](double y) {
                    return eigenfunction_g(ev.modes[n], spec, y) *
                           eigenfunction_g(ev.modes[m], spec, y);
                };
                const auto q = integrate_weighted(f, 1e-9, {spec.y0});
                worst = std::max(worst, std::fabs(q.value) /
                                            std::sqrt(ev.modes[n].C_n * ev.modes[m].C_n));
            }
        }
        record("orthogonality", worst, 1e-6);
    }
    if (all || suite == "normalization") {
        double worst = 0.0;
        for (int n = 0; n < 6; ++n) {
            auto f = [&](double y) {
                const double g = eigenfunction_g(ev.modes[n], spec, y);
                return g * g;
            };
            const auto q = integrate_weighted(f, 1e-9, {spec.y0});
            worst = std::max(worst, std::fabs(q.value - ev.modes[n].C_n) / ev.modes[n].C_n);
        }
        record("normalization_closed_vs_quadrature", worst, 1e-6);
    }
    if (all || suite == "summation") {
        const double ell = 2.0;
        GreensEvaluator big = build_evaluator(spec, 500);
        const auto r250 = check_summation_formula(big, ell, 0.5, 250);
        const auto r500 = check_summation_formula(big, ell, 0.5, 500);
        record("summation_gap_500", r500.rel_gap, 1e-3);
        record("summation_gap_shrinks", r500.rel_gap / std::max(r250.rel_gap, 1e-300), 0.5);
    }
    if (all || suite == "bilinear") {
        const auto r = bilinear_generating(0.3, 0.7, 2.0, 500);
        record("bilinear_gap_500", r.rel_gap, 1e-3);
    }
    if (all || suite == "linear") {
        const auto r = linear_generating(0.6, 2.0, 500);
        record("linear_gap_500", r.rel_gap, 1e-3);
        const double g34 = std::exp(specfun::ln_gamma(0.75).log_abs);
        const double g94 = std::exp(specfun::ln_gamma(2.25).log_abs);
        record("gamma_identity", std::fabs(g34 * g94 - 5.0 * kPi * std::sqrt(2.0) / 16.0) /
                                     (5.0 * kPi * std::sqrt(2.0) / 16.0),
               1e-12);
    }

    bool all_pass = true;
    if (format == "json") {
        json arr = json::array();
        for (const auto& c : cases) {
            arr.push_back({{"check", c.name}, {"rel_gap", c.gap}, {"tolerance", c.tol},
                           {"pass", c.pass}});
            all_pass = all_pass && c.pass;
        }
        json meta = {{"command", "verify"}, {"beta", spec.beta}, {"y0", spec.y0},
                     {"suite", suite}};
        std::cout << json{{"meta", meta}, {"data", arr}}.dump(2) << "\n";
    } else {
        std::cout << "check,rel_gap,tolerance,pass\n";
        for (const auto& c : cases) {
            std::cout << c.name << "," << fmt(c.gap) << "," << fmt(c.tol) << ","
                      << (c.pass ? "1" : "0") << "\n";
            all_pass = all_pass && c.pass;
        }
    }
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Green's function for bulk-Comptonized spectra in an accretion column"};
    app.require_subcommand(1);
    app.fallthrough();  // global options may appear after the subcommand

    double beta = 0.4;
    double y0 = 0.9;
    int n_terms = 20;
    if (const char* env = std::getenv("PULSAR_GREEN_TERMS")) {
        n_terms = std::atoi(env);
    }
    std::string format = "csv";
    bool pi_free = false;
    app.add_option("--beta", beta, "absorption parameter (>= 0)")->capture_default_str();
    app.add_option("--y0", y0, "source location in [1e-6, 1-1e-6]")->capture_default_str();
    app.add_option("--terms", n_terms, "number of expansion terms")->capture_default_str();
    app.add_option("-f,--format", format, "output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    app.add_flag("--pi-free", pi_free,
                 "report spectra in units of Ndot0/(r0^2 eps0^3 v_c), i.e. divide f_hat by pi");

    auto* eigen = app.add_subcommand("eigen", "eigenvalue and coefficient table");
    int count = 0;
    bool sweep = false;
    int sweep_points = 25;
    std::vector<double> sweep_betas;
    eigen->add_option("--count", count, "number of eigenvalues (default: --terms)");
    eigen->add_flag("--sweep-y0", sweep, "emit lambda0 over a y0 grid per beta");
    eigen->add_option("--sweep-points", sweep_points, "y0 grid size for --sweep-y0")
        ->capture_default_str();
    eigen->add_option("--sweep-beta", sweep_betas,
                      "beta values for --sweep-y0 (default: the --beta value)");

    auto* spectrum = app.add_subcommand("spectrum", "Green's function spectrum table");
    double emin = 1.0, emax = 1e4;
    int points = 200;
    std::vector<double> ys{0.1, 0.3, 0.5, 0.7, 0.9};
    spectrum->add_option("--emin", emin, "smallest energy ratio (>= 1)")->capture_default_str();
    spectrum->add_option("--emax", emax, "largest energy ratio")->capture_default_str();
    spectrum->add_option("--points", points, "grid size")->capture_default_str();
    spectrum->add_option("--y", ys, "evaluation positions")->capture_default_str();

    auto* moments = app.add_subcommand("moments", "energy moments, closed form vs series");
    double ell = 2.0;
    std::vector<double> moment_ys{0.25, 0.5, 0.75};
    moments->add_option("--ell", ell, "moment order")->capture_default_str();
    moments->add_option("--y", moment_ys, "evaluation positions")->capture_default_str();

    auto* verify = app.add_subcommand("verify", "run the identity conformance suites");
    std::string suite = "all";
    double perturb = 0.0;
    verify->add_option("--suite", suite, "one of: all, wronskian, orthogonality, "
                                         "normalization, summation, bilinear, linear")
        ->check(CLI::IsMember({"all", "wronskian", "orthogonality", "normalization",
                               "summation", "bilinear", "linear"}))
        ->capture_default_str();
    verify->add_option("--perturb-lambda0", perturb,
                       "testing aid: shift lambda_0 by this amount before checking");

    auto* convolve = app.add_subcommand("convolve", "spectrum from a tabulated source");
    std::string source_path;
    convolve->add_option("--source", source_path, "two-column source file (epsilon0 j)")
        ->required();
    convolve->add_option("--emin", emin, "smallest output energy")->capture_default_str();
    convolve->add_option("--emax", emax, "largest output energy")->capture_default_str();
    convolve->add_option("--points", points, "output grid size")->capture_default_str();
    convolve->add_option("--y", ys, "evaluation positions")->capture_default_str();

    auto* map = app.add_subcommand("map", "x <-> y coordinate mapping for a geometry");
    std::vector<std::string> geom_kvs;
    std::vector<double> map_ys, map_xs;
    map->add_option("--geom", geom_kvs, "geometry key=value (r0, sigma_par, sigma_perp, J, "
                                        "M_star, R_star; cgs)")
        ->required();
    map->add_option("--y", map_ys, "positions to map to x");
    map->add_option("--x", map_xs, "positions to map to y");

    CLI11_PARSE(app, argc, argv);

    try {
        const ProblemSpec spec{beta, y0};
        json meta = {{"beta", beta},     {"y0", y0},         {"n_terms", n_terms},
                     {"format", format}, {"pi_free", pi_free}};
        const double unit = pi_free ? 1.0 / kPi : 1.0;

        if (*eigen) {
            meta["command"] = "eigen";
            if (sweep) {
                if (sweep_betas.empty()) {
                    sweep_betas.push_back(beta);
                }
                meta["sweep_points"] = sweep_points;
                meta["sweep_beta"] = sweep_betas;
                Table t;
                t.columns.push_back("y0");
                for (double b : sweep_betas) {
                    char col[48];
                    std::snprintf(col, sizeof(col), "lambda0_beta%g", b);
                    t.columns.push_back(col);
                }
                for (int i = 0; i < sweep_points; ++i) {
                    const double yy = 0.02 + (0.98 - 0.02) * i / (sweep_points - 1.0);
                    std::vector<double> row{yy};
                    for (double b : sweep_betas) {
                        row.push_back(find_eigenvalues({b, yy}, 1).front());
                    }
                    t.rows.push_back(std::move(row));
                }
                emit_table(t, meta, format);
                return 0;
            }
            const int n_eigen = count > 0 ? count : n_terms;
            meta["count"] = n_eigen;
            const GreensEvaluator ev = build_evaluator(spec, n_eigen);
            Table t;
            t.columns = {"n", "lambda_n", "B_n", "C_n", "A_hat_n"};
            for (const EigenMode& m : ev.modes) {
                t.rows.push_back({static_cast<double>(m.n), m.lambda_n, m.B_n, m.C_n,
                                  m.A_hat_n});
            }
            emit_table(t, meta, format);
            return 0;
        }

        if (*spectrum) {
            meta["command"] = "spectrum";
            meta["emin"] = emin;
            meta["emax"] = emax;
            meta["points"] = points;
            meta["y"] = ys;
            if (!(emin >= 1.0 && emax > emin && points >= 2)) {
                throw DomainError("spectrum: need 1 <= emin < emax and points >= 2");
            }
            const GreensEvaluator ev = build_evaluator(spec, n_terms);
            Table t;
            t.columns = {"e_ratio"};
            for (double yy : ys) {
                char col[32];
                std::snprintf(col, sizeof(col), "f_hat_y%g", yy);
                t.columns.push_back(col);
            }
            for (double e : log_grid(emin, emax, points)) {
                std::vector<double> row{e};
                for (double yy : ys) {
                    row.push_back(unit * greens_function(ev, yy, e));
                }
                t.rows.push_back(std::move(row));
            }
            emit_table(t, meta, format);
            return 0;
        }

        if (*moments) {
            meta["command"] = "moments";
            meta["ell"] = ell;
            meta["y"] = moment_ys;
            const MomentSpec ms = make_moment_spec(ell);
            const GreensEvaluator ev = build_evaluator(spec, std::max(n_terms, 500));
            Table t;
            t.columns = {"y", "I_closed", "I_series", "rel_gap"};
            for (double yy : moment_ys) {
                const double mc = moment_closed(ms, spec, yy);
                const double msr = moment_series(ms, ev, yy);
                const double gap =
                    std::fabs(mc - msr) / std::max({std::fabs(mc), std::fabs(msr), 1e-300});
                t.rows.push_back({yy, mc, msr, gap});
            }
            emit_table(t, meta, format);
            return 0;
        }

        if (*verify) {
            return run_verify(spec, suite, perturb, format);
        }

        if (*convolve) {
            meta["command"] = "convolve";
            meta["source"] = source_path;
            meta["emin"] = emin;
            meta["emax"] = emax;
            meta["points"] = points;
            meta["y"] = ys;
            const SourceSpectrum src = load_source_spectrum(source_path);
            const GreensEvaluator ev = build_evaluator(spec, n_terms);
            Table t;
            t.columns = {"epsilon"};
            for (double yy : ys) {
                char col[32];
                std::snprintf(col, sizeof(col), "f_y%g", yy);
                t.columns.push_back(col);
            }
            for (double e : log_grid(emin, emax, points)) {
                std::vector<double> row{e};
                for (double yy : ys) {
                    row.push_back(unit * kPi * convolve_spectrum(ev, src, yy, e));
                }
                t.rows.push_back(std::move(row));
            }
            emit_table(t, meta, format);
            return 0;
        }

        if (*map) {
            meta["command"] = "map";
            const ColumnGeometry geom = parse_geometry(geom_kvs);
            const SonicConstants sc = sonic_constants(geom);
            meta["v_c"] = sc.v_c;
            meta["x_st"] = sc.x_st;
            meta["constraint_residual"] = dynamical_constraint_residual(geom);
            Table t;
            t.columns = {"x", "y", "v_over_vc"};
            for (double yy : map_ys) {
                t.rows.push_back({x_of_y(geom, yy), yy, velocity_ratio(yy)});
            }
            for (double xx : map_xs) {
                const double yy = y_of_x(geom, xx);
                t.rows.push_back({xx, yy, velocity_ratio(yy)});
            }
            emit_table(t, meta, format);
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
