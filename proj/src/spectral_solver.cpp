#include "shockspec/spectral_solver.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "shockspec/eigenbasis.hpp"
#include "shockspec/quadrature.hpp"
#include "shockspec/specfun.hpp"

namespace shockspec {

namespace {

using specfun::ln_gamma;
using specfun::sinpi;

constexpr double kPi = 3.14159265358979323846;
const double kGammaC = std::exp(ln_gamma(2.25).log_abs);        // Gamma(9/4)
const double kGammaM14 = -std::exp(ln_gamma(-0.25).log_abs);    // Gamma(-1/4)

double clamp_y(double y) {
    return std::min(std::max(y, kYMin), kYMax);
}

bool beta0_degenerate(const ProblemSpec& spec) {
    return spec.beta == 0.0;
}

// [n!/(9/4)_n]^2 (2n + 9/4)^{-1}
double beta0_normalization(int n) {
    const double lg = ln_gamma(n + 1.0).log_abs + ln_gamma(2.25).log_abs -
                      ln_gamma(n + 2.25).log_abs;
    return std::exp(2.0 * lg) / (2.0 * n + 2.25);
}

double beta0_lambda(int n) {
    return lambda_of_nu(static_cast<double>(n));
}

}  // namespace

void validate(const ProblemSpec& spec) {
    if (!(spec.beta >= 0.0)) {
        throw DomainError("ProblemSpec: beta must be >= 0");
    }
    if (!(spec.y0 >= kYMin && spec.y0 <= kYMax)) {
        throw DomainError("ProblemSpec: y0 outside [1e-6, 1 - 1e-6]");
    }
}

double eigen_residual(double lambda, const ProblemSpec& spec) {
    validate(spec);
    double r = wronskian(lambda, spec.y0);
    if (spec.beta != 0.0) {
        r -= 3.0 * spec.beta / (4.0 * spec.y0) * phi1(lambda, spec.y0) * phi2(lambda, spec.y0);
    }
    return r;
}

namespace detail {

double scaled_residual(double nu, const ProblemSpec& spec) {
    const double y0 = spec.y0;
    const double k1 = 5.0 / (4.0 * kPi) * std::pow(y0, -0.25) / ((1.0 - y0) * kGammaM14);
    double r = k1 * sinpi(nu);
    if (spec.beta != 0.0) {
        const double k2 = 3.0 * spec.beta / (4.0 * kPi) * kGammaC;
        const double lambda = lambda_of_nu(nu);
        r -= k2 * jacobi_first(nu, y0) * phi2_scaled(lambda, y0);
    }
    return r;
}

double window_root(const ProblemSpec& spec, double nu_lo, double nu_hi) {
    // The scaled residual is entire in nu, so the windows are scanned closed:
    // at integer endpoints it reduces to K2 (-1)^n (sqrt2/2) y0 P_n(y0)^2,
    // which alternates in sign, so consecutive degenerate points always
    // bracket the root even when vanishing absorption pushes it within ulps
    // of an edge.
    auto f = [&](double nu) { return scaled_residual(nu, spec); };
    constexpr int kScan = 64;
    double lo = nu_lo, hi = nu_hi, flo = 0.0;
    int found = 0;
    double prev_x = nu_lo;
    double prev_f = f(prev_x);
    if (prev_f == 0.0) {
        return nu_lo;  // the eigenvalue sits exactly on the degenerate point
    }
    for (int i = 1; i <= kScan; ++i) {
        const double x = nu_lo + (nu_hi - nu_lo) * i / kScan;
        const double fx = f(x);
        if (fx == 0.0) {
            ++found;
            lo = hi = x;  // exact root on a grid point
        } else if (prev_f * fx < 0.0) {
            ++found;
            lo = prev_x;
            hi = x;
            flo = prev_f;
        }
        prev_x = x;
        prev_f = fx;
    }
    if (found != 1) {
        throw MissedRootError("eigenvalue window [" + std::to_string(lambda_of_nu(nu_lo)) +
                              ", " + std::to_string(lambda_of_nu(nu_hi)) + "] contains " +
                              std::to_string(found) + " sign changes");
    }
    const double eps = std::numeric_limits<double>::epsilon();
    while (hi - lo > 4.0 * eps * std::max(1.0, lo)) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (flo * fm <= 0.0) {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace detail

std::vector<double> find_eigenvalues(const ProblemSpec& spec, int count,
                                     const RootSearchOptions& opts) {
    validate(spec);
    if (count < 1) {
        throw DomainError("find_eigenvalues: count must be positive");
    }
    std::vector<double> out;
    out.reserve(count);
    if (beta0_degenerate(spec) && opts.beta0_shortcut) {
        for (int n = 0; n < count; ++n) {
            out.push_back(beta0_lambda(n));
        }
        return out;
    }
    for (int n = 0; n < count; ++n) {
        double nu_lo, nu_hi;
        if (beta0_degenerate(spec)) {
            // no absorption term: roots sit exactly at integer nu, so bracket
            // across the integers rather than between them
            nu_lo = n - 0.5;
            nu_hi = n + 0.5;
        } else {
            nu_lo = n == 0 ? nu_of_lambda(3.9) : static_cast<double>(n);
            nu_hi = n + 1.0;
        }
        out.push_back(lambda_of_nu(detail::window_root(spec, nu_lo, nu_hi)));
    }
    return out;
}

double eigenfunction_g(const EigenMode& mode, const ProblemSpec& spec, double y) {
    validate(spec);
    if (!(y > 0.0 && y <= 1.0)) {
        throw DomainError("eigenfunction_g: y outside (0, 1]");
    }
    if (y != 1.0) {
        y = clamp_y(y);
    }
    if (beta0_degenerate(spec)) {
        return phi1(mode.lambda_n, y);  // polynomial branch, valid up to y = 1
    }
    if (y <= spec.y0) {
        return phi1(mode.lambda_n, y);
    }
    // B_n phi2(lambda_n, y) formed as a scaled ratio; the Gamma prefactors of
    // phi2 cancel, so this stays finite for any mode index
    return phi1(mode.lambda_n, spec.y0) * phi2_scaled(mode.lambda_n, y) /
           phi2_scaled(mode.lambda_n, spec.y0);
}

double normalization(double lambda_n, const ProblemSpec& spec) {
    validate(spec);
    if (beta0_degenerate(spec)) {
        const double nu = nu_of_lambda(lambda_n);
        const int n = static_cast<int>(std::lround(nu));
        if (std::fabs(nu - n) > 1e-6) {
            throw DomainError("normalization: beta = 0 requires a degenerate eigenvalue");
        }
        return beta0_normalization(n);
    }
    const double y0 = spec.y0;
    const double nu = nu_of_lambda(lambda_n);
    const double s = std::sqrt(17.0 + 16.0 * lambda_n);
    const auto d = shockspec::detail::scaled_log_derivs(lambda_n, y0);
    // bracket of the closed form, written in scaled variables:
    //   [Psi(a) + Psi(1-a)]/s - dln phi1 - dln phi2
    //     = pi cot(pi nu)/s - dln|P_nu| - dln|phi2_scaled|
    const double cot_term = kPi * specfun::cospi(nu) / specfun::sinpi(nu) / s;
    const double bracket = cot_term - d.dln_p - d.dln_q;
    const double f1 = phi1(lambda_n, y0);
    const double c = 3.0 * spec.beta * std::pow(y0, -0.75) * (1.0 - y0) * f1 * f1 * bracket;
    if (!(c > 0.0) || !std::isfinite(c)) {
        throw NonpositiveResultError("normalization: nonpositive result at lambda = " +
                                     std::to_string(lambda_n) + " (misconverged eigenvalue?)");
    }
    return c;
}

GreensEvaluator build_evaluator(const ProblemSpec& spec, int n_terms) {
    validate(spec);
    if (n_terms < 1) {
        throw DomainError("build_evaluator: n_terms must be positive");
    }
    GreensEvaluator ev;
    ev.spec = spec;
    ev.n_terms = n_terms;
    const std::vector<double> lambdas = find_eigenvalues(spec, n_terms);
    ev.modes.reserve(n_terms);
    for (int n = 0; n < n_terms; ++n) {
        EigenMode mode;
        mode.n = n;
        mode.lambda_n = lambdas[n];
        mode.C_n = normalization(mode.lambda_n, spec);
        const double g0 = phi1(mode.lambda_n, spec.y0);
        mode.A_hat_n = std::pow(spec.y0, -0.75) * g0 / mode.C_n;
        if (beta0_degenerate(spec)) {
            // phi2 = kappa phi1 at the degenerate modes, so B_n = 1/kappa
            const auto gb = ln_gamma(n + 2.25);
            const auto gm = ln_gamma(-n - 1.25);
            mode.B_n = gm.sign * std::exp(ln_gamma(2.25).log_abs + gm.log_abs - gb.log_abs);
        } else {
            // may underflow to 0 for large n; g is evaluated via scaled ratios
            const double q0 = phi2_scaled(mode.lambda_n, spec.y0);
            const double nu = nu_of_lambda(mode.lambda_n);
            const double lg = ln_gamma(nu + 1.0).log_abs + ln_gamma(nu + 2.25).log_abs;
            mode.B_n = g0 / (-std::exp(lg) / kPi * q0);
        }
        ev.modes.push_back(mode);
    }
    return ev;
}

double greens_function(const GreensEvaluator& ev, double y, double e_ratio) {
    if (e_ratio < 1.0) {
        return 0.0;
    }
    double sum = 0.0;
    for (const EigenMode& mode : ev.modes) {
        sum += mode.A_hat_n * std::pow(e_ratio, -mode.lambda_n) * eigenfunction_g(mode, ev.spec, y);
    }
    return 12.0 / 7.0 * sum;
}

double delta_completeness_check(const GreensEvaluator& ev, int m) {
    if (m < 0 || m >= static_cast<int>(ev.modes.size())) {
        throw DomainError("delta_completeness_check: mode index out of range");
    }
    const EigenMode& mode_m = ev.modes[m];
    auto integrand = [&](double y) {
        double sum = 0.0;
        for (const EigenMode& mode : ev.modes) {
            sum += mode.A_hat_n * eigenfunction_g(mode, ev.spec, y);
        }
        return sum * eigenfunction_g(mode_m, ev.spec, y);
    };
    const QuadratureResult q = integrate_weighted(integrand, 1e-9, {ev.spec.y0});
    return q.value - std::pow(ev.spec.y0, -0.75) * eigenfunction_g(mode_m, ev.spec, ev.spec.y0);
}

SourceSpectrum parse_source_spectrum(const std::string& text) {
    SourceSpectrum src;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream row(line);
        double e, j;
        if (!(row >> e)) {
            continue;  // blank or comment-only line
        }
        if (!(row >> j)) {
            throw GridError("source spectrum line " + std::to_string(lineno) +
                            ": expected two columns");
        }
        std::string extra;
        if (row >> extra) {
            throw GridError("source spectrum line " + std::to_string(lineno) +
                            ": trailing content");
        }
        if (!(e > 0.0) || !(j > 0.0)) {
            throw GridError("source spectrum line " + std::to_string(lineno) +
                            ": both columns must be positive");
        }
        if (!src.epsilon0.empty() && e <= src.epsilon0.back()) {
            throw GridError("source spectrum line " + std::to_string(lineno) +
                            ": epsilon0 must be strictly increasing");
        }
        src.epsilon0.push_back(e);
        src.j.push_back(j);
    }
    if (src.epsilon0.size() < 2) {
        throw GridError("source spectrum: need at least two grid points");
    }
    return src;
}

SourceSpectrum load_source_spectrum(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw GridError("source spectrum: cannot open " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_source_spectrum(buf.str());
}

SourceSpectrum make_planck_source(double theta, double emin, double emax, int points) {
    if (!(theta > 0.0 && emin > 0.0 && emax > emin) || points < 2) {
        throw DomainError("make_planck_source: invalid parameters");
    }
    SourceSpectrum src;
    const double step = std::log(emax / emin) / (points - 1);
    for (int i = 0; i < points; ++i) {
        const double e = emin * std::exp(step * i);
        src.epsilon0.push_back(e);
        src.j.push_back(e * e / std::expm1(e / theta));
    }
    return src;
}

double convolve_spectrum(const GreensEvaluator& ev, const SourceSpectrum& source, double y,
                         double epsilon) {
    if (source.epsilon0.size() < 2 || source.epsilon0.size() != source.j.size()) {
        throw GridError("convolve_spectrum: invalid source table");
    }
    if (!(epsilon > 0.0)) {
        throw DomainError("convolve_spectrum: epsilon must be positive");
    }
    // integrand h(e0) = j(e0) f_hat(eps/e0; y) / (pi e0^3), zero for e0 > eps
    auto h = [&](std::size_t i) {
        const double e0 = source.epsilon0[i];
        if (e0 > epsilon) {
            return 0.0;
        }
        const double fh = greens_function(ev, y, epsilon / e0);
        return source.j[i] * fh / (kPi * e0 * e0 * e0);
    };
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < source.epsilon0.size(); ++i) {
        if (source.epsilon0[i + 1] > epsilon) {
            break;  // grid-faithful: only intervals whose both ends lie at or below eps
        }
        const double de = source.epsilon0[i + 1] - source.epsilon0[i];
        sum += 0.5 * de * (h(i) + h(i + 1));
    }
    return sum;
}

double convolve_spectrum(const ProblemSpec& spec, const SourceSpectrum& source, double y,
                         double epsilon, int n_terms) {
    return convolve_spectrum(build_evaluator(spec, n_terms), source, y, epsilon);
}

}  // namespace shockspec
