#include "shockspec/identities.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "shockspec/eigenbasis.hpp"
#include "shockspec/specfun.hpp"

namespace shockspec {

namespace {

using specfun::ln_gamma;
using specfun::sinpi;

constexpr double kPi = 3.14159265358979323846;
constexpr double kResonanceGuard = 1e-10;
const double kGammaC = std::exp(ln_gamma(2.25).log_abs);
const double kGammaM14 = -std::exp(ln_gamma(-0.25).log_abs);

double rel_gap(double lhs, double rhs) {
    return std::fabs(lhs - rhs) / std::max({std::fabs(lhs), std::fabs(rhs), 1e-300});
}

// K1(y) carries the y-dependence of the closed-form Wronskian:
//   W(lambda, y) = -Gamma(1+nu)^2 sin(pi nu) K1(y)
double wronskian_scale(double y) {
    return 5.0 / (4.0 * kPi) * std::pow(y, -0.25) / ((1.0 - y) * kGammaM14);
}

// Q / (Gamma(nu+1) Gamma(nu+9/4)) with Q = 3 beta phi1 phi2 - 4 y0 W, all at
// (lambda, y0). Finite through the degenerate points, where sin(pi nu) -> 0
// and phi2_scaled carries the limit.
double scaled_source_denominator(double lambda, const ProblemSpec& spec, double* scale_out) {
    const double nu = nu_of_lambda(lambda);
    const double f1 = phi1(lambda, spec.y0);
    const double q0 = phi2_scaled(lambda, spec.y0);
    const double rho = [&] {
        const auto g1 = ln_gamma(nu + 1.0);
        const auto g2 = ln_gamma(nu + 2.25);
        return g1.sign * g2.sign * std::exp(g1.log_abs - g2.log_abs);
    }();
    const double t1 = -3.0 * spec.beta / kPi * f1 * q0;
    const double t2 = 4.0 * spec.y0 * sinpi(nu) * wronskian_scale(spec.y0) * rho;
    if (scale_out != nullptr) {
        *scale_out = std::fabs(t1) + std::fabs(t2);
    }
    return t1 + t2;
}

// Jacobi pair iterator: P_n^{(5/4,0)}(1-2y) ascending in n.
struct JacobiIter {
    double x;
    double pm1 = 1.0;
    double p = 0.0;
    int n = 0;
    explicit JacobiIter(double y) : x(1.0 - 2.0 * y) { p = 2.25 + 3.25 * (x - 1.0) / 2.0; }
    double value() const { return n == 0 ? pm1 : p; }
    void advance() {
        if (n == 0) {
            n = 1;
            return;
        }
        const double m = n;
        const double L = 2.0 * (m + 1.0) * (m + 2.25) * (2.0 * m + 1.25);
        const double M = (2.0 * m + 2.25) * ((2.0 * m + 1.25) * (2.0 * m + 3.25) * x + 25.0 / 16.0);
        const double R = 2.0 * m * (m + 1.25) * (2.0 * m + 3.25);
        const double next = (M * p - R * pm1) / L;
        pm1 = p;
        p = next;
        ++n;
    }
};

void check_generating_denominator(int n, double ell) {
    const double den = 4.0 * n * n + 9.0 * n + 3.0 - ell;
    if (std::fabs(den) < kResonanceGuard * (1.0 + std::fabs(ell) + 4.0 * n * n + 9.0 * n + 3.0)) {
        throw ResonanceError("generating function: ell = 4n^2 + 9n + 3 at n = " +
                             std::to_string(n));
    }
}

}  // namespace

MomentSpec make_moment_spec(double ell) {
    const double disc = 33.0 + 16.0 * ell;
    if (disc < 0.0) {
        throw DomainError("make_moment_spec: 33 + 16 ell < 0");
    }
    return {ell, (9.0 - std::sqrt(disc)) / 8.0};
}

namespace detail {

double phi2_or_limit(double lambda, double y) {
    const double a = spectral_params(lambda).a;
    if (std::fabs(a - std::round(a)) < 1e-8 && std::round(a) <= 0.0) {
        const int n = static_cast<int>(std::round(-a));
        const auto gb = ln_gamma(n + 2.25);
        const auto gm = ln_gamma(-n - 1.25);
        const double kappa =
            gm.sign * std::exp(gb.log_abs - ln_gamma(2.25).log_abs - gm.log_abs);
        return kappa * phi1(lambda, y);
    }
    return phi2(lambda, y);
}

}  // namespace detail

double moment_closed(const MomentSpec& ms, const ProblemSpec& spec, double y) {
    validate(spec);
    if (!(y > 0.0 && y <= 1.0)) {
        throw DomainError("moment_closed: y outside (0, 1]");
    }
    const double lambda = ms.ell + 1.0;
    double scale = 0.0;
    const double qden = scaled_source_denominator(lambda, spec, &scale);
    if (std::fabs(qden) < kResonanceGuard * std::max(scale, 1.0)) {
        throw ResonanceError("moment_closed: ell + 1 coincides with an eigenvalue");
    }
    const double pref = 12.0 / 7.0 / (1.0 - spec.y0);
    if (y <= spec.y0) {
        const double q0 = phi2_scaled(lambda, spec.y0);
        return pref * (-q0 / kPi) * phi1(lambda, y) / qden;
    }
    const double qy = phi2_scaled(lambda, y);
    return pref * phi1(lambda, spec.y0) * (-qy / kPi) / qden;
}

double moment_series(const MomentSpec& ms, const GreensEvaluator& ev, double y) {
    if (ev.modes.empty()) {
        throw DomainError("moment_series: evaluator has no modes");
    }
    const double lam_target = ms.ell + 1.0;
    const double lambda0 = ev.modes.front().lambda_n;
    if (lambda0 - lam_target <= kResonanceGuard * (1.0 + std::fabs(lambda0))) {
        throw DivergenceError("moment_series: lambda_0 <= ell + 1, energy integral diverges");
    }
    double sum = 0.0;
    for (const EigenMode& mode : ev.modes) {
        const double den = mode.lambda_n - lam_target;
        if (std::fabs(den) < kResonanceGuard * (1.0 + mode.lambda_n)) {
            throw ResonanceError("moment_series: ell + 1 hits eigenvalue n = " +
                                 std::to_string(mode.n));
        }
        sum += mode.A_hat_n / den * eigenfunction_g(mode, ev.spec, y);
    }
    return 12.0 / 7.0 * sum;
}

IdentityReport check_summation_formula(const GreensEvaluator& ev, double ell, double y,
                                       int n_sum) {
    const ProblemSpec& spec = ev.spec;
    if (n_sum < 1 || n_sum > static_cast<int>(ev.modes.size())) {
        throw DomainError("check_summation_formula: n_sum exceeds available modes");
    }
    const double y_min = std::min(y, spec.y0);
    const double y_max = std::max(y, spec.y0);
    const double lambda = ell + 1.0;

    double lhs = 0.0;
    if (spec.beta == 0.0) {
        // degenerate variant: g_n = phi1, Jacobi normalization; everything
        // collapses to y0 y P_n(y0) P_n(y) (2n + 9/4) / (lambda_n - ell - 1)
        JacobiIter p0(spec.y0);
        JacobiIter p1(y);
        for (int n = 0; n < n_sum; ++n) {
            const double den = lambda_of_nu(n) - lambda;
            if (std::fabs(den) < kResonanceGuard * (1.0 + lambda_of_nu(n))) {
                throw ResonanceError("summation formula: ell + 1 hits eigenvalue n = " +
                                     std::to_string(n));
            }
            lhs += spec.y0 * y * p0.value() * p1.value() * (2.0 * n + 2.25) / den;
            p0.advance();
            p1.advance();
        }
    } else {
        for (int n = 0; n < n_sum; ++n) {
            const EigenMode& mode = ev.modes[n];
            const double den = mode.lambda_n - lambda;
            if (std::fabs(den) < kResonanceGuard * (1.0 + mode.lambda_n)) {
                throw ResonanceError("summation formula: ell + 1 hits eigenvalue n = " +
                                     std::to_string(n));
            }
            const double ratio = phi2_scaled(mode.lambda_n, y_max) /
                                 phi2_scaled(mode.lambda_n, spec.y0);
            lhs += phi1(mode.lambda_n, spec.y0) * phi1(mode.lambda_n, y_min) * ratio /
                   (den * mode.C_n);
        }
    }

    double rhs = 0.0;
    if (spec.beta == 0.0) {
        // -phi1(ymin) phi2(ymax) / (4 y0^{1/4} (1-y0) W), all at ell + 1
        const double nu = nu_of_lambda(lambda);
        const double s = sinpi(nu);
        if (std::fabs(s) < kResonanceGuard) {
            throw ResonanceError("summation formula: ell + 1 degenerate at beta = 0");
        }
        const auto g1 = ln_gamma(nu + 2.25);
        const auto g2 = ln_gamma(nu + 1.0);
        const double rho = g1.sign * g2.sign * std::exp(g1.log_abs - g2.log_abs);
        const double w_scaled = -s * wronskian_scale(spec.y0);  // W / Gamma(1+nu)^2
        rhs = -phi1(lambda, y_min) * (-phi2_scaled(lambda, y_max) / kPi) * rho /
              (4.0 * std::pow(spec.y0, 0.25) * (1.0 - spec.y0) * w_scaled);
    } else {
        double scale = 0.0;
        const double qden = scaled_source_denominator(lambda, spec, &scale);
        if (std::fabs(qden) < kResonanceGuard * std::max(scale, 1.0)) {
            throw ResonanceError("summation formula: resonant denominator at ell + 1");
        }
        rhs = std::pow(spec.y0, 0.75) / (1.0 - spec.y0) * phi1(lambda, y_min) *
              (-phi2_scaled(lambda, y_max) / kPi) / qden;
    }
    return {lhs, rhs, rel_gap(lhs, rhs), n_sum};
}

IdentityReport check_summation_formula(const ProblemSpec& spec, double ell, double y,
                                       int n_sum) {
    validate(spec);
    return check_summation_formula(build_evaluator(spec, n_sum), ell, y, n_sum);
}

IdentityReport bilinear_generating(double y0, double y, double ell, int n_sum) {
    if (!(y0 > 0.0 && y0 < 1.0 && y > 0.0 && y < 1.0) || n_sum < 1) {
        throw DomainError("bilinear_generating: arguments out of range");
    }
    JacobiIter p0(y0);
    JacobiIter p1(y);
    double lhs = 0.0;
    for (int n = 0; n < n_sum; ++n) {
        check_generating_denominator(n, ell);
        lhs += (9.0 + 8.0 * n) * p0.value() * p1.value() / (4.0 * n * n + 9.0 * n + 3.0 - ell);
        p0.advance();
        p1.advance();
    }
    const MomentSpec ms = make_moment_spec(ell);
    const double lambda = ell + 1.0;
    const auto ga = ln_gamma(ms.a_ell);
    const auto gia = ln_gamma(1.0 - ms.a_ell);
    const double gamma_factor = ga.sign * gia.sign * std::exp(ga.log_abs - gia.log_abs);
    const double rhs = 16.0 / 5.0 * std::exp(ln_gamma(0.75).log_abs) * gamma_factor *
                       phi1(lambda, std::min(y, y0)) *
                       detail::phi2_or_limit(lambda, std::max(y, y0)) / (y * y0);
    return {lhs, rhs, rel_gap(lhs, rhs), n_sum};
}

IdentityReport linear_generating(double y, double ell, int n_sum) {
    if (!(y > 0.0 && y < 1.0) || n_sum < 2) {
        throw DomainError("linear_generating: arguments out of range");
    }
    JacobiIter p1(y);
    double partial = 0.0;
    double tail_mean = 0.0;
    int tail_count = 0;
    double ratio = kGammaC;  // Gamma(n + 9/4) / n!
    for (int n = 0; n < n_sum; ++n) {
        check_generating_denominator(n, ell);
        partial += (9.0 + 8.0 * n) * ratio * p1.value() /
                   (4.0 * n * n + 9.0 * n + 3.0 - ell);
        ratio *= (n + 2.25) / (n + 1.0);
        p1.advance();
        if (n >= n_sum / 2) {
            tail_mean += partial;
            ++tail_count;
        }
    }
    const double lhs = tail_mean / tail_count;
    const MomentSpec ms = make_moment_spec(ell);
    const double lambda = ell + 1.0;
    const auto ga = ln_gamma(ms.a_ell);
    const auto gia = ln_gamma(1.0 - ms.a_ell);
    const double gamma_factor = ga.sign * gia.sign * std::exp(ga.log_abs - gia.log_abs);
    const double rhs =
        kPi * std::sqrt(2.0) * gamma_factor * detail::phi2_or_limit(lambda, y) / y;
    return {lhs, rhs, rel_gap(lhs, rhs), n_sum};
}

}  // namespace shockspec
