#include "shockspec/eigenbasis.hpp"

#include <cmath>
#include <string>

#include "shockspec/specfun.hpp"

namespace shockspec {

namespace {

using specfun::cospi;
using specfun::ln_gamma;
using specfun::sinpi;

constexpr double kPi = 3.14159265358979323846;
constexpr double kC = 2.25;                      // c = 9/4
constexpr double kDegenerateGuard = 1e-8;        // dist(a, nonpositive integers)
constexpr double kNuDirect = 6.0;                // direct series below, march above
const double kGammaC = std::exp(ln_gamma(kC).log_abs);        // Gamma(9/4)
const double kGammaM14 = -std::exp(ln_gamma(-0.25).log_abs);  // Gamma(-1/4) < 0

bool near_integer(double x, double tol = kDegenerateGuard) {
    return std::fabs(x - std::round(x)) < tol;
}

// Gamma(p)/Gamma(q) with signs; an exact pole in the denominator gives an
// exact zero (1/Gamma vanishes at nonpositive integers).
double gamma_ratio(double p, double q) {
    if (q <= 0.0 && q == std::floor(q)) {
        return 0.0;
    }
    const auto gp = ln_gamma(p);
    const auto gq = ln_gamma(q);
    return gp.sign * gq.sign * std::exp(gp.log_abs - gq.log_abs);
}

// Regular Gauss series; internal cap is generous since callers guarantee
// geometric convergence (y <= 1/2 here).
double gauss_series(double a, double b, double c, double y) {
    double term = 1.0;
    double sum = 1.0;
    int small_streak = 0;
    for (int n = 0; n < 400; ++n) {
        term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * y;
        sum += term;
        if (term == 0.0) {
            return sum;
        }
        if (std::fabs(term) <= 1e-16 * std::fabs(sum)) {
            if (++small_streak >= 2) {
                return sum;
            }
        } else {
            small_streak = 0;
        }
    }
    throw ConvergenceError("eigenbasis: regular series cap exceeded");
}

// S(a, b, y) = sum_n (a)_n (b)_n / (n!)^2 [h_n - ln(1-y)] (1-y)^n, the
// logarithmic expansion of F(a, b; a+b; y) without its Gamma prefactor.
double logcase_sum(double a, double b, double y) {
    const double z = 1.0 - y;
    const double lnz = std::log(z);
    double A = 1.0;
    double h = 2.0 * specfun::digamma(1.0) - specfun::digamma(a) - specfun::digamma(b);
    double sum = h - lnz;
    double zk = 1.0;
    int small_streak = 0;
    for (int n = 0; n < 400; ++n) {
        A *= (a + n) * (b + n) / ((n + 1.0) * (n + 1.0));
        h += 2.0 / (n + 1.0) - 1.0 / (a + n) - 1.0 / (b + n);
        zk *= z;
        const double term = A * (h - lnz) * zk;
        sum += term;
        if (std::fabs(term) <= 1e-16 * std::fabs(sum)) {
            if (++small_streak >= 2) {
                return sum;
            }
        } else {
            small_streak = 0;
        }
    }
    throw ConvergenceError("eigenbasis: logarithmic series cap exceeded");
}

// P_m^{(5/4,0)}(1-2y) at integer degree (series or stable recurrence).
double jacobi_poly_int(int m, double y) {
    return specfun::jacobi_p(m, y);
}

// P_m^{(-5/4,0)}(1-2y) at integer degree m = nu + 5/4.
double jacobi_star_poly_int(int m, double y) {
    double term = 1.0;
    double sum = 1.0;
    for (int k = 0; k < m; ++k) {
        term *= (k - m) * (m - 1.25 + k) / ((-0.25 + k) * (k + 1.0)) * y;
        sum += term;
    }
    return gamma_ratio(m - 0.25, m + 1.0) / kGammaM14 * sum;
}

double p_first_direct(double nu, double y) {
    if (near_integer(nu) && std::round(nu) >= 0.0) {
        return jacobi_poly_int(static_cast<int>(std::round(nu)), y);
    }
    const double a = -nu;
    const double b = nu + kC;
    if (y <= specfun::y_switch) {
        return gamma_ratio(nu + kC, nu + 1.0) / kGammaC * gauss_series(a, b, kC, y);
    }
    // Gamma prefactors collapse: P-normalization times G(c)/(G(a)G(b)) equals
    // 1/(G(nu+1)G(-nu)) = -sin(pi nu)/pi.
    return -sinpi(nu) / kPi * logcase_sum(a, b, y);
}

double p_star_direct(double nu, double y) {
    if (near_integer(nu + 1.25) && std::round(nu + 1.25) >= 0.0) {
        return jacobi_star_poly_int(static_cast<int>(std::round(nu + 1.25)), y);
    }
    const double a = -nu - 1.25;
    const double b = nu + 1.0;
    if (y <= specfun::y_switch) {
        return gamma_ratio(nu + 1.0, nu + kC) / kGammaM14 * gauss_series(a, b, -0.25, y);
    }
    // combined prefactor: 1/(G(nu+9/4) G(-nu-5/4)) = -sin(pi(nu+5/4))/pi
    return -sinpi(nu + 1.25) / kPi * logcase_sum(a, b, y);
}

// Scaled downstream solution Phi2(nu, y); entire in nu, finite at y = 1,
// where it takes the constant value -1/sqrt(2) for every nu.
double phi2_scaled_direct(double nu, double y) {
    if (y == 1.0) {
        return -std::sqrt(0.5);
    }
    const bool deg_first = near_integer(nu) && std::round(nu) >= 0.0;
    const bool deg_star = near_integer(nu + 1.25) && std::round(nu + 1.25) >= 0.0;
    if (y <= specfun::y_switch || deg_first || deg_star) {
        // the polynomial branches of p / p_star absorb the degenerate factors
        return y * sinpi(nu + 1.25) * p_first_direct(nu, y) -
               std::pow(y, -0.25) * sinpi(nu) * p_star_direct(nu, y);
    }
    // z-expansion of both constituents; the ln(1-y) coefficients cancel
    // identically for a + b = c, so combine the digamma sums directly.
    const double a = -nu;
    const double b = nu + kC;
    const double s1 = logcase_sum(a, b, y);
    const double s2 = logcase_sum(a - 1.25, b - 1.25, y);
    return -(1.0 / kPi) * sinpi(nu) * sinpi(nu + 1.25) * (y * s1 - std::pow(y, -0.25) * s2);
}

struct Triple {
    double p = 0.0;       // P_nu^{(5/4,0)}
    double p_star = 0.0;  // P_{nu+5/4}^{(-5/4,0)}
    double q = 0.0;       // phi2_scaled
};

// Base values for the degree march, y in (0, 1). For y > 1/2 the log-branch of
// one family degrades near its own poles (frac(nu) near 0 for p, near 3/4 for
// p_star), so the affected member is recovered from the other two.
Triple triple_direct(double nu, double y) {
    Triple t;
    t.q = phi2_scaled_direct(nu, y);
    const double frac = nu - std::floor(nu);
    const double d_first = std::min(frac, 1.0 - frac);
    const double d_star = std::fabs(frac - 0.75);
    if (y <= specfun::y_switch) {
        t.p = p_first_direct(nu, y);
        t.p_star = p_star_direct(nu, y);
        return t;
    }
    if (d_first < 0.05 && nu >= -0.5) {
        t.p_star = p_star_direct(nu, y);
        t.p = (t.q + std::pow(y, -0.25) * sinpi(nu) * t.p_star) / (y * sinpi(nu + 1.25));
    } else if (d_star < 0.05) {
        t.p = p_first_direct(nu, y);
        t.p_star = (y * sinpi(nu + 1.25) * t.p - t.q) * std::pow(y, 0.25) / sinpi(nu);
    } else {
        t.p = p_first_direct(nu, y);
        t.p_star = p_star_direct(nu, y);
    }
    return t;
}

// Degree recurrence coefficients (alpha = 5/4, beta = 0, x = 1 - 2y):
//   L(m) f(m+1) = M(m) f(m) - R(m) f(m-1)      for P and P*;
//   L(m) q(m+1) = -M(m) q(m) - R(m) q(m-1)     for the scaled phi2.
void recurrence_coeffs(double m, double x, double& L, double& M, double& R) {
    L = 2.0 * (m + 1.0) * (m + kC) * (2.0 * m + 1.25);
    M = (2.0 * m + kC) * ((2.0 * m + 1.25) * (2.0 * m + 3.25) * x + 25.0 / 16.0);
    R = 2.0 * m * (m + 1.25) * (2.0 * m + 3.25);
}

Triple scaled_triple(double nu, double y) {
    if (nu <= kNuDirect) {
        return triple_direct(nu, y);
    }
    const double frac = nu - std::floor(nu);
    const double base = frac + 4.0;
    const int steps = static_cast<int>(std::lround(nu - base));
    const double x = 1.0 - 2.0 * y;
    Triple lo = triple_direct(base, y);
    Triple hi = triple_direct(base + 1.0, y);
    double m = base + 1.0;
    for (int k = 0; k < steps - 1; ++k) {
        double L, M, R;
        recurrence_coeffs(m, x, L, M, R);
        const Triple next{(M * hi.p - R * lo.p) / L,
                          (M * hi.p_star - R * lo.p_star) / L,
                          (-M * hi.q - R * lo.q) / L};
        lo = hi;
        hi = next;
        m += 1.0;
    }
    return hi;
}

void check_lambda_domain(double lambda) {
    if (!(lambda >= -17.0 / 16.0)) {
        throw DomainError("lambda below -17/16: complex spectral parameters");
    }
}

void check_y_open(double y) {
    if (!(y > 0.0 && y < 1.0)) {
        throw DomainError("y outside (0, 1)");
    }
}

bool degenerate_a(double lambda) {
    const double a = spectral_params(lambda).a;
    return near_integer(a) && std::round(a) <= 0.0;
}

}  // namespace

SpectralParams spectral_params(double lambda) {
    check_lambda_domain(lambda);
    const double s = std::sqrt(17.0 + 16.0 * lambda);
    return {lambda, (9.0 - s) / 8.0, (9.0 + s) / 8.0, kC};
}

double nu_of_lambda(double lambda) {
    check_lambda_domain(lambda);
    return (std::sqrt(17.0 + 16.0 * lambda) - 9.0) / 8.0;
}

double lambda_of_nu(double nu) {
    return 4.0 * nu * nu + 9.0 * nu + 4.0;
}

double jacobi_first(double nu, double y) {
    check_y_open(y);
    return scaled_triple(nu, y).p;
}

double jacobi_star(double nu, double y) {
    check_y_open(y);
    return scaled_triple(nu, y).p_star;
}

double phi1(double lambda, double y) {
    const auto sp = spectral_params(lambda);
    const double nu = -sp.a;
    if (near_integer(nu) && std::round(nu) >= 0.0) {
        // terminating polynomial, valid on all of (0, 1]
        if (!(y > 0.0 && y <= 1.0)) {
            throw DomainError("phi1: y outside (0, 1]");
        }
        const int m = static_cast<int>(std::round(nu));
        return y * gamma_ratio(m + 1.0, m + kC) * kGammaC * jacobi_poly_int(m, y);
    }
    check_y_open(y);
    if (nu <= kNuDirect) {
        if (y <= specfun::y_switch) {
            return y * gauss_series(sp.a, sp.b, kC, y);
        }
        const auto ga = ln_gamma(sp.a);
        const auto gb = ln_gamma(sp.b);
        const double pref =
            ga.sign * gb.sign * std::exp(ln_gamma(kC).log_abs - ga.log_abs - gb.log_abs);
        return y * pref * logcase_sum(sp.a, sp.b, y);
    }
    return y * kGammaC * gamma_ratio(nu + 1.0, nu + kC) * scaled_triple(nu, y).p;
}

double phi1_star(double lambda, double y) {
    const auto sp = spectral_params(lambda);
    const double nu = -sp.a;
    const double as = sp.a - 1.25;
    const double bs = sp.b - 1.25;
    // terminating cases: either parameter a nonpositive integer makes the
    // series a polynomial. Short polynomials are summed directly; high
    // degenerate degrees go through the recurrence path below (the
    // alternating sum degrades with degree).
    const bool as_poly = near_integer(as) && std::round(as) <= 0.0;
    const bool bs_poly = near_integer(bs) && std::round(bs) <= 0.0;
    if (as_poly || bs_poly) {
        const int m = static_cast<int>(std::round(as_poly ? -as : -bs));
        if (m <= 8) {
            if (!(y > 0.0 && y <= 1.0)) {
                throw DomainError("phi1_star: y outside (0, 1]");
            }
            double term = 1.0;
            double sum = 1.0;
            const double other = as_poly ? bs : as;
            for (int k = 0; k < m; ++k) {
                term *= (k - m) * (other + k) / ((-0.25 + k) * (k + 1.0)) * y;
                sum += term;
            }
            return std::pow(y, -0.25) * sum;
        }
    }
    check_y_open(y);
    if (nu <= kNuDirect) {
        if (y <= specfun::y_switch) {
            return std::pow(y, -0.25) * gauss_series(as, bs, -0.25, y);
        }
        const auto ga = ln_gamma(as);
        const auto gb = ln_gamma(bs);
        const double pref =
            ga.sign * gb.sign * std::exp(ln_gamma(-0.25).log_abs - ga.log_abs - gb.log_abs);
        return std::pow(y, -0.25) * pref * logcase_sum(as, bs, y);
    }
    return std::pow(y, -0.25) * kGammaM14 * gamma_ratio(nu + kC, nu + 1.0) *
           scaled_triple(nu, y).p_star;
}

double phi2_scaled(double lambda, double y) {
    check_lambda_domain(lambda);
    if (!(y > 0.0 && y <= 1.0)) {
        throw DomainError("phi2_scaled: y outside (0, 1]");
    }
    if (y == 1.0) {
        return -std::sqrt(0.5);
    }
    return scaled_triple(nu_of_lambda(lambda), y).q;
}

double phi2(double lambda, double y) {
    check_lambda_domain(lambda);
    if (degenerate_a(lambda)) {
        throw DegenerateModeError("phi2: degenerate mode (a within guard of a nonpositive "
                                  "integer) at lambda = " +
                                  std::to_string(lambda));
    }
    const double nu = nu_of_lambda(lambda);
    if (near_integer(nu + 1.0) && std::round(nu + 1.0) == 0.0) {
        throw PoleError("phi2: pole at lambda = -1");
    }
    const double q = phi2_scaled(lambda, y);
    const auto g1 = ln_gamma(nu + 1.0);
    const auto g2 = ln_gamma(nu + kC);
    return -g1.sign * g2.sign * std::exp(g1.log_abs + g2.log_abs) / kPi * q;
}

double wronskian(double lambda, double y) {
    check_lambda_domain(lambda);
    check_y_open(y);
    const double nu = nu_of_lambda(lambda);
    if (near_integer(nu) && std::round(nu) >= 0.0) {
        return 0.0;  // 1/Gamma(a) vanishes at the degenerate modes
    }
    if (near_integer(nu + 1.0, 1e-12) && std::round(nu + 1.0) == 0.0) {
        throw PoleError("wronskian: pole at lambda = -1");
    }
    // (5/4) G(1+nu)/(G(-nu) G(-1/4)) with 1/G(-nu) = -G(1+nu) sin(pi nu)/pi
    const auto g = ln_gamma(1.0 + nu);
    const double core = -1.25 * std::exp(2.0 * g.log_abs) * sinpi(nu) / (kPi * kGammaM14);
    return core * std::pow(y, -0.25) / (1.0 - y);
}

double dphi_dlambda(Basis which, double lambda, double y) {
    const auto eval = [&](double lam) {
        return which == Basis::phi1 ? phi1(lam, y) : phi2(lam, y);
    };
    const double h = 1e-5 * (1.0 + std::fabs(lambda));
    const auto central = [&](double hh) { return (eval(lambda + hh) - eval(lambda - hh)) / (2.0 * hh); };
    const double d1 = central(h);
    const double d2 = central(0.5 * h);
    return (4.0 * d2 - d1) / 3.0;
}

namespace detail {

ScaledLogDerivs scaled_log_derivs(double lambda, double y) {
    auto sample = [&](double lam) {
        const Triple t = scaled_triple(nu_of_lambda(lam), y);
        return t;
    };
    double h = 1e-5 * (1.0 + std::fabs(lambda));
    for (int attempt = 0; attempt < 6; ++attempt) {
        bool ok = true;
        double d1p = 0.0, d1q = 0.0, d2p = 0.0, d2q = 0.0;
        for (int half = 0; half < 2 && ok; ++half) {
            const double hh = half == 0 ? h : 0.5 * h;
            const Triple plus = sample(lambda + hh);
            const Triple minus = sample(lambda - hh);
            if (plus.p * minus.p <= 0.0 || plus.q * minus.q <= 0.0) {
                ok = false;
                break;
            }
            const double dp = (std::log(std::fabs(plus.p)) - std::log(std::fabs(minus.p))) / (2.0 * hh);
            const double dq = (std::log(std::fabs(plus.q)) - std::log(std::fabs(minus.q))) / (2.0 * hh);
            if (half == 0) {
                d1p = dp;
                d1q = dq;
            } else {
                d2p = dp;
                d2q = dq;
            }
        }
        if (ok) {
            return {(4.0 * d2p - d1p) / 3.0, (4.0 * d2q - d1q) / 3.0};
        }
        h /= 8.0;
    }
    throw ConvergenceError("scaled_log_derivs: sign flip persists across shrinking stencils");
}

}  // namespace detail

}  // namespace shockspec
