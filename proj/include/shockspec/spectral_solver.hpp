#pragma once

#include <string>
#include <vector>

#include "shockspec/errors.hpp"

namespace shockspec {

// Dimensionless inputs defining one column configuration.
struct ProblemSpec {
    double beta = 0.0;  // absorption strength at the source plane, >= 0
    double y0 = 0.5;    // source location in [1e-6, 1 - 1e-6]
};

inline constexpr double kYMin = 1e-6;
inline constexpr double kYMax = 1.0 - 1e-6;

// Throws DomainError on invalid fields.
void validate(const ProblemSpec& spec);

// One term of the eigenfunction expansion.
struct EigenMode {
    int n = 0;
    double lambda_n = 0.0;  // eigenvalue, strictly increasing in n
    double B_n = 0.0;       // downstream matching constant phi1(y0)/phi2(y0)
    double C_n = 0.0;       // quadratic normalization integral, > 0
    double A_hat_n = 0.0;   // dimensionless coefficient y0^{-3/4} g_n(y0) / C_n
};

// Immutable once built; safe to share across threads.
struct GreensEvaluator {
    ProblemSpec spec;
    std::vector<EigenMode> modes;
    int n_terms = 0;
};

struct RootSearchOptions {
    // With the shortcut on, beta = 0 returns the closed-form spectrum
    // lambda_n = 4 n^2 + 9 n + 4 directly instead of scanning.
    bool beta0_shortcut = true;
};

// W(lambda, y0) - (3 beta / 4 y0) phi1 phi2: zero exactly at the eigenvalues.
// Propagates DegenerateModeError from phi2 (beta > 0 near a degenerate mode).
double eigen_residual(double lambda, const ProblemSpec& spec);

// First `count` eigenvalues in increasing order, each bracketed inside its
// window between consecutive degenerate-spectrum points and refined by
// bisection to |dlambda| <= 1e-10 (1 + lambda). Throws MissedRootError if a
// window shows zero or multiple sign changes.
std::vector<double> find_eigenvalues(const ProblemSpec& spec, int count,
                                     const RootSearchOptions& opts = {});

// Eigenfunction g_n: phi1(lambda_n, y) upstream, B_n phi2(lambda_n, y)
// downstream, evaluated through scaled ratios so it stays finite for any mode
// index. y = 1 goes through the downstream limit.
double eigenfunction_g(const EigenMode& mode, const ProblemSpec& spec, double y);

// Quadratic normalization integral via the closed form: K(lambda_n, y0) for
// beta > 0, the Jacobi norm [n!/(9/4)_n]^2 (2n + 9/4)^{-1} for beta = 0.
// Throws NonpositiveResultError if the result is not positive.
double normalization(double lambda_n, const ProblemSpec& spec);

// Assembles modes n = 0 .. n_terms-1 with eigenvalues, matching constants,
// normalizations, and expansion coefficients.
GreensEvaluator build_evaluator(const ProblemSpec& spec, int n_terms);

// Dimensionless Green's function
//   f_hat = f_G pi r0^2 eps0^3 v_c / Ndot0
//         = (12/7) sum_n A_hat_n (eps/eps0)^{-lambda_n} g_n(y),
// truncated at n_terms; exactly 0 for e_ratio < 1 (no downscattering).
double greens_function(const GreensEvaluator& ev, double y, double e_ratio);

// Orthogonality-collapse residual of the injected delta:
//   integral y^{-3/4} [sum_n A_hat_n g_n(y)] g_m(y) dy - y0^{-3/4} g_m(y0).
double delta_completeness_check(const GreensEvaluator& ev, int m);

// Tabulated source spectrum j(eps0) on a strictly increasing positive grid.
// Energies are in units of the reference injection energy (dimensionless).
struct SourceSpectrum {
    std::vector<double> epsilon0;
    std::vector<double> j;
};

// Parses the two-column text format: `epsilon0 j` per line, '#' comments.
// Throws GridError on malformed, non-increasing, or nonpositive input.
SourceSpectrum parse_source_spectrum(const std::string& text);
SourceSpectrum load_source_spectrum(const std::string& path);

// Planck-form source j(e) = e^2 / (exp(e/theta) - 1) on a log grid.
SourceSpectrum make_planck_source(double theta, double emin, double emax, int points);

// Convolution of the Green's function with a tabulated source:
//   f(y0, y, eps) = integral j(eps0) f_G(y0, y, eps0, eps)/Ndot0 d eps0,
// trapezoid over the source grid points with eps0 <= eps (the integrand
// vanishes above eps). Output convention: f_hat / (pi eps0^3) summed, i.e.
// the result equals f * pi r0^2 v_c in physical units.
double convolve_spectrum(const GreensEvaluator& ev, const SourceSpectrum& source, double y,
                         double epsilon);
double convolve_spectrum(const ProblemSpec& spec, const SourceSpectrum& source, double y,
                         double epsilon, int n_terms = 20);

namespace detail {

// Scaled eigen-residual: residual / (-Gamma(nu+1)^2), bounded in nu, same
// roots. The root finder works on this everywhere.
double scaled_residual(double nu, const ProblemSpec& spec);

// Root of the scaled residual inside (nu_lo, nu_hi); MissedRootError if the
// scan does not find exactly one sign change (beta > 0).
double window_root(const ProblemSpec& spec, double nu_lo, double nu_hi);

}  // namespace detail

}  // namespace shockspec
