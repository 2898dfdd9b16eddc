#pragma once

#include "shockspec/errors.hpp"
#include "shockspec/spectral_solver.hpp"

namespace shockspec {

// Energy-moment order ell and the associated lower spectral parameter
// a_ell = (9 - sqrt(33 + 16 ell))/8, i.e. a evaluated at lambda = ell + 1.
struct MomentSpec {
    double ell = 0.0;
    double a_ell = 0.0;
};

// Throws DomainError when 33 + 16 ell < 0.
MomentSpec make_moment_spec(double ell);

// Closed-vs-series comparison record for one identity check.
struct IdentityReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double rel_gap = 0.0;  // |lhs - rhs| / max(|lhs|, |rhs|, tiny)
    int terms_used = 0;
};

// Dimensionless energy moment I_ell in closed form: matched phi1/phi2 branches
// at lambda = ell + 1 with the source-strength denominator
// 3 beta phi1 phi2 - 4 y0 W. Convention mirrors the Green's function: the
// common factor Ndot0 eps0^{ell-2} / (pi v_c r0^2) is stripped, keeping 12/7.
// Throws ResonanceError when the denominator vanishes (ell + 1 hits an
// eigenvalue of the configuration).
double moment_closed(const MomentSpec& ms, const ProblemSpec& spec, double y);

// Same moment from the eigenfunction series (12/7) sum A_hat_n g_n /
// (lambda_n - ell - 1), truncated at the evaluator's modes. Throws
// DivergenceError when lambda_0 <= ell + 1 (the energy integral diverges),
// ResonanceError when some lambda_n equals ell + 1.
double moment_series(const MomentSpec& ms, const GreensEvaluator& ev, double y);

// Eigenmode summation identity: truncated sum of
//   phi1(l_n,y0) phi1(l_n,ymin) phi2(l_n,ymax) / (phi2(l_n,y0) (l_n-ell-1) C_n)
// against its closed form. For beta = 0 the degenerate variant (g_n = phi1,
// Jacobi normalization) is used. n_sum eigenvalues are located internally.
IdentityReport check_summation_formula(const ProblemSpec& spec, double ell, double y, int n_sum);

// Same check reusing a prebuilt evaluator with at least n_sum modes.
IdentityReport check_summation_formula(const GreensEvaluator& ev, double ell, double y,
                                       int n_sum);

// Bilinear Jacobi generating function:
//   sum (9+8n) P_n(1-2y0) P_n(1-2y) / (4n^2+9n+3-ell)
//     = (16/5) G(3/4) G(a_ell)/G(1-a_ell) phi1(ell+1,ymin) phi2(ell+1,ymax)/(y y0).
IdentityReport bilinear_generating(double y0, double y, double ell, int n_sum);

// Linear Jacobi generating function:
//   sum (9+8n) G(n+9/4)/((4n^2+9n+3-ell) n!) P_n(1-2y)
//     = pi sqrt(2) G(a_ell)/G(1-a_ell) phi2(ell+1,y)/y.
// The series is conditionally convergent (terms decay like n^{-1/4} with a
// bounded oscillation), so the reported lhs is the mean of the partial sums
// over the second half of the range, which converges to the same limit.
IdentityReport linear_generating(double y, double ell, int n_sum);

namespace detail {

// phi2 with the degenerate limit applied: at a = -n the downstream solution
// is kappa_n phi1 with kappa_n = Gamma(n+9/4)/(Gamma(9/4) Gamma(-n-5/4)).
double phi2_or_limit(double lambda, double y);

}  // namespace detail

}  // namespace shockspec
