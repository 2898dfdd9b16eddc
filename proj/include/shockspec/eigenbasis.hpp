#pragma once

#include "shockspec/errors.hpp"

namespace shockspec {

// Parameter bundle of the separated spatial equation:
//   a = (9 - sqrt(17 + 16 lambda))/8,  b = (9 + sqrt(17 + 16 lambda))/8,  c = 9/4,
// so a + b = c always (the logarithmic hypergeometric case at y = 1).
struct SpectralParams {
    double lambda = 0.0;
    double a = 0.0;
    double b = 0.0;
    double c = 2.25;
};

// Throws DomainError for lambda < -17/16 (complex parameters).
SpectralParams spectral_params(double lambda);

// Degree variable nu = -a = (sqrt(17 + 16 lambda) - 9)/8 and its inverse
// lambda = 4 nu^2 + 9 nu + 4. Degenerate modes sit at integer nu >= 0.
double nu_of_lambda(double lambda);
double lambda_of_nu(double nu);

// Upstream-regular solution phi1 = y F(a, b; 9/4; y); phi1/y -> 1 as y -> 0.
// y in (0,1); y = 1 is admitted only on the polynomial (integer nu) branch.
double phi1(double lambda, double y);

// Companion solution phi1* = y^{-1/4} F(a - 5/4, b - 5/4; -1/4; y).
double phi1_star(double lambda, double y);

// Downstream-finite combination of phi1 and phi1*; finite as y -> 1 where both
// constituents diverge logarithmically. y in (0, 1]; y = 1 returns the limit
// pi [cot(pi a) + cot(pi b)] / (Gamma(a) Gamma(1-b)).
// Throws DegenerateModeError when a is within 1e-8 of a nonpositive integer
// (phi2 is proportional to phi1 there; use the beta = 0 pathway).
double phi2(double lambda, double y);

// Scaled downstream solution, bounded in nu:
//   phi2(lambda, y) = -Gamma(nu+1) Gamma(nu+9/4) / pi * phi2_scaled(lambda, y).
// Raw phi2 overflows for nu beyond roughly 290; ratios of phi2 at equal lambda
// should always be formed from this function.
double phi2_scaled(double lambda, double y);

// Jacobi-type functions of general real degree (the two recurrence families):
//   jacobi_first(nu, y)  = P_nu^{(5/4,0)}(1-2y)
//   jacobi_star(nu, y)   = P_{nu+5/4}^{(-5/4,0)}(1-2y)
// Evaluated directly for nu <= 6, by the ascending degree recurrence above.
double jacobi_first(double nu, double y);
double jacobi_star(double nu, double y);

// Closed-form Wronskian phi1 phi2' - phi2 phi1':
//   W = (5/4) Gamma(1-a)/(Gamma(a) Gamma(-1/4)) y^{-1/4}/(1-y),
// exactly 0 at degenerate modes. Throws PoleError at lambda = -1 (Gamma(0)).
double wronskian(double lambda, double y);

enum class Basis { phi1, phi2 };

// d phi/d lambda by central differences with Richardson extrapolation,
// h = 1e-5 (1 + |lambda|).
double dphi_dlambda(Basis which, double lambda, double y);

namespace detail {

// log-derivatives of |jacobi_first| and |phi2_scaled| with respect to lambda
// (finite differences, Richardson, automatic step shrink on sign flips).
struct ScaledLogDerivs {
    double dln_p = 0.0;   // d ln|P_nu| / d lambda
    double dln_q = 0.0;   // d ln|phi2_scaled| / d lambda
};
ScaledLogDerivs scaled_log_derivs(double lambda, double y);

}  // namespace detail

}  // namespace shockspec
