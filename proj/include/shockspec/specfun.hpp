#pragma once

#include "shockspec/errors.hpp"

namespace shockspec::specfun {

// Crossover between the regular hypergeometric series (y <= y_switch) and the
// (1-y)-expansion of the logarithmic c = a + b case (y >= y_switch). Both
// branches converge geometrically at the crossover.
inline constexpr double y_switch = 0.5;

struct LnGammaResult {
    double log_abs;  // ln|Gamma(x)|
    int sign;        // sign of Gamma(x), +1 or -1
};

// ln|Gamma(x)| and the sign of Gamma(x). Throws PoleError at 0, -1, -2, ...
LnGammaResult ln_gamma(double x);

// psi(x) = Gamma'(x)/Gamma(x). Throws PoleError at nonpositive integers.
double digamma(double x);

// (a)_0 = 1, (a)_n = a (a+1) ... (a+n-1).
double pochhammer(double a, int n);

// Gauss series sum (a)_n (b)_n / ((c)_n n!) y^n for y in [0, y_switch].
// Throws DomainError outside the branch range, PoleError if c is a nonpositive
// integer, ConvergenceError if 200 terms do not reach machine tolerance.
double hyp2f1(double a, double b, double c, double y);

// F(a, b; a+b; y) for y in [y_switch, 1) via the logarithmic expansion
// (Abramowitz & Stegun 15.3.10). Throws PoleError when a or b is a nonpositive
// integer (the Gamma(a)Gamma(b) prefactor; use the terminating series instead).
double hyp2f1_logcase(double a, double b, double y);

// F(a, b; c; 1) = Gamma(c)Gamma(c-a-b) / (Gamma(c-a)Gamma(c-b)), requires
// c - a - b > 0; DomainError otherwise (c = a + b is the logarithmic case).
double gauss_at_one(double a, double b, double c);

// Jacobi polynomial P_n^{(5/4,0)}(1-2y) = ((9/4)_n / n!) F(-n, 9/4+n; 9/4; y).
// Terminating series for small n, ascending three-term recurrence otherwise.
double jacobi_p(int n, double y);

// sin(pi x), cos(pi x) with exact range reduction (accurate for large x).
double sinpi(double x);
double cospi(double x);

}  // namespace shockspec::specfun
