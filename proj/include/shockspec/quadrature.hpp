#pragma once

#include <functional>
#include <vector>

#include "shockspec/errors.hpp"

namespace shockspec {

struct QuadratureResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    long evaluations = 0;
};

// Adaptive quadrature did not reach the requested tolerance; carries the best
// estimate obtained.
struct ToleranceError : std::runtime_error {
    QuadratureResult best;
    ToleranceError(const std::string& what, QuadratureResult best_so_far)
        : std::runtime_error(what), best(best_so_far) {}
};

struct NonFiniteIntegrandError : std::runtime_error {
    explicit NonFiniteIntegrandError(const std::string& what) : std::runtime_error(what) {}
};

// integral_0^1 y^{-3/4} f(y) dy.
//
// The substitution u = y^{1/4} (dy = 4 u^3 du) turns the weight into 4 f(u^4),
// removing the left-endpoint singularity; a (G7, K15) pair with adaptive
// bisection then handles integrands with steep structure near y = 1. Panels
// stop at y = 1 - 1e-14. The tolerance is relative to the accumulated |panel|
// sum, so near-cancelling (orthogonality-type) integrands converge on their
// absolute scale. Panel contributions are summed in fixed left-to-right order.
//
// interior_breaks: known kink locations in y (e.g. the source position) used
// to seed the initial panel layout.
//
// Throws ToleranceError (carrying the best estimate), NonFiniteIntegrandError,
// or DomainError for rel_tol outside [1e-12, 1e-3].
QuadratureResult integrate_weighted(const std::function<double(double)>& f, double rel_tol,
                                    const std::vector<double>& interior_breaks = {});

}  // namespace shockspec
