#include "shockspec/flow_model.hpp"

#include <cmath>

namespace shockspec {

namespace {
const double kLn73 = std::log(7.0 / 3.0);
}

void validate(const ColumnGeometry& geom) {
    if (!(geom.r0 > 0.0 && geom.sigma_par > 0.0 && geom.sigma_perp > 0.0 && geom.J > 0.0 &&
          geom.M_star > 0.0 && geom.R_star > 0.0)) {
        throw DomainError("ColumnGeometry: all fields must be strictly positive");
    }
}

SonicConstants sonic_constants(const ColumnGeometry& geom) {
    validate(geom);
    SonicConstants sc;
    sc.v_c = 4.0 / 7.0 * std::sqrt(2.0 * kGravitationalConstant * geom.M_star / geom.R_star);
    sc.x_st = geom.r0 / (2.0 * std::sqrt(3.0)) * std::sqrt(geom.sigma_perp / geom.sigma_par) * kLn73;
    return sc;
}

double y_of_x(const ColumnGeometry& geom, double x) {
    const double x_st = sonic_constants(geom).x_st;
    if (x > x_st) {
        throw DomainError("y_of_x: x beyond the stellar surface (x > x_st)");
    }
    return std::exp(kLn73 * (-1.0 + x / x_st));
}

double x_of_y(const ColumnGeometry& geom, double y) {
    if (!(y > 0.0 && y <= 1.0)) {
        throw DomainError("x_of_y: y outside (0, 1]");
    }
    const double x_st = sonic_constants(geom).x_st;
    return x_st * (1.0 + std::log(y) / kLn73);
}

double velocity_ratio(double y) {
    if (!(y >= 0.0 && y <= 1.0)) {
        throw DomainError("velocity_ratio: y outside [0, 1]");
    }
    return 1.75 * (1.0 - y);
}

double dynamical_constraint_residual(const ColumnGeometry& geom) {
    validate(geom);
    const double lhs = geom.r0 * geom.r0 * geom.J * geom.J * geom.sigma_perp * geom.sigma_par;
    const double rhs = 0.75 * kSpeedOfLight * kSpeedOfLight;
    return std::fabs(lhs - rhs) / rhs;
}

}  // namespace shockspec
