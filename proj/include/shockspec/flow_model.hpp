#pragma once

#include "shockspec/errors.hpp"

namespace shockspec {

// CODATA values, cgs.
inline constexpr double kSpeedOfLight = 2.99792458e10;        // cm/s
inline constexpr double kGravitationalConstant = 6.6743e-8;   // cm^3 g^-1 s^-2

// Dimensional parameters of one accretion column, cgs units throughout.
// The spectral machinery works in dimensionless (beta, y0, y) space; this is
// the only module that carries units.
struct ColumnGeometry {
    double r0 = 0.0;          // column radius, cm
    double sigma_par = 0.0;   // scattering cross section along the axis, cm^2
    double sigma_perp = 0.0;  // scattering cross section across the axis, cm^2
    double J = 0.0;           // electron flux, cm^-2 s^-1
    double M_star = 0.0;      // stellar mass, g
    double R_star = 0.0;      // stellar radius, cm
};

struct SonicConstants {
    double v_c = 0.0;   // flow speed at the sonic point, cm/s
    double x_st = 0.0;  // sonic point to stellar surface distance, cm
};

// Throws DomainError unless every field is strictly positive.
void validate(const ColumnGeometry& geom);

// v_c = (4/7) sqrt(2 G M* / R*),  x_st = r0/(2 sqrt(3)) sqrt(sigma_perp/sigma_par) ln(7/3).
SonicConstants sonic_constants(const ColumnGeometry& geom);

// y = (7/3)^(-1 + x/x_st), maps x in (-inf, x_st] onto (0, 1].
double y_of_x(const ColumnGeometry& geom, double x);

// Inverse of y_of_x; DomainError outside (0, 1].
double x_of_y(const ColumnGeometry& geom, double y);

// v / v_c = (7/4)(1 - y).
double velocity_ratio(double y);

// |r0^2 J^2 sigma_perp sigma_par - (3/4) c^2| / ((3/4) c^2).
double dynamical_constraint_residual(const ColumnGeometry& geom);

}  // namespace shockspec
