#pragma once

// Closed-form example curves and potentials, shared by the CLI and the tests.

#include "nullevo/laguerre.hpp"
#include "nullevo/null_curve.hpp"
#include "nullevo/plane.hpp"

namespace nullevo::builtin {

/// (t/2)(sin ln4t + cos ln4t, sin ln4t - cos ln4t), arclength t > 0.
Vec2 log_spiral_at(double t);
PlaneCurve log_spiral(const Grid& t);

/// (int_0^t cos(v^2/2), int_0^t sin(v^2/2)), arclength, 0 < t <= 6.
Vec2 cornu_at(double t);
PlaneCurve cornu(const Grid& t);

/// Plane curve of the constant potential 1/sqrt(2|tau|), arclength t > 0
/// (the unit-circle involute for tau = -1/2).
Vec2 circle_involute_at(double t, double tau = -0.5);
PlaneCurve circle_involute(const Grid& t, double tau = -0.5);

/// (a cos p, b sin p), generic parameter.
PlaneCurve ellipse(const Grid& p, double a = 2.0, double b = 1.0);

/// Log-spiral L-evolute in pseudo-arc s.
MinkVec3 log_spiral_levolute_at(double s);

/// f = s/2 with u = s^2/4 (s0 -> 0+ limit).
PotentialFunction half_s_potential(const Grid& s);
/// f = 8/s^3 with u = -4/s^2 (Cornu spiral, reversed orientation).
PotentialFunction cornu_potential(const Grid& s);
/// f = sqrt(s) with u = (2/3) s^(3/2).
PotentialFunction sqrt_potential(const Grid& s);
/// Catalog parameters (a, b, c) of the helix potential for tau, with u equal
/// to the helix's third component.
struct TorsionParams {
  double a, b, c;
};
TorsionParams catalog_params(double tau);
PotentialFunction catalog_potential(double tau, const Grid& s);

}  // namespace nullevo::builtin
