#pragma once

// Plane curves through their L-evolutes: osculating circles as points of
// E^3_1, potential functions, reconstruction and Laguerre-congruent families.

#include <optional>
#include <span>
#include <vector>

#include "nullevo/null_curve.hpp"
#include "nullevo/plane.hpp"
#include "nullevo/scalar_fn.hpp"

namespace nullevo {

/// (gamma + u n, u) on gamma's grid, u = 1/k.
NullCurve l_evolute(const PlaneCurve& gamma);

/// Plane curve with L-evolute eps, parameterized by u = eps_3 on a uniform
/// grid. Orientation is chosen so that l_evolute of the result traces eps.
PlaneCurve plane_from_null(const NullCurve& eps);

/// Positive f on an s-grid together with the free data s0 (a node) and b0.
/// u = int_{s0} f + b0 is the radius of curvature, theta = int_{s0} 1/f.
struct PotentialFunction {
  SampledFn f;
  double s0 = 0.0;
  double b0 = 0.0;
  SampledFn theta;
};

/// Validates f > 0 and u nonvanishing away from s0, and fills theta.
PotentialFunction make_potential(SampledFn f, double s0, double b0);
/// s0 at the grid's left end.
PotentialFunction make_potential(SampledFn f, double b0);

SampledFn radius_of(const PotentialFunction& p);

struct PotentialReport {
  PotentialFunction potential;  // s0 = first node of the s-grid, b0 = u there
  SampledFn phi;                // t = phi(s), oriented arclength
  bool flipped = false;         // gamma's orientation was reversed to get u u' > 0
};

/// Potential of gamma. s is pseudo-arc with ds/dt = sign(u) sqrt|u'/u| and
/// takes the value s_first at gamma's first node; t is measured from there.
PotentialReport potential_of(const PlaneCurve& gamma, double s_first = 0.0);

/// f''/f - (f'^2 + 1) / (2 f^2) on the interior grid.
SampledFn torsion_from_potential(const PotentialFunction& p);

struct ReconstructionResult {
  NullCurve epsilon;  // pseudo-arc, on f's grid
  PlaneCurve gamma;   // arclength, uniform in t
  SampledFn phi;      // t = phi(s), phi(s0) = t0
  SampledFn u;
};

ReconstructionResult reconstruct(const PotentialFunction& p, double t0 = 0.0);

/// tau_lambda(s) = tau(s / sqrt|lambda|) / |lambda| on tau's grid scaled by
/// sqrt|lambda|.
SampledFn dilated_torsion(const SampledFn& tau, double lambda);

struct FamilyInit {
  double lambda = 1.0;
  double s1 = 0.0;  // in the dilated grid
  double f1 = 1.0;
  double fdot1 = 0.0;
  double b0 = 1.0;  // u at the left end of the kept range
};

struct FamilyMember {
  PotentialFunction potential;
  bool truncated = false;  // f reached zero before one end of the grid
};

/// Solves f'' = tau_lambda f + (f'^2 + 1) / (2 f) from (f, f')(s1). The range
/// is cut before the first node where f <= tol_degenerate.
FamilyMember congruent_family(const SampledFn& tau, const FamilyInit& init);

/// Independent members, in parallel; same results as calling
/// congruent_family on each.
std::vector<FamilyMember> congruent_family(const SampledFn& tau, std::span<const FamilyInit> inits);

/// Residual of f''' - 2 tau f' - tau' f on the interior grid, sup norm.
double third_order_residual(const PotentialFunction& p, const SampledFn& tau);

struct OlszakReport {
  SampledFn g;           // tan(theta / 2) on the pole-free run
  SampledFn schwarzian;  // S(g), interior of the run
  double r_plus = 0.0;   // max |S(g) - tau|
  double r_minus = 0.0;  // max |S(g) + tau|
  int holds = 0;         // +1: S(g) = tau, -1: S(g) = -tau, 0: neither within 1e-4
};

/// Picks the longest run of nodes with |cos(theta / 2)| >= 0.25.
OlszakReport olszak_check(const PotentialFunction& p);

struct EvolutePotential {
  SampledFn beta;           // s_eps = beta(s)
  SampledFn f_eps_along;    // f_eps(beta(s)) on the s-grid
  SampledFn tau_eps_along;  // tau_eps(beta(s)), interior of the s-grid
  PotentialFunction potential;  // f_eps on a uniform s_eps grid
  SampledFn tau_eps;            // tau_eps on the same grid, interior
};

/// Potential of the evolute. beta(s0) = beta0.
EvolutePotential evolute_potential(const PotentialFunction& p, double beta0 = 0.0);

/// Closed-form constant-torsion potential on the grid (s0 = grid start).
PotentialFunction constant_torsion_potential(double tau, double a, double b, double c, const Grid& grid,
                                             double b0);
/// Residual of the family constraint for (tau, a, b, c).
double constant_torsion_constraint(double tau, double a, double b, double c);

struct TaitReport {
  std::size_t samples = 0;
  double min_margin = 0.0;  // min over pairs of ||u_i| - |u_j|| - |c_i - c_j|
  std::size_t worst_i = 0, worst_j = 0;
  bool nested = false;
  GravesReport graves;
  bool passed = false;
};

/// Pairwise nesting of osculating circles over `samples` evenly spaced nodes
/// (64 to 256). Needs u' single-signed.
TaitReport tait_certify(const PlaneCurve& gamma, std::size_t samples = 64);

}  // namespace nullevo
