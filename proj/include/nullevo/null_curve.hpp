#pragma once

#include <string>
#include <vector>

#include "nullevo/minkowski.hpp"
#include "nullevo/scalar_fn.hpp"

namespace nullevo {

enum class NullParam { generic, pseudo_arc };

/// Sampled curve in E^3_1, expected (not required) to be null.
struct NullCurve {
  Grid grid;
  std::vector<MinkVec3> points;
  NullParam kind = NullParam::generic;
  std::string label;

  NullCurve(Grid grid, std::vector<MinkVec3> points, NullParam kind = NullParam::generic,
            std::string label = {});

  std::size_t size() const { return points.size(); }
  SampledFn component(int c) const;
  /// Nodes [first, first + n), keeping the tag.
  NullCurve slice(std::size_t first, std::size_t n) const;
};

struct NullReport {
  double null_residual = 0.0;        // max |e'.e'| / |e'|^2 (Euclidean), interior
  double min_gram = 0.0;             // min Euclidean Gram determinant of e', e''
  double pseudo_arc_residual = 0.0;  // max ||e''.e''| - 1|, interior
  bool null_ok = false;
  bool regular_ok = false;
  bool pseudo_arc_ok = false;  // only demanded of pseudo-arc tagged curves
  bool passed = false;
};

NullReport verify_null(const NullCurve& eps);

struct PseudoArcResult {
  NullCurve curve;   // pseudo-arc tagged, uniform in s
  SampledFn param;   // t = phi(s), the old parameter along the new grid
};

/// ds/dt = sign (e''.e'')^(1/4); s starts at s_start at the first input node.
PseudoArcResult pseudo_arc_reparam(const NullCurve& eps, double s_start = 0.0, int sign = +1);

struct FrameAt {
  MinkVec3 T, B, N;
};

struct CartanFrame {
  Grid grid;
  std::vector<MinkVec3> T, B, N;
  FrameAt at(std::size_t i) const { return {T[i], B[i], N[i]}; }
};

/// Unique null B with B.N = 0 and T.B = -1, for null T and unit spacelike N.
MinkVec3 solve_binormal(MinkVec3 T, MinkVec3 N);

/// Max deviation of the six Cartan relations at one point.
double frame_residual(const FrameAt& f);
double frame_residual(const CartanFrame& f);

CartanFrame cartan_frame(const NullCurve& eps);

struct TorsionReport {
  SampledFn tau;  // on the interior grid
  double res_T = 0.0, res_B = 0.0, res_N = 0.0;  // Frenet residual maxima
};

SampledFn pseudo_torsion(const NullCurve& eps);
TorsionReport pseudo_torsion_report(const NullCurve& eps);

/// Integrates x' = T, T' = N, B' = tau N, N' = tau T + B on tau's grid from the
/// node nearest s0. B is re-solved from (T, N) every 64 steps.
NullCurve integrate_cartan(const SampledFn& tau, double s0, const FrameAt& frame0, MinkVec3 x0);

/// Catalog helix for the sign of tau on the given grid.
MinkVec3 null_helix_at(double tau, double s);
NullCurve null_helix(double tau, const Grid& grid);

struct GravesReport {
  double max_separation = 0.0;  // max (e - e0).(e - e0) over t > t0 (should be < 0)
  bool third_sign_constant = false;
  bool passed = false;
};

/// Checks the curve after t0 stays strictly inside one half of the light cone
/// at e(t0). Samples with |d.d| <= tol_degenerate (1 + |d|^2) count as inside.
GravesReport graves_check(const NullCurve& eps, double t0);

NullCurve apply_laguerre(const LaguerreMap& L, const NullCurve& eps);

/// Affine map x -> A x + t. Registration results are kept in this raw form:
/// frames estimated from samples are Lorentz-orthogonal only to ~1e-9, below
/// LaguerreMap's validation threshold.
struct AffineMap3 {
  Mat3 A{};
  MinkVec3 t;
  MinkVec3 operator()(MinkVec3 x) const { return mul(A, x) + t; }
};

/// Isometry mapping moving's Cartan frame and position at node `base` onto
/// ref's. Both curves must be pseudo-arc tagged.
AffineMap3 register_lorentz(const NullCurve& ref, const NullCurve& moving, std::size_t base);
double lorentz_registered_distance(const NullCurve& ref, const NullCurve& moving, std::size_t base);

/// Sup Euclidean distance between samples, no registration.
double sup_distance(const NullCurve& a, const NullCurve& b);

}  // namespace nullevo
