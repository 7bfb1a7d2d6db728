#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nullevo/scalar_fn.hpp"

namespace nullevo {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
double norm(Vec2 a);
/// Rotation by +90 degrees.
inline Vec2 perp(Vec2 a) { return {-a.y, a.x}; }

enum class PlaneParam { generic, arclength };

/// Sampled plane curve on a uniform parameter grid.
struct PlaneCurve {
  Grid grid;
  std::vector<Vec2> points;
  PlaneParam kind = PlaneParam::generic;
  std::string label;

  PlaneCurve(Grid grid, std::vector<Vec2> points, PlaneParam kind = PlaneParam::generic,
             std::string label = {});

  std::size_t size() const { return points.size(); }
  SampledFn x() const;
  SampledFn y() const;
};

struct PlaneFrenetData {
  Grid grid;
  std::vector<Vec2> tangent;
  std::vector<Vec2> normal;
  SampledFn speed;
  SampledFn curvature;
  SampledFn turning_angle;
  std::optional<SampledFn> radius;  // present when |k| > tol_degenerate everywhere
};

PlaneFrenetData frenet(const PlaneCurve& gamma);

PlaneCurve reparam_arclength(const PlaneCurve& gamma);

/// Locus of curvature centers; needs k and k' nonvanishing.
PlaneCurve evolute(const PlaneCurve& gamma);

/// gamma(t) - (t - t0) t(t) for an arclength-tagged curve.
PlaneCurve involute(const PlaneCurve& gamma, double t0);

struct PlaneSeed {
  Vec2 position;
  double heading = 0.0;
};

/// Arclength curve on k's grid with curvature k, starting at the seed.
PlaneCurve from_curvature(const SampledFn& k, PlaneSeed seed = {});

/// Same trace, opposite orientation; parameter t -> -t.
PlaneCurve reversed(const PlaneCurve& gamma);

struct RigidMotion {
  double angle = 0.0;
  Vec2 shift;
  Vec2 apply(Vec2 p) const;
};

PlaneCurve transformed(const PlaneCurve& gamma, const RigidMotion& m);

/// Motion taking `moving`'s position and unit tangent at node `base` onto
/// those of `ref`.
RigidMotion register_rigid(const PlaneCurve& ref, const PlaneCurve& moving, std::size_t base);

/// Sup distance over nodes after registration at `base`; curves must share
/// the node count.
double registered_distance(const PlaneCurve& ref, const PlaneCurve& moving, std::size_t base);

/// Least-squares rigid motion taking moving's samples onto ref's.
RigidMotion fit_rigid(const PlaneCurve& ref, const PlaneCurve& moving);
/// Sup distance over nodes after fit_rigid.
double fitted_distance(const PlaneCurve& ref, const PlaneCurve& moving);

}  // namespace nullevo
