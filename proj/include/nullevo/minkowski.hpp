#pragma once

#include <array>

#include "nullevo/plane.hpp"

namespace nullevo {

/// Point or vector of E^3_1; u3 is the timelike coordinate.
struct MinkVec3 {
  double u1 = 0.0;
  double u2 = 0.0;
  double u3 = 0.0;

  double operator[](int i) const { return i == 0 ? u1 : (i == 1 ? u2 : u3); }
};

inline MinkVec3 operator+(MinkVec3 a, MinkVec3 b) { return {a.u1 + b.u1, a.u2 + b.u2, a.u3 + b.u3}; }
inline MinkVec3 operator-(MinkVec3 a, MinkVec3 b) { return {a.u1 - b.u1, a.u2 - b.u2, a.u3 - b.u3}; }
inline MinkVec3 operator*(double s, MinkVec3 a) { return {s * a.u1, s * a.u2, s * a.u3}; }

inline double lorentz_dot(MinkVec3 a, MinkVec3 b) { return a.u1 * b.u1 + a.u2 * b.u2 - a.u3 * b.u3; }
inline double euclid_dot(MinkVec3 a, MinkVec3 b) { return a.u1 * b.u1 + a.u2 * b.u2 + a.u3 * b.u3; }
double euclid_norm(MinkVec3 a);
/// Euclidean cross product; used for parallelism residuals.
MinkVec3 euclid_cross(MinkVec3 a, MinkVec3 b);

enum class Causal { spacelike, timelike, lightlike };

/// Lightlike when |v.v| <= tol_degenerate (1 + |v|^2), Euclidean norm.
Causal causal_type(MinkVec3 v);
const char* to_string(Causal c);

/// Circle of radius |signed_radius| around center; anticlockwise iff positive.
struct OrientedCircle {
  Vec2 center;
  double signed_radius = 0.0;
  bool anticlockwise() const { return signed_radius > 0.0; }
  bool is_point() const { return signed_radius == 0.0; }
};

inline OrientedCircle isotropic_project(MinkVec3 p) { return {{p.u1, p.u2}, p.u3}; }
inline MinkVec3 isotropic_lift(const OrientedCircle& c) { return {c.center.x, c.center.y, c.signed_radius}; }

using Mat3 = std::array<std::array<double, 3>, 3>;

MinkVec3 mul(const Mat3& a, MinkVec3 v);

/// L(u) = scale * A u + translation with A Lorentz-orthogonal. Validated once
/// at construction.
class LaguerreMap {
 public:
  static LaguerreMap make(double scale, const Mat3& linear, MinkVec3 translation);
  static LaguerreMap identity();
  static LaguerreMap dilation(double scale);
  static LaguerreMap shift(MinkVec3 t);
  /// Rotation about the u3 axis.
  static LaguerreMap rotation(double angle);
  /// Lorentz boost mixing u1 and u3.
  static LaguerreMap boost(double rapidity);

  MinkVec3 operator()(MinkVec3 u) const { return scale_ * mul(linear_, u) + translation_; }
  LaguerreMap then(const LaguerreMap& next) const;

  double scale() const { return scale_; }
  const Mat3& linear() const { return linear_; }
  MinkVec3 translation() const { return translation_; }

  /// max |(A e_i).(A e_j) - eta_ij| over basis pairs.
  static double orthogonality_residual(const Mat3& a);

 private:
  LaguerreMap(double s, const Mat3& a, MinkVec3 t) : scale_(s), linear_(a), translation_(t) {}
  double scale_;
  Mat3 linear_;
  MinkVec3 translation_;
};

}  // namespace nullevo
