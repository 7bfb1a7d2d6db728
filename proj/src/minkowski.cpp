#include "nullevo/minkowski.hpp"

#include <cmath>

#include "nullevo/error.hpp"

namespace nullevo {

double euclid_norm(MinkVec3 a) { return std::sqrt(euclid_dot(a, a)); }

MinkVec3 euclid_cross(MinkVec3 a, MinkVec3 b) {
  return {a.u2 * b.u3 - a.u3 * b.u2, a.u3 * b.u1 - a.u1 * b.u3, a.u1 * b.u2 - a.u2 * b.u1};
}

Causal causal_type(MinkVec3 v) {
  const double q = lorentz_dot(v, v);
  if (std::abs(q) <= tol_degenerate * (1.0 + euclid_dot(v, v))) return Causal::lightlike;
  return q > 0.0 ? Causal::spacelike : Causal::timelike;
}

const char* to_string(Causal c) {
  switch (c) {
    case Causal::spacelike: return "spacelike";
    case Causal::timelike: return "timelike";
    case Causal::lightlike: return "lightlike";
  }
  return "?";
}

MinkVec3 mul(const Mat3& a, MinkVec3 v) {
  return {a[0][0] * v.u1 + a[0][1] * v.u2 + a[0][2] * v.u3,
          a[1][0] * v.u1 + a[1][1] * v.u2 + a[1][2] * v.u3,
          a[2][0] * v.u1 + a[2][1] * v.u2 + a[2][2] * v.u3};
}

double LaguerreMap::orthogonality_residual(const Mat3& a) {
  double r = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const MinkVec3 ci{a[0][i], a[1][i], a[2][i]}, cj{a[0][j], a[1][j], a[2][j]};
      const double eta = i != j ? 0.0 : (i == 2 ? -1.0 : 1.0);
      r = std::max(r, std::abs(lorentz_dot(ci, cj) - eta));
    }
  return r;
}

LaguerreMap LaguerreMap::make(double scale, const Mat3& linear, MinkVec3 translation) {
  if (scale == 0.0 || !std::isfinite(scale)) throw Error(ErrorCode::invalid_argument, "Laguerre map: scale must be nonzero");
  const double r = orthogonality_residual(linear);
  if (!(r <= 1e-10))
    throw Error(ErrorCode::invalid_argument, "Laguerre map: linear part is not Lorentz-orthogonal", r);
  return {scale, linear, translation};
}

LaguerreMap LaguerreMap::identity() { return dilation(1.0); }

LaguerreMap LaguerreMap::dilation(double scale) {
  return make(scale, Mat3{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}, {});
}

LaguerreMap LaguerreMap::shift(MinkVec3 t) { return make(1.0, Mat3{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}, t); }

LaguerreMap LaguerreMap::rotation(double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return make(1.0, Mat3{{{c, -s, 0}, {s, c, 0}, {0, 0, 1}}}, {});
}

LaguerreMap LaguerreMap::boost(double rapidity) {
  const double c = std::cosh(rapidity), s = std::sinh(rapidity);
  return make(1.0, Mat3{{{c, 0, s}, {0, 1, 0}, {s, 0, c}}}, {});
}

LaguerreMap LaguerreMap::then(const LaguerreMap& next) const {
  Mat3 a{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) a[i][j] += next.linear_[i][k] * linear_[k][j];
  return make(scale_ * next.scale_, a, next(translation_));
}

}  // namespace nullevo
