#pragma once

// Test-side oracles: closed forms and independent quadrature.

#include <cmath>
#include <functional>
#include <vector>

#include "nullevo/null_curve.hpp"
#include "nullevo/plane.hpp"
#include "nullevo/scalar_fn.hpp"

namespace oracle {

inline nullevo::SampledFn sample(const nullevo::Grid& g, const std::function<double(double)>& f) {
  std::vector<double> v(g.count);
  for (std::size_t i = 0; i < g.count; ++i) v[i] = f(g.at(i));
  return {g, std::move(v)};
}

inline nullevo::PlaneCurve plane(const nullevo::Grid& g, const std::function<nullevo::Vec2(double)>& f,
                                 nullevo::PlaneParam kind = nullevo::PlaneParam::generic) {
  std::vector<nullevo::Vec2> p(g.count);
  for (std::size_t i = 0; i < g.count; ++i) p[i] = f(g.at(i));
  return {g, std::move(p), kind};
}

inline nullevo::NullCurve null(const nullevo::Grid& g, const std::function<nullevo::MinkVec3(double)>& f,
                               nullevo::NullParam kind = nullevo::NullParam::pseudo_arc) {
  std::vector<nullevo::MinkVec3> p(g.count);
  for (std::size_t i = 0; i < g.count; ++i) p[i] = f(g.at(i));
  return {g, std::move(p), kind};
}

/// Composite Simpson with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 20000) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

/// Log spiral in arclength t: (t/2)(sin ln4t + cos ln4t, sin ln4t - cos ln4t).
inline nullevo::Vec2 log_spiral(double t) {
  const double l = std::log(4 * t);
  return {0.5 * t * (std::sin(l) + std::cos(l)), 0.5 * t * (std::sin(l) - std::cos(l))};
}

/// Its L-evolute in pseudo-arc s (t = s^2/4).
inline nullevo::MinkVec3 log_spiral_levolute(double s) {
  const double l = 2 * std::log(s), k = s * s / 8;
  return {k * (std::sin(l) + std::cos(l)), k * (std::sin(l) - std::cos(l)), 2 * k};
}

/// Involute of the unit circle, parameter sigma = circle arclength.
inline nullevo::Vec2 circle_involute(double sg) {
  return {std::cos(sg) + sg * std::sin(sg), std::sin(sg) - sg * std::cos(sg)};
}

inline double max_abs_diff(const nullevo::SampledFn& got, const std::function<double(double)>& exact) {
  double m = 0;
  for (std::size_t i = 0; i < got.size(); ++i) m = std::max(m, std::abs(got[i] - exact(got.grid().at(i))));
  return m;
}

inline double max_rel_diff(const nullevo::SampledFn& got, const std::function<double(double)>& exact) {
  double m = 0;
  for (std::size_t i = 0; i < got.size(); ++i) {
    const double e = exact(got.grid().at(i));
    m = std::max(m, std::abs(got[i] - e) / std::max(std::abs(e), 1e-300));
  }
  return m;
}

}  // namespace oracle
