#include "nullevo/builtins.hpp"

#include <cmath>

#include "nullevo/error.hpp"

namespace nullevo::builtin {

namespace {

template <class F>
PlaneCurve plane(const Grid& g, F&& at, PlaneParam kind, const char* label) {
  std::vector<Vec2> p(g.count);
  for (std::size_t i = 0; i < g.count; ++i) p[i] = at(g.at(i));
  return {g, std::move(p), kind, label};
}

template <class F>
SampledFn sample(const Grid& g, F&& at) {
  std::vector<double> v(g.count);
  for (std::size_t i = 0; i < g.count; ++i) v[i] = at(g.at(i));
  return {g, std::move(v), "f"};
}

void require_positive(const Grid& g, const char* what) {
  if (!(g.start > 0.0)) throw Error(ErrorCode::out_of_range, std::string(what) + " needs a grid inside (0, inf)", g.start);
}

}  // namespace

Vec2 log_spiral_at(double t) {
  const double l = std::log(4 * t);
  return {0.5 * t * (std::sin(l) + std::cos(l)), 0.5 * t * (std::sin(l) - std::cos(l))};
}

PlaneCurve log_spiral(const Grid& t) {
  require_positive(t, "log_spiral");
  return plane(t, log_spiral_at, PlaneParam::arclength, "log spiral");
}

Vec2 cornu_at(double t) {
  // Power series of the Fresnel integrals in long double; fine for |t| <= 6.
  if (std::abs(t) > 6.0) throw Error(ErrorCode::out_of_range, "cornu: |t| > 6", t);
  const long double x = t, x4 = x * x * x * x / 4.0L;
  long double term = x, c = 0.0L, s = 0.0L;
  for (int n = 0; n < 200; ++n) {
    // term = (-1)^n t^(4n+1) / (4^n (2n)!)
    c += term / (4 * n + 1);
    const long double ts = term * x * x / (2.0L * (2 * n + 1));
    s += ts / (4 * n + 3);
    term *= -x4 / ((2.0L * n + 1) * (2.0L * n + 2));
    if (std::abs(term) < 1e-30L * (1 + std::abs(c))) break;
  }
  return {static_cast<double>(c), static_cast<double>(s)};
}

PlaneCurve cornu(const Grid& t) {
  require_positive(t, "cornu");
  return plane(t, cornu_at, PlaneParam::arclength, "cornu");
}

Vec2 circle_involute_at(double t, double tau) {
  const double a = 2 * std::sqrt(std::abs(tau) * t), k = 1 / (2 * std::abs(tau));
  return {k * (a * std::sin(a) + std::cos(a)), k * (std::sin(a) - a * std::cos(a))};
}

PlaneCurve circle_involute(const Grid& t, double tau) {
  require_positive(t, "circle_involute");
  if (!(tau < 0)) throw Error(ErrorCode::invalid_argument, "circle_involute needs tau < 0", tau);
  return plane(t, [tau](double x) { return circle_involute_at(x, tau); }, PlaneParam::arclength, "circle involute");
}

PlaneCurve ellipse(const Grid& p, double a, double b) {
  return plane(p, [a, b](double x) { return Vec2{a * std::cos(x), b * std::sin(x)}; }, PlaneParam::generic,
               "ellipse");
}

MinkVec3 log_spiral_levolute_at(double s) {
  const double l = 2 * std::log(s), k = s * s / 8;
  return {k * (std::sin(l) + std::cos(l)), k * (std::sin(l) - std::cos(l)), 2 * k};
}

PotentialFunction half_s_potential(const Grid& s) {
  require_positive(s, "s/2 potential");
  return make_potential(sample(s, [](double x) { return x / 2; }), s.start * s.start / 4);
}

PotentialFunction cornu_potential(const Grid& s) {
  require_positive(s, "8/s^3 potential");
  return make_potential(sample(s, [](double x) { return 8 / (x * x * x); }), -4 / (s.start * s.start));
}

PotentialFunction sqrt_potential(const Grid& s) {
  require_positive(s, "sqrt potential");
  return make_potential(sample(s, [](double x) { return std::sqrt(x); }), 2.0 / 3.0 * std::pow(s.start, 1.5));
}

TorsionParams catalog_params(double tau) {
  if (tau < 0) return {0.0, 0.0, 1 / std::sqrt(2 * std::abs(tau))};
  if (tau == 0) return {0.75, 0.0, 1.0 / 3.0};
  const double a = 1 / (2 * std::sqrt(2 * tau));
  return {a, a, 0.0};
}

PotentialFunction catalog_potential(double tau, const Grid& s) {
  const auto p = catalog_params(tau);
  return constant_torsion_potential(tau, p.a, p.b, p.c, s, null_helix_at(tau, s.start).u3);
}

}  // namespace nullevo::builtin
