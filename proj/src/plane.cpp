#include "nullevo/plane.hpp"

#include <cmath>

#include "nullevo/error.hpp"
#include "resample.hpp"

namespace nullevo {

double norm(Vec2 a) { return std::hypot(a.x, a.y); }

PlaneCurve::PlaneCurve(Grid g, std::vector<Vec2> pts, PlaneParam k, std::string l)
    : grid(g), points(std::move(pts)), kind(k), label(std::move(l)) {
  if (grid.count != points.size()) throw Error(ErrorCode::invalid_argument, "plane curve: grid/point count mismatch");
  if (points.size() < 8) throw Error(ErrorCode::too_few_samples, "plane curve needs >= 8 points");
  for (std::size_t i = 0; i < points.size(); ++i)
    if (!std::isfinite(points[i].x) || !std::isfinite(points[i].y))
      throw Error(ErrorCode::invalid_argument, "plane curve: non-finite point", static_cast<double>(i));
}

SampledFn PlaneCurve::x() const {
  std::vector<double> v(size());
  for (std::size_t i = 0; i < size(); ++i) v[i] = points[i].x;
  return {grid, std::move(v), label + ".x"};
}

SampledFn PlaneCurve::y() const {
  std::vector<double> v(size());
  for (std::size_t i = 0; i < size(); ++i) v[i] = points[i].y;
  return {grid, std::move(v), label + ".y"};
}

PlaneFrenetData frenet(const PlaneCurve& gamma) {
  const auto x = gamma.x(), y = gamma.y();
  const auto xd = differentiate(x, 1, DiffScheme::smooth), yd = differentiate(y, 1, DiffScheme::smooth);
  const auto xdd = differentiate(x, 2, DiffScheme::smooth), ydd = differentiate(y, 2, DiffScheme::smooth);
  const std::size_t n = gamma.size();
  std::vector<Vec2> t(n), nn(n);
  std::vector<double> speed(n), k(n), sk(n);
  bool nonflat = true;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = std::hypot(xd[i], yd[i]);
    if (v <= tol_degenerate) throw Error(ErrorCode::irregular_curve, "curve is not regular", static_cast<double>(i));
    speed[i] = v;
    k[i] = (xd[i] * ydd[i] - yd[i] * xdd[i]) / (v * v * v);
    sk[i] = v * k[i];
    t[i] = {xd[i] / v, yd[i] / v};
    nn[i] = perp(t[i]);
    if (std::abs(k[i]) <= tol_degenerate) nonflat = false;
  }
  SampledFn kf(gamma.grid, k, "k");
  auto theta = cumulative_integral(SampledFn(gamma.grid, sk), gamma.grid.start);
  std::vector<double> th(theta.values().begin(), theta.values().end());
  const double a0 = std::atan2(t[0].y, t[0].x);
  for (double& v : th) v += a0;
  std::optional<SampledFn> radius;
  if (nonflat) {
    std::vector<double> u(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = 1.0 / k[i];
    radius = SampledFn(gamma.grid, std::move(u), "u");
  }
  return {gamma.grid,
          std::move(t),
          std::move(nn),
          SampledFn(gamma.grid, std::move(speed), "speed"),
          std::move(kf),
          SampledFn(gamma.grid, std::move(th), "theta"),
          std::move(radius)};
}

PlaneCurve reparam_arclength(const PlaneCurve& gamma) {
  const auto fr = frenet(gamma);
  const auto len = cumulative_integral(fr.speed, gamma.grid.start);
  const std::size_t n = gamma.size();
  const Grid out = Grid::over(0.0, len.back(), n);
  std::vector<double> targets(n), slope(n);
  for (std::size_t i = 0; i < n; ++i) {
    targets[i] = out.at(i);
    slope[i] = fr.speed[i] * gamma.grid.step;
  }
  const auto xi = detail::invert_increasing(len.values(), slope, targets);
  std::vector<double> flat(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    flat[2 * i] = gamma.points[i].x;
    flat[2 * i + 1] = gamma.points[i].y;
  }
  const auto r = detail::resample_interleaved(flat, 2, xi);
  std::vector<Vec2> pts(n);
  for (std::size_t i = 0; i < n; ++i) pts[i] = {r[2 * i], r[2 * i + 1]};
  pts.front() = gamma.points.front();
  pts.back() = gamma.points.back();
  return {out, std::move(pts), PlaneParam::arclength, gamma.label};
}

PlaneCurve evolute(const PlaneCurve& gamma) {
  const auto fr = frenet(gamma);
  for (std::size_t i = 0; i < gamma.size(); ++i)
    if (std::abs(fr.curvature[i]) <= tol_degenerate)
      throw Error(ErrorCode::degenerate, "evolute: curvature vanishes", gamma.grid.at(i));
  const auto kd = differentiate(fr.curvature, 1, DiffScheme::smooth);
  for (std::size_t i = 0; i < gamma.size(); ++i)
    if (std::abs(kd[i]) <= tol_degenerate)
      throw Error(ErrorCode::degenerate, "evolute: curvature derivative vanishes", gamma.grid.at(i));
  std::vector<Vec2> pts(gamma.size());
  for (std::size_t i = 0; i < gamma.size(); ++i) pts[i] = gamma.points[i] + (*fr.radius)[i] * fr.normal[i];
  return {gamma.grid, std::move(pts), PlaneParam::generic, gamma.label + " evolute"};
}

PlaneCurve involute(const PlaneCurve& gamma, double t0) {
  if (gamma.kind != PlaneParam::arclength)
    throw Error(ErrorCode::invalid_argument, "involute needs an arclength-parameterized curve");
  const auto fr = frenet(gamma);
  for (std::size_t i = 0; i < gamma.size(); ++i)
    if (std::abs(fr.curvature[i]) <= tol_degenerate)
      throw Error(ErrorCode::degenerate, "involute: curvature vanishes", gamma.grid.at(i));
  std::vector<Vec2> pts(gamma.size());
  for (std::size_t i = 0; i < gamma.size(); ++i)
    pts[i] = gamma.points[i] - (gamma.grid.at(i) - t0) * fr.tangent[i];
  return {gamma.grid, std::move(pts), PlaneParam::generic, gamma.label + " involute"};
}

PlaneCurve from_curvature(const SampledFn& k, PlaneSeed seed) {
  const Grid& g = k.grid();
  const auto theta = cumulative_integral(k, g.start);
  std::vector<double> c(k.size()), s(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) {
    c[i] = std::cos(seed.heading + theta[i]);
    s[i] = std::sin(seed.heading + theta[i]);
  }
  const auto x = cumulative_integral(SampledFn(g, std::move(c)), g.start);
  const auto y = cumulative_integral(SampledFn(g, std::move(s)), g.start);
  std::vector<Vec2> pts(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) pts[i] = seed.position + Vec2{x[i], y[i]};
  return {g, std::move(pts), PlaneParam::arclength, "from k"};
}

PlaneCurve reversed(const PlaneCurve& gamma) {
  std::vector<Vec2> pts(gamma.points.rbegin(), gamma.points.rend());
  return {Grid{-gamma.grid.stop(), gamma.grid.step, gamma.grid.count}, std::move(pts), gamma.kind, gamma.label};
}

Vec2 RigidMotion::apply(Vec2 p) const {
  const double c = std::cos(angle), s = std::sin(angle);
  return Vec2{c * p.x - s * p.y, s * p.x + c * p.y} + shift;
}

PlaneCurve transformed(const PlaneCurve& gamma, const RigidMotion& m) {
  std::vector<Vec2> pts(gamma.size());
  for (std::size_t i = 0; i < gamma.size(); ++i) pts[i] = m.apply(gamma.points[i]);
  return {gamma.grid, std::move(pts), gamma.kind, gamma.label};
}

RigidMotion register_rigid(const PlaneCurve& ref, const PlaneCurve& moving, std::size_t base) {
  if (base >= ref.size() || base >= moving.size()) throw Error(ErrorCode::out_of_range, "registration base outside curve");
  const Vec2 ta = frenet(ref).tangent[base], tb = frenet(moving).tangent[base];
  RigidMotion m;
  m.angle = std::atan2(ta.y, ta.x) - std::atan2(tb.y, tb.x);
  m.shift = ref.points[base] - RigidMotion{m.angle, {}}.apply(moving.points[base]);
  return m;
}

double registered_distance(const PlaneCurve& ref, const PlaneCurve& moving, std::size_t base) {
  if (ref.size() != moving.size()) throw Error(ErrorCode::invalid_argument, "registered_distance: node counts differ");
  const auto m = register_rigid(ref, moving, base);
  double d = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i) d = std::max(d, norm(ref.points[i] - m.apply(moving.points[i])));
  return d;
}

RigidMotion fit_rigid(const PlaneCurve& ref, const PlaneCurve& moving) {
  const std::size_t n = ref.size();
  if (moving.size() != n) throw Error(ErrorCode::invalid_argument, "fit_rigid: node counts differ");
  Vec2 ca, cb;
  for (std::size_t i = 0; i < n; ++i) {
    ca = ca + ref.points[i];
    cb = cb + moving.points[i];
  }
  ca = (1.0 / static_cast<double>(n)) * ca;
  cb = (1.0 / static_cast<double>(n)) * cb;
  double sc = 0.0, ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = ref.points[i] - ca, b = moving.points[i] - cb;
    sc += dot(b, a);
    ss += cross(b, a);
  }
  RigidMotion m;
  m.angle = std::atan2(ss, sc);
  m.shift = ca - RigidMotion{m.angle, {}}.apply(cb);
  return m;
}

double fitted_distance(const PlaneCurve& ref, const PlaneCurve& moving) {
  const auto m = fit_rigid(ref, moving);
  double d = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i) d = std::max(d, norm(ref.points[i] - m.apply(moving.points[i])));
  return d;
}

}  // namespace nullevo
