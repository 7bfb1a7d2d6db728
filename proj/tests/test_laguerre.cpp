#include <cmath>
#include <numbers>

#include "doctest.h"
#include "nullevo/builtins.hpp"
#include "nullevo/error.hpp"
#include "nullevo/laguerre.hpp"
#include "support.hpp"

using namespace nullevo;

namespace {

// s with s^3/4 + s/3 = u.
double cubic_root(double u) {
  double s = std::cbrt(4 * u);
  for (int i = 0; i < 60; ++i) s -= (s * s * s / 4 + s / 3 - u) / (0.75 * s * s + 1.0 / 3);
  return s;
}

// Planar projection of a null curve, for rigid registration of (u1, u2).
PlaneCurve shadow(const NullCurve& e) {
  std::vector<Vec2> p(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) p[i] = {e.points[i].u1, e.points[i].u2};
  return {e.grid, std::move(p)};
}

// Sup distance after a plane rigid motion on (u1, u2); u3 compared as is.
double li_distance(const NullCurve& a, const NullCurve& b) {
  double d = fitted_distance(shadow(a), shadow(b));
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a.points[i].u3 - b.points[i].u3));
  return d;
}

double odas_x(double s) {
  const double r = std::sqrt(s);
  return 0.5 * r * (2 * s - 3) * std::sin(2 * r) + 0.75 * (2 * s - 1) * std::cos(2 * r) + 0.75;
}

double odas_y(double s) {
  const double r = std::sqrt(s);
  return 0.75 * (2 * s - 1) * std::sin(2 * r) - 0.5 * r * (2 * s - 3) * std::cos(2 * r);
}

}  // namespace

TEST_CASE("l_evolute of the log spiral") {
  const Grid t = Grid::over(0.25, 6.25, 2049);
  const auto eps = l_evolute(builtin::log_spiral(t));
  // The closed form agrees with the centres after a plane rotation.
  const auto ref = oracle::null(t, [](double x) { return oracle::log_spiral_levolute(2 * std::sqrt(x)); });
  CHECK(li_distance(ref, eps) < 1e-7);
  CHECK(verify_null(eps).passed);
  // Osculating circle: radius u = t for this spiral.
  const std::size_t i = 1000;
  CHECK(isotropic_project(eps.points[i]).signed_radius == doctest::Approx(t.at(i)).epsilon(1e-8));

  const auto circle = oracle::plane(Grid::over(0, 6, 512), [](double p) { return Vec2{std::cos(p), std::sin(p)}; });
  try {
    l_evolute(circle);
    FAIL("circle accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::degenerate);
    CHECK(e.where().has_value());
  }
}

TEST_CASE("circle involute: L-evolute is the helix e1") {
  const auto eps = l_evolute(builtin::circle_involute(Grid::over(0.5, 8, 2049)));
  const auto re = pseudo_arc_reparam(eps, 1.0);
  // eps already carries second derivatives of gamma; judge the middle 90%.
  const auto tau = pseudo_torsion(re.curve);
  double d = 0;
  for (std::size_t i = tau.size() / 20; i < tau.size() - tau.size() / 20; ++i) d = std::max(d, std::abs(tau[i] + 0.5));
  CHECK(d < 1e-5);
  CHECK(graves_check(eps, 0.5).passed);
}

TEST_CASE("plane_from_null") {
  const Grid s = Grid::over(0.5, 5, 2049);
  const auto g = plane_from_null(null_helix(-0.5, s));
  double d = 0;
  for (std::size_t i = 0; i < g.size(); ++i)
    d = std::max(d, norm(g.points[i] - oracle::circle_involute(g.grid.at(i))));
  CHECK(d < 1e-8);

  // eps2 on [1, 3]: round trip through the plane.
  const auto e2 = null_helix(0.0, Grid::over(1, 3, 2049));
  const auto back = l_evolute(plane_from_null(e2));
  double r = 0;
  for (std::size_t i = 0; i < back.size(); ++i)
    r = std::max(r, euclid_norm(back.points[i] - null_helix_at(0.0, cubic_root(back.points[i].u3))));
  CHECK(r < 1e-4);

  try {
    plane_from_null(null_helix(-0.5, Grid::over(-1, 1, 256)));
    FAIL("sign change accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::hypothesis);
  }
}

TEST_CASE("potential_of the example curves") {
  const auto ls = potential_of(builtin::log_spiral(Grid::over(1, 25, 2049)), 2.0);
  CHECK_FALSE(ls.flipped);
  CHECK(ls.potential.f.grid().stop() == doctest::Approx(10).epsilon(1e-7));
  CHECK(oracle::max_rel_diff(ls.potential.f, [](double s) { return s / 2; }) < 1e-5);
  CHECK(oracle::max_abs_diff(ls.phi, [](double s) { return s * s / 4 - 1; }) < 1e-6);
  CHECK(ls.potential.b0 == doctest::Approx(1.0).epsilon(1e-7));

  const auto co = potential_of(builtin::cornu(Grid::over(0.5, 4, 2049)), 2 * std::sqrt(0.5));
  CHECK(co.flipped);
  CHECK(co.potential.f.grid().stop() == doctest::Approx(4).epsilon(1e-8));
  CHECK(oracle::max_rel_diff(co.potential.f, [](double s) { return 8 / (s * s * s); }) < 1e-5);
  CHECK(co.potential.b0 < 0);

  const auto ci = potential_of(builtin::circle_involute(Grid::over(0.5, 8, 2049)), 1.0);
  CHECK(oracle::max_abs_diff(ci.potential.f, [](double) { return 1.0; }) < 1e-6);
  CHECK(ci.potential.f.grid().stop() == doctest::Approx(4).epsilon(1e-8));
}

TEST_CASE("potential_of is invariant under L_I") {
  // Compared away from the one-sided boundary rows, where rounding of the
  // moved coordinates is amplified by the third-derivative weights.
  const auto interior_diff = [](const SampledFn& a, const SampledFn& ref) {
    double d = 0;
    for (std::size_t i = geometry_trim; i + geometry_trim < a.size(); ++i) {
      const double s = std::clamp(a.grid().at(i), ref.grid().start, ref.grid().stop());
      d = std::max(d, std::abs(a[i] - ref(s)));
    }
    return d;
  };
  const auto gamma = builtin::log_spiral(Grid::over(1, 9, 2049));
  const auto ref = potential_of(gamma, 2.0).potential.f;
  const auto moved = potential_of(transformed(gamma, RigidMotion{0.7, {3, -2}}), 2.0).potential.f;
  CHECK(interior_diff(moved, ref) < 1e-6);

  // Timelike translation (0, 0, a) of the L-evolute: the parallel curve gamma - a n.
  // Unit tangent of this spiral is (cos ln4t, sin ln4t).
  std::vector<Vec2> pts(gamma.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double l = std::log(4 * gamma.grid.at(i));
    pts[i] = gamma.points[i] - 0.3 * Vec2{-std::sin(l), std::cos(l)};
  }
  const auto par = potential_of(PlaneCurve(gamma.grid, std::move(pts)), 2.0);
  CHECK_FALSE(par.flipped);
  CHECK(par.potential.b0 == doctest::Approx(1.3).epsilon(1e-7));
  CHECK(interior_diff(par.potential.f, ref) < 1e-6);
}

TEST_CASE("torsion_from_potential closed forms") {
  const Grid a = Grid::over(0.5, 10, 4096), b = Grid::over(1, 3, 4096);
  CHECK(oracle::max_rel_diff(torsion_from_potential(builtin::half_s_potential(a)),
                             [](double s) { return -2.5 / (s * s); }) < 1e-5);
  CHECK(oracle::max_rel_diff(torsion_from_potential(builtin::cornu_potential(b)),
                             [](double s) { return 7.5 / (s * s) - std::pow(s, 6) / 128; }) < 1e-5);
  CHECK(oracle::max_rel_diff(torsion_from_potential(builtin::sqrt_potential(a)),
                             [](double s) { return -3 / (8 * s * s) - 1 / (2 * s); }) < 1e-5);
}

TEST_CASE("make_potential validation") {
  const Grid g = Grid::over(1, 2, 64);
  CHECK_THROWS_AS(make_potential(oracle::sample(g, [](double s) { return s - 1.5; }), 1.0), Error);
  try {
    make_potential(oracle::sample(g, [](double) { return 1.0; }), -0.5);
    FAIL("u sign change accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::constraint_violation);
  }
  // u(s0) = 0 is allowed at s0 itself.
  CHECK_NOTHROW(make_potential(oracle::sample(g, [](double) { return 1.0; }), 0.0));
  const auto p = make_potential(oracle::sample(Grid::over(1, 2, 65), [](double s) { return s; }), 1.5, 1.0);
  CHECK(p.theta(1.5) == doctest::Approx(0).scale(1));
  CHECK(p.theta.back() == doctest::Approx(std::log(2 / 1.5)).epsilon(1e-8));
}

TEST_CASE("reconstruct: log spiral") {
  const Grid s = Grid::over(0.1, 20, 4096);
  const auto r = reconstruct(builtin::half_s_potential(s), 0.0025);
  const auto ref = oracle::plane(r.gamma.grid, oracle::log_spiral, PlaneParam::arclength);
  CHECK(r.gamma.grid.stop() == doctest::Approx(100).epsilon(1e-9));
  CHECK(fitted_distance(ref, r.gamma) < 1e-5);
  CHECK(li_distance(oracle::null(s, oracle::log_spiral_levolute), r.epsilon) < 1e-5);
  CHECK(oracle::max_abs_diff(r.phi, [](double x) { return x * x / 4; }) < 1e-8);
  CHECK(verify_null(r.epsilon).passed);
}

TEST_CASE("reconstruct: helix e2 from its potential") {
  const Grid s = Grid::over(0.5, 2, 2049);
  const auto r = reconstruct(builtin::catalog_potential(0.0, s));
  // e2 turns clockwise; reflect it before registering.
  auto mirror = null_helix(0.0, s);
  for (auto& q : mirror.points) q.u2 = -q.u2;
  CHECK(li_distance(mirror, r.epsilon) < 1e-8);
}

TEST_CASE("reconstruct: f = sqrt(s)") {
  const Grid s = Grid::over(0.5, 10, 4096);
  const auto r = reconstruct(builtin::sqrt_potential(s), 0.25 / 3);
  // t = s^2 / 3 along this curve.
  const auto ref = oracle::plane(r.gamma.grid, [](double t) {
    const double x = std::sqrt(3 * t);
    return Vec2{2.0 / 3 * odas_x(x), 2.0 / 3 * odas_y(x)};
  });
  CHECK(fitted_distance(ref, r.gamma) < 1e-5);
}

TEST_CASE("round trip A: potential_of after reconstruct") {
  for (const auto& p : {builtin::half_s_potential(Grid::over(2, 10, 2049)), builtin::sqrt_potential(Grid::over(2, 10, 2049)),
                        builtin::cornu_potential(Grid::over(1.2, 3, 2049))}) {
    const auto r = reconstruct(p, 1.0);
    // gamma runs along increasing t; for u < 0 that is decreasing s.
    const bool forward = r.phi.front() < r.phi.back();
    const auto back = potential_of(r.gamma, forward ? p.f.grid().start : p.f.grid().stop());
    CHECK_FALSE(back.flipped);
    const auto& f = p.f;
    double d = 0;
    for (std::size_t i = 0; i < back.potential.f.size(); ++i) {
      const double x = std::clamp(back.potential.f.grid().at(i), f.grid().start, f.grid().stop());
      d = std::max(d, std::abs(back.potential.f[i] - f(x)));
    }
    CHECK(d < 1e-5);
  }
}

TEST_CASE("round trip B: reconstruct after potential_of") {
  const auto check = [](const PlaneCurve& gamma, double s_first) {
    const auto pr = potential_of(gamma, s_first);
    const auto r = reconstruct(pr.potential, gamma.grid.start);
    CHECK(fitted_distance(gamma, r.gamma) < 1e-4);
  };
  check(builtin::log_spiral(Grid::over(0.5, 5, 2049)), 2 * std::sqrt(0.5));
  check(builtin::circle_involute(Grid::over(0.5, 5, 2049)), 1.0);
}

TEST_CASE("tangent and torsion of the reconstructed L-evolute") {
  for (const auto& p : {builtin::half_s_potential(Grid::over(1, 5, 2049)), builtin::sqrt_potential(Grid::over(1, 5, 2049)),
                        builtin::cornu_potential(Grid::over(1.2, 2.5, 2049)), builtin::catalog_potential(0.5, Grid::over(0.5, 2.5, 2049))}) {
    const auto r = reconstruct(p);
    double d = 0;
    for (int c = 0; c < 3; ++c) {
      const auto dc = differentiate(r.epsilon.component(c), 1, DiffScheme::smooth);
      for (std::size_t i = 0; i < dc.size(); ++i) {
        const double th = p.theta[i];
        const double want = c == 0 ? p.f[i] * std::cos(th) : (c == 1 ? p.f[i] * std::sin(th) : p.f[i]);
        d = std::max(d, std::abs(dc[i] - want));
      }
    }
    CHECK(d < 1e-6);
    const auto tp = torsion_from_potential(p), te = pseudo_torsion(r.epsilon);
    double m = 0;
    for (std::size_t i = 0; i < te.size(); ++i) m = std::max(m, std::abs(tp[i] - te[i]));
    CHECK(m < 1e-4);
  }
}

TEST_CASE("congruent_family") {
  const Grid g = Grid::over(1, 5, 2049);
  const auto tau = oracle::sample(g, [](double s) { return -2.5 / (s * s); });

  const auto self = congruent_family(tau, FamilyInit{1.0, 1.0, 0.5, 0.5, 0.25});
  CHECK_FALSE(self.truncated);
  CHECK(oracle::max_abs_diff(self.potential.f, [](double s) { return s / 2; }) < 1e-9);

  // General member a s + b s sin(2 ln s) + c s cos(2 ln s), b^2 + c^2 - a^2 = -1/4.
  const double a = 1.0, b = 0.6, c = std::sqrt(a * a - 0.25 - b * b);
  const auto gen = congruent_family(tau, FamilyInit{1.0, 1.0, a + c, a + 2 * b + c, 1.0});
  auto exact = [&](double s) { return s * (a + b * std::sin(2 * std::log(s)) + c * std::cos(2 * std::log(s))); };
  CHECK(oracle::max_abs_diff(gen.potential.f, exact) < 1e-6);
  CHECK(third_order_residual(gen.potential, tau) < 1e-3);
  CHECK(oracle::max_abs_diff(torsion_from_potential(gen.potential), [](double s) { return -2.5 / (s * s); }) < 1e-4);

  // tau = 0: quadratics with 4ac = 1 + b^2.
  const auto zero = oracle::sample(Grid::over(0, 4, 1025), [](double) { return 0.0; });
  const auto q = congruent_family(zero, FamilyInit{1.0, 0.0, 0.25, 0.5, 1.0});
  double worst = 0;
  for (std::size_t i = 0; i < q.potential.f.size(); ++i) {
    const double s = q.potential.f.grid().at(i);
    worst = std::max(worst, std::abs(q.potential.f[i] - (1.25 * s * s + 0.5 * s + 0.25)));
  }
  CHECK(worst < 1e-7);

  // Dilation: tau_4(s) = tau(s/2)/4 on [2, 10].
  const auto dil = congruent_family(tau, FamilyInit{4.0, 2.0, 1.0, 0.5, 1.0});
  CHECK(dil.potential.f.grid().start == doctest::Approx(2));
  CHECK(dil.potential.f.grid().stop() == doctest::Approx(10));
  const auto tl = dilated_torsion(tau, 4.0);
  CHECK(oracle::max_abs_diff(torsion_from_potential(dil.potential), [](double s) { return -2.5 / (s * s); }) < 1e-4);
  CHECK(third_order_residual(dil.potential, tl) < 1e-3);

  CHECK_THROWS_AS(congruent_family(tau, FamilyInit{0.0, 1.0, 1.0, 0.0, 1.0}), Error);
  CHECK_THROWS_AS(congruent_family(tau, FamilyInit{1.0, 1.0, -1.0, 0.0, 1.0}), Error);
}

TEST_CASE("congruent_family batch matches members") {
  const auto tau = oracle::sample(Grid::over(1, 5, 1025), [](double s) { return -2.5 / (s * s); });
  std::vector<FamilyInit> inits;
  for (int k = 0; k < 12; ++k) inits.push_back({0.5 + 0.25 * k, 1.5 * std::sqrt(0.5 + 0.25 * k), 0.4 + 0.05 * k, 0.3, 1.0});
  const auto batch = congruent_family(tau, inits);
  REQUIRE(batch.size() == inits.size());
  for (std::size_t k = 0; k < inits.size(); ++k) {
    const auto one = congruent_family(tau, inits[k]);
    REQUIRE(one.potential.f.size() == batch[k].potential.f.size());
    bool same = true;
    for (std::size_t i = 0; i < one.potential.f.size(); ++i) same = same && one.potential.f[i] == batch[k].potential.f[i];
    CHECK(same);
  }
}

TEST_CASE("olszak_check") {
  const auto one = olszak_check(make_potential(oracle::sample(Grid::over(0, 12, 4096), [](double) { return 1.0; }), 1.0));
  CHECK(one.r_minus <= 1e-6);
  CHECK(one.r_plus == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(one.holds == -1);

  const auto half = olszak_check(builtin::half_s_potential(Grid::over(1, 20, 4096)));
  CHECK(std::min(half.r_plus, half.r_minus) <= 1e-4);
  CHECK(half.holds != 0);

  // Moebius image of g has the same Schwarzian.
  std::vector<double> h(half.g.size());
  for (std::size_t i = 0; i < h.size(); ++i) h[i] = (2 * half.g[i] + 1) / (half.g[i] + 9);
  const auto Sh = schwarzian(SampledFn(half.g.grid(), std::move(h)), DiffScheme::smooth);
  double m = 0;
  for (std::size_t i = 0; i < Sh.size(); ++i) m = std::max(m, std::abs(Sh[i] - half.schwarzian[i]));
  CHECK(m < 1e-6);

  // Poles every 2 pi: no run of 32 nodes.
  CHECK_THROWS_AS(olszak_check(make_potential(oracle::sample(Grid::over(0, 100, 64), [](double) { return 0.1; }), 1.0)),
                  Error);
}

TEST_CASE("evolute_potential") {
  const auto lin = evolute_potential(builtin::half_s_potential(Grid::over(1, 10, 2049)), 1.0);
  CHECK(oracle::max_abs_diff(lin.beta, [](double s) { return s; }) < 1e-9);
  CHECK(oracle::max_abs_diff(lin.f_eps_along, [](double s) { return s / 2; }) < 1e-8);
  CHECK(oracle::max_rel_diff(lin.tau_eps_along, [](double s) { return -2.5 / (s * s); }) < 1e-5);
  CHECK(oracle::max_rel_diff(lin.tau_eps, [](double s) { return -2.5 / (s * s); }) < 1e-5);

  const double s0 = 0.5;
  const auto sq = evolute_potential(builtin::sqrt_potential(Grid::over(s0, 10, 4096)), 4.0 / 3 * std::pow(s0, 0.75));
  CHECK(oracle::max_rel_diff(sq.potential.f, [](double se) { return std::cbrt(0.75 * se); }) < 1e-4);
  CHECK(oracle::max_rel_diff(sq.tau_eps, [](double se) {
          const double q = 0.75 * se;
          return -5.0 / 32 / (q * q) - 0.5 / std::pow(q, 2.0 / 3);
        }) < 1e-4);
  // tau_eps agrees with the torsion of the evolute's own potential.
  const auto te = torsion_from_potential(sq.potential);
  double m = 0;
  for (std::size_t i = 0; i < te.size(); ++i)
    if (sq.tau_eps.grid().contains(te.grid().at(i))) m = std::max(m, std::abs(te[i] - sq.tau_eps(te.grid().at(i))));
  CHECK(m < 1e-4);

  CHECK_THROWS_AS(evolute_potential(make_potential(oracle::sample(Grid::over(1, 2, 64), [](double) { return 1.0; }), 1.0)),
                  Error);
}

TEST_CASE("evolute_potential reproduces the L-evolute of the evolute") {
  const Grid s = Grid::over(1, 4, 2049);
  const auto p = builtin::sqrt_potential(s);
  const auto ep = evolute_potential(p, 0.0);
  const auto r = reconstruct(p, 0.0);
  const auto direct = l_evolute(evolute(r.gamma));
  const auto re = pseudo_arc_reparam(direct, 0.0, 1);
  const auto fromf = reconstruct(ep.potential).epsilon;
  REQUIRE(re.curve.size() == fromf.size());
  CHECK(re.curve.grid.stop() == doctest::Approx(fromf.grid.stop()).epsilon(1e-5));
  // Same up to a plane rigid motion; the third components are the radii.
  CHECK(li_distance(fromf, re.curve) < 1e-4);
}

TEST_CASE("constant_torsion_potential") {
  const Grid g = Grid::over(0.5, 2.5, 2049);
  const auto e1 = constant_torsion_potential(-0.5, 0, 0, 1, g, g.start);
  CHECK(oracle::max_abs_diff(e1.f, [](double) { return 1.0; }) == 0.0);
  const auto e2 = constant_torsion_potential(0.0, 0.75, 0, 1.0 / 3, g, 1.0);
  CHECK(oracle::max_abs_diff(e2.f, [](double s) { return 0.75 * s * s + 1.0 / 3; }) < 1e-15);
  const auto e3 = constant_torsion_potential(0.5, 0.5, 0.5, 0, g, std::sinh(0.5));
  CHECK(oracle::max_rel_diff(e3.f, [](double s) { return std::cosh(s); }) < 1e-15);
  for (double tau : {-0.5, 0.0, 0.5}) {
    const auto t = torsion_from_potential(builtin::catalog_potential(tau, g));
    CHECK(oracle::max_abs_diff(t, [tau](double) { return tau; }) < 1e-7);
  }
  try {
    constant_torsion_potential(0.0, 0.75, 0, (1.0 + 0.01) / 3, g, 1.0);
    FAIL("perturbed constraint accepted");
  } catch (const ConstraintViolation& e) {
    CHECK(e.residual() == doctest::Approx(0.01).epsilon(1e-9));
    CHECK(e.code() == ErrorCode::constraint_violation);
  }
  CHECK_THROWS_AS(constant_torsion_potential(-0.5, 1, 0, -std::sqrt(2.0), g, 1.0), Error);
}

TEST_CASE("tait_certify") {
  const auto ls = tait_certify(builtin::log_spiral(Grid::over(0.5, 5, 2049)));
  CHECK(ls.passed);
  CHECK(ls.min_margin > 0);
  // Direct pairwise oracle on the closed-form osculating circles (center, radius t).
  const Grid g = Grid::over(0.5, 5, 2049);
  double m = 1e300;
  std::vector<std::size_t> idx;
  for (std::size_t j = 0; j < 64; ++j) idx.push_back(static_cast<std::size_t>(std::llround(j * 2048.0 / 63)));
  for (std::size_t a : idx)
    for (std::size_t b : idx) {
      if (b <= a) continue;
      const double ta = g.at(a), tb = g.at(b);
      const auto ca = oracle::log_spiral_levolute(2 * std::sqrt(ta)), cb = oracle::log_spiral_levolute(2 * std::sqrt(tb));
      m = std::min(m, std::abs(ta - tb) - std::hypot(ca.u1 - cb.u1, ca.u2 - cb.u2));
    }
  CHECK(ls.min_margin == doctest::Approx(m).epsilon(1e-4));

  const auto ci = tait_certify(builtin::circle_involute(Grid::over(0.5, 5, 2049)));
  CHECK(ci.passed);
  CHECK(ci.min_margin > 0);

  const auto wobble = oracle::plane(Grid::over(0, 6, 1024), [](double p) {
    const double r = 1 + 0.1 * std::sin(3 * p);
    return Vec2{r * std::cos(p), r * std::sin(p)};
  });
  try {
    tait_certify(wobble);
    FAIL("non-monotone curvature accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::hypothesis);
  }
}
