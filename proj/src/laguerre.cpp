#include "nullevo/laguerre.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>

#include "nullevo/error.hpp"
#include "nullevo/kernels.hpp"
#include "resample.hpp"

namespace nullevo {

namespace {

SampledFn from(const Grid& g, std::vector<double> v, std::string label = {}) {
  return {g, std::move(v), std::move(label)};
}

SampledFn shifted(const SampledFn& f, double c) {
  std::vector<double> v(f.values().begin(), f.values().end());
  for (double& x : v) x += c;
  return {f.grid(), std::move(v), f.label()};
}

using detail::invert_monotone;

std::vector<double> resample(std::span<const double> values, std::span<const double> xi) {
  return detail::resample_interleaved(values, 1, xi);
}

int sign_of(double x) { return x > 0 ? 1 : -1; }

// du/dt from one third-derivative stencil rather than differencing u again.
std::vector<double> radius_rate(const PlaneCurve& gamma) {
  const auto x = gamma.x(), y = gamma.y();
  const auto x1 = differentiate(x, 1, DiffScheme::smooth), y1 = differentiate(y, 1, DiffScheme::smooth);
  const auto x2 = differentiate(x, 2, DiffScheme::smooth), y2 = differentiate(y, 2, DiffScheme::smooth);
  const auto x3 = differentiate(x, 3, DiffScheme::smooth), y3 = differentiate(y, 3, DiffScheme::smooth);
  std::vector<double> r(gamma.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double v2 = x1[i] * x1[i] + y1[i] * y1[i], v = std::sqrt(v2);
    const double c = x1[i] * y2[i] - y1[i] * x2[i];
    // u = v^3 / c; d/dt = (1/v) d/dp
    const double dc = x1[i] * y3[i] - y1[i] * x3[i];
    const double dv3 = 3.0 * v * (x1[i] * x2[i] + y1[i] * y2[i]);
    r[i] = (dv3 * c - v2 * v * dc) / (c * c) / v;
  }
  return r;
}

}  // namespace

NullCurve l_evolute(const PlaneCurve& gamma) {
  const auto fr = frenet(gamma);
  const std::size_t n = gamma.size();
  for (std::size_t i = 0; i < n; ++i)
    if (std::abs(fr.curvature[i]) <= tol_degenerate)
      throw Error(ErrorCode::degenerate, "l_evolute: curvature vanishes", gamma.grid.at(i));
  const auto kd = differentiate(fr.curvature, 1, DiffScheme::smooth);
  for (std::size_t i = 0; i < n; ++i)
    if (std::abs(kd[i]) <= tol_degenerate)
      throw Error(ErrorCode::degenerate, "l_evolute: curvature derivative vanishes", gamma.grid.at(i));
  std::vector<MinkVec3> pts(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = (*fr.radius)[i];
    const Vec2 c = gamma.points[i] + u * fr.normal[i];
    pts[i] = {c.x, c.y, u};
  }
  return {gamma.grid, std::move(pts), NullParam::generic, gamma.label + " L-evolute"};
}

PlaneCurve plane_from_null(const NullCurve& eps) {
  const std::size_t n = eps.size();
  const auto e3 = eps.component(2);
  const int s3 = sign_of(e3[0]);
  for (std::size_t i = 0; i < n; ++i)
    if (std::abs(e3[i]) <= tol_degenerate || sign_of(e3[i]) != s3)
      throw Error(ErrorCode::hypothesis, "plane_from_null: third component vanishes", eps.grid.at(i));
  const auto d3 = differentiate(e3, 1, DiffScheme::smooth);
  const int sd = sign_of(d3[0]);
  for (std::size_t i = 0; i < n; ++i)
    if (std::abs(d3[i]) <= tol_degenerate || sign_of(d3[i]) != sd)
      throw Error(ErrorCode::degenerate, "plane_from_null: third component is not monotone", eps.grid.at(i));

  const auto inv = invert_monotone(e3.values(), d3.values(), eps.grid.step);
  std::vector<double> flat(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    flat[2 * i] = eps.points[i].u1;
    flat[2 * i + 1] = eps.points[i].u2;
  }
  const auto r = detail::resample_interleaved(flat, 2, inv.xi);
  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = r[2 * i];
    y[i] = r[2 * i + 1];
  }
  const auto xd = differentiate(from(inv.grid, x), 1, DiffScheme::smooth);
  const auto yd = differentiate(from(inv.grid, y), 1, DiffScheme::smooth);
  std::vector<Vec2> pts(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = inv.grid.at(i);
    pts[i] = {x[i] - u * xd[i], y[i] - u * yd[i]};
  }
  PlaneCurve gamma(inv.grid, std::move(pts), PlaneParam::generic, eps.label + " involute");
  // k = +-1/u; keep the orientation with k u > 0.
  const auto fr = frenet(gamma);
  const std::size_t mid = n / 2;
  if (fr.curvature[mid] * inv.grid.at(mid) < 0) return reversed(gamma);
  return gamma;
}

PotentialFunction make_potential(SampledFn f, double s0, double b0) {
  const Grid& g = f.grid();
  if (!g.contains(s0)) throw Error(ErrorCode::out_of_range, "potential: s0 outside the grid", s0);
  for (std::size_t i = 0; i < f.size(); ++i)
    if (!(f[i] > 0.0)) throw Error(ErrorCode::invalid_argument, "potential must be positive", g.at(i));
  const auto F = cumulative_integral(f, s0);
  int sg = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double u = F[i] + b0;
    if (std::abs(g.at(i) - s0) <= 1e-9 * g.step && std::abs(u) <= tol_degenerate) continue;
    if (std::abs(u) <= tol_degenerate || (sg != 0 && sign_of(u) != sg))
      throw Error(ErrorCode::constraint_violation, "int f + b0 vanishes", g.at(i));
    sg = sign_of(u);
  }
  std::vector<double> inv(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) inv[i] = 1.0 / f[i];
  auto theta = cumulative_integral(from(g, std::move(inv)), s0).with_label("theta");
  return {std::move(f), s0, b0, std::move(theta)};
}

PotentialFunction make_potential(SampledFn f, double b0) {
  const double s0 = f.grid().start;
  return make_potential(std::move(f), s0, b0);
}

SampledFn radius_of(const PotentialFunction& p) {
  return shifted(cumulative_integral(p.f, p.s0), p.b0).with_label("u");
}

PotentialReport potential_of(const PlaneCurve& gamma, double s_first) {
  const auto fr = frenet(gamma);
  const Grid& g = gamma.grid;
  const std::size_t n = gamma.size();
  if (!fr.radius) {
    for (std::size_t i = 0; i < n; ++i)
      if (std::abs(fr.curvature[i]) <= tol_degenerate)
        throw Error(ErrorCode::degenerate, "potential_of: curvature vanishes", g.at(i));
  }
  const SampledFn& u = *fr.radius;
  const auto udot = radius_rate(gamma);
  std::vector<double> rate(n), f(n);
  int sg = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double q = u[i] * udot[i];
    if (std::abs(udot[i]) <= tol_degenerate || (sg != 0 && sign_of(q) != sg))
      throw Error(ErrorCode::degenerate, "potential_of: radius of curvature is not monotone", g.at(i));
    sg = sign_of(q);
    rate[i] = sign_of(u[i]) * std::sqrt(std::abs(udot[i] / u[i])) * fr.speed[i];
    f[i] = std::sqrt(std::abs(q));
  }
  const bool flipped = sg < 0;
  const auto S = cumulative_integral(from(g, rate), g.start);
  const auto t = cumulative_integral(fr.speed, g.start);
  const auto inv = invert_monotone(S.values(), rate, g.step);
  const Grid sg_grid{inv.grid.start + s_first, inv.grid.step, n};

  auto fs = resample(f, inv.xi);
  auto ts = resample(t.values(), inv.xi);
  const auto us = resample(u.values(), inv.xi);
  if (flipped)
    for (double& v : ts) v = -v;
  const double b0 = flipped ? -us[0] : us[0];
  return {make_potential(from(sg_grid, std::move(fs), "f"), sg_grid.start, b0), from(sg_grid, std::move(ts), "t"),
          flipped};
}

SampledFn torsion_from_potential(const PotentialFunction& p) {
  const auto& f = p.f;
  const auto d1 = differentiate(f, 1, DiffScheme::smooth);
  const auto d2 = differentiate(f, 2, DiffScheme::smooth);
  if (f.size() < 2 * geometry_trim + 8) throw Error(ErrorCode::too_few_samples, "potential grid too short");
  const std::size_t n = f.size() - 2 * geometry_trim;
  std::vector<double> tau(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = k + geometry_trim;
    tau[k] = d2[i] / f[i] - (d1[i] * d1[i] + 1.0) / (2.0 * f[i] * f[i]);
  }
  return from(f.grid().sub(geometry_trim, n), std::move(tau), "tau");
}

ReconstructionResult reconstruct(const PotentialFunction& p, double t0) {
  const Grid& g = p.f.grid();
  const std::size_t n = g.count;
  const auto u = radius_of(p);
  std::vector<double> ce(n), se(n), phidot(n), cg(n), sgm(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double c = std::cos(p.theta[i]), s = std::sin(p.theta[i]);
    ce[i] = p.f[i] * c;
    se[i] = p.f[i] * s;
    phidot[i] = u[i] / p.f[i];
    cg[i] = c * phidot[i];
    sgm[i] = s * phidot[i];
  }
  const auto e1 = cumulative_integral(from(g, ce), p.s0), e2 = cumulative_integral(from(g, se), p.s0);
  std::vector<MinkVec3> eps(n);
  for (std::size_t i = 0; i < n; ++i) eps[i] = {e1[i], e2[i], u[i]};
  const auto phi = shifted(cumulative_integral(from(g, phidot), p.s0), t0).with_label("t");
  const auto gx = cumulative_integral(from(g, cg), p.s0), gy = cumulative_integral(from(g, sgm), p.s0);

  const auto inv = invert_monotone(phi.values(), phidot, g.step);
  std::vector<double> flat(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    flat[2 * i] = gx[i];
    flat[2 * i + 1] = gy[i];
  }
  const auto r = detail::resample_interleaved(flat, 2, inv.xi);
  std::vector<Vec2> pts(n);
  for (std::size_t i = 0; i < n; ++i) pts[i] = {r[2 * i], r[2 * i + 1]};
  return {NullCurve(g, std::move(eps), NullParam::pseudo_arc, "epsilon"),
          PlaneCurve(inv.grid, std::move(pts), PlaneParam::arclength, "gamma"), phi, u};
}

SampledFn dilated_torsion(const SampledFn& tau, double lambda) {
  if (!(std::abs(lambda) > 0.0) || !std::isfinite(lambda))
    throw Error(ErrorCode::invalid_argument, "dilation factor must be nonzero");
  const double r = std::sqrt(std::abs(lambda));
  std::vector<double> v(tau.size());
  for (std::size_t i = 0; i < tau.size(); ++i) v[i] = tau[i] / std::abs(lambda);
  const Grid& g = tau.grid();
  return from(Grid{g.start * r, g.step * r, g.count}, std::move(v), "tau_lambda");
}

FamilyMember congruent_family(const SampledFn& tau, const FamilyInit& init) {
  if (!(init.f1 > tol_degenerate)) throw Error(ErrorCode::invalid_argument, "initial potential value must be positive");
  const auto tl = dilated_torsion(tau, init.lambda);
  const Grid& g = tl.grid();
  const auto values = tl.values();
  const OdeField field = [&](double s, std::span<const double> y, std::span<double> dy) {
    const double t = kernels::lagrange_at(values, (s - g.start) / g.step, 8);
    dy[0] = y[1];
    dy[1] = t * y[0] + (y[1] * y[1] + 1.0) / (2.0 * y[0]);
  };
  const double y0[2] = {init.f1, init.fdot1};
  const auto path = solve_ivp_on(field, g, init.s1, y0, [](std::span<const double> y) { return y[0] > tol_degenerate; });
  if (path.grid.count < 8) throw Error(ErrorCode::degenerate, "congruent_family: potential vanishes near s1", init.s1);
  return {make_potential(path.component(0, "f"), path.grid.start, init.b0), path.grid.count < g.count};
}

std::vector<FamilyMember> congruent_family(const SampledFn& tau, std::span<const FamilyInit> inits) {
  const auto m = static_cast<std::ptrdiff_t>(inits.size());
  std::vector<std::optional<FamilyMember>> out(inits.size());
  std::vector<std::exception_ptr> errs(inits.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < m; ++i) {
    try {
      out[i] = congruent_family(tau, inits[i]);
    } catch (...) {
      errs[i] = std::current_exception();
    }
  }
  for (const auto& e : errs)
    if (e) std::rethrow_exception(e);
  std::vector<FamilyMember> res;
  res.reserve(out.size());
  for (auto& o : out) res.push_back(std::move(*o));
  return res;
}

double third_order_residual(const PotentialFunction& p, const SampledFn& tau) {
  const Grid& gf = p.f.grid();
  const Grid& gt = tau.grid();
  if (std::abs(gf.step - gt.step) > 1e-12 * gt.step)
    throw Error(ErrorCode::invalid_argument, "third_order_residual: grid steps differ");
  const double off = (gf.start - gt.start) / gt.step;
  const auto shift = static_cast<std::ptrdiff_t>(std::llround(off));
  if (std::abs(off - static_cast<double>(shift)) > 1e-6)
    throw Error(ErrorCode::invalid_argument, "third_order_residual: grids are not aligned");
  const auto f1 = differentiate(p.f, 1, DiffScheme::smooth), f3 = differentiate(p.f, 3, DiffScheme::smooth);
  const auto t1 = differentiate(tau, 1, DiffScheme::smooth);
  const auto trim = static_cast<std::ptrdiff_t>(geometry_trim);
  double m = 0.0;
  for (std::ptrdiff_t i = trim; i + trim < static_cast<std::ptrdiff_t>(p.f.size()); ++i) {
    const std::ptrdiff_t j = i + shift;
    if (j < trim || j + trim >= static_cast<std::ptrdiff_t>(tau.size())) continue;
    const auto iu = static_cast<std::size_t>(i), ju = static_cast<std::size_t>(j);
    m = std::max(m, std::abs(f3[iu] - 2.0 * tau[ju] * f1[iu] - t1[ju] * p.f[iu]));
  }
  return m;
}

OlszakReport olszak_check(const PotentialFunction& p) {
  const std::size_t n = p.f.size();
  std::size_t best_first = 0, best_len = 0;
  for (std::size_t i = 0; i < n;) {
    if (std::abs(std::cos(0.5 * p.theta[i])) < 0.25) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < n && std::abs(std::cos(0.5 * p.theta[j])) >= 0.25) ++j;
    if (j - i > best_len) {
      best_first = i;
      best_len = j - i;
    }
    i = j;
  }
  const std::size_t need = std::max<std::size_t>(32, 2 * geometry_trim + 8);
  if (best_len < need) throw Error(ErrorCode::pole, "olszak_check: no pole-free run of 32 nodes");
  std::vector<double> g(best_len);
  for (std::size_t k = 0; k < best_len; ++k) g[k] = std::tan(0.5 * p.theta[best_first + k]);
  SampledFn gf(p.f.grid().sub(best_first, best_len), std::move(g), "g");
  auto S = schwarzian(gf, DiffScheme::smooth);
  const auto tau = torsion_from_potential(p);
  OlszakReport rep{gf, S, 0.0, 0.0, 0};
  for (std::size_t k = 0; k < S.size(); ++k) {
    const double t = tau[best_first + k];
    rep.r_plus = std::max(rep.r_plus, std::abs(S[k] - t));
    rep.r_minus = std::max(rep.r_minus, std::abs(S[k] + t));
  }
  if (std::min(rep.r_plus, rep.r_minus) <= 1e-4) rep.holds = rep.r_plus <= rep.r_minus ? 1 : -1;
  return rep;
}

EvolutePotential evolute_potential(const PotentialFunction& p, double beta0) {
  const Grid& g = p.f.grid();
  const std::size_t n = g.count;
  const auto fd = differentiate(p.f, 1, DiffScheme::smooth);
  const int sd = sign_of(fd[0]);
  std::vector<double> rate(n), fe(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(fd[i]) <= tol_degenerate || sign_of(fd[i]) != sd)
      throw Error(ErrorCode::degenerate, "evolute_potential: df/ds vanishes", g.at(i));
    rate[i] = std::sqrt(2.0 * std::abs(fd[i]));
    fe[i] = p.f[i] * rate[i];
  }
  const auto beta = shifted(cumulative_integral(from(g, rate), p.s0), beta0).with_label("beta");
  const auto tau = torsion_from_potential(p);
  const auto Sb = schwarzian(beta, DiffScheme::smooth);
  const std::size_t m = tau.size();
  std::vector<double> te(m);
  // tau = -S(g) for g = tan(theta/2), so the chain rule gives +S(beta) here.
  for (std::size_t k = 0; k < m; ++k) te[k] = (tau[k] + Sb[k]) / (2.0 * std::abs(fd[k + geometry_trim]));

  const auto inv = invert_monotone(beta.values(), rate, g.step);
  auto fe_u = resample(fe, inv.xi);
  const double fs0 = p.f(p.s0);
  auto potential = make_potential(from(inv.grid, std::move(fe_u), "f_eps"), beta0, sd * fs0 * fs0);

  const std::span<const double> bi = beta.values().subspan(geometry_trim, m);
  const std::span<const double> ri = std::span<const double>(rate).subspan(geometry_trim, m);
  const auto inv_i = invert_monotone(bi, ri, g.step);
  auto te_u = resample(te, inv_i.xi);
  SampledFn tau_eps(inv_i.grid, std::move(te_u), "tau_eps");
  return {beta, from(g, std::move(fe), "f_eps"), from(tau.grid(), std::move(te), "tau_eps"), std::move(potential),
          std::move(tau_eps)};
}

double constant_torsion_constraint(double tau, double a, double b, double c) {
  if (tau < 0) return 2 * std::abs(tau) * (a * a + b * b) + 1 - 2 * std::abs(tau) * c * c;
  if (tau == 0) return 4 * a * c - 1 - b * b;
  return 2 * tau * c * c + 1 - 8 * tau * a * b;
}

PotentialFunction constant_torsion_potential(double tau, double a, double b, double c, const Grid& grid,
                                             double b0) {
  const double res = constant_torsion_constraint(tau, a, b, c);
  if (!(std::abs(res) <= 1e-10)) {
    char msg[96];
    std::snprintf(msg, sizeof msg, "constant-torsion constraint violated, residual %.17g", res);
    throw ConstraintViolation(msg, res);
  }
  const double w = std::sqrt(2 * std::abs(tau));
  std::vector<double> f(grid.count);
  for (std::size_t i = 0; i < grid.count; ++i) {
    const double s = grid.at(i);
    if (tau < 0) f[i] = a * std::cos(w * s) + b * std::sin(w * s) + c;
    else if (tau == 0) f[i] = (a * s + b) * s + c;
    else f[i] = a * std::exp(w * s) + b * std::exp(-w * s) + c;
    if (!(f[i] > 0)) throw Error(ErrorCode::invalid_argument, "constant-torsion potential is not positive", s);
  }
  return make_potential(from(grid, std::move(f), "f"), b0);
}

TaitReport tait_certify(const PlaneCurve& gamma, std::size_t samples) {
  if (samples < 64 || samples > 256) throw Error(ErrorCode::invalid_argument, "tait_certify: samples must be 64..256");
  const std::size_t n = gamma.size();
  if (samples > n) throw Error(ErrorCode::too_few_samples, "tait_certify: curve has fewer nodes than samples");
  const auto eps = l_evolute(gamma);
  const auto u = eps.component(2);
  const auto du = differentiate(u, 1, DiffScheme::smooth);
  const int sd = sign_of(du[0]);
  for (std::size_t i = 0; i < n; ++i)
    if (std::abs(du[i]) <= tol_degenerate || sign_of(du[i]) != sd)
      throw Error(ErrorCode::hypothesis, "tait_certify: radius of curvature is not monotone", gamma.grid.at(i));
  std::vector<std::size_t> idx(samples);
  std::vector<double> cx(samples), cy(samples), r(samples);
  for (std::size_t j = 0; j < samples; ++j) {
    idx[j] = static_cast<std::size_t>(std::llround(static_cast<double>(j) * static_cast<double>(n - 1) /
                                                   static_cast<double>(samples - 1)));
    cx[j] = eps.points[idx[j]].u1;
    cy[j] = eps.points[idx[j]].u2;
    r[j] = eps.points[idx[j]].u3;
  }
  const auto nr = kernels::omp::min_nesting_margin(cx, cy, r);
  TaitReport rep;
  rep.samples = samples;
  rep.min_margin = nr.min_margin;
  rep.worst_i = idx[nr.worst_i];
  rep.worst_j = idx[nr.worst_j];
  rep.nested = nr.min_margin > 0.0;
  rep.graves = graves_check(eps, gamma.grid.start);
  rep.passed = rep.nested && rep.graves.passed;
  return rep;
}

}  // namespace nullevo
