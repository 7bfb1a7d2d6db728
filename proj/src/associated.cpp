#include "nullevo/associated.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "nullevo/error.hpp"
#include "resample.hpp"

namespace nullevo {

namespace {

void require_pseudo_arc(const NullCurve& eps, const char* op) {
  if (eps.kind != NullParam::pseudo_arc)
    throw Error(ErrorCode::invalid_argument, std::string(op) + " needs a pseudo-arc parameterized curve");
}

std::vector<MinkVec3> resample_points(std::span<const MinkVec3> p, std::span<const double> xi) {
  std::vector<double> flat(3 * p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    flat[3 * i] = p[i].u1;
    flat[3 * i + 1] = p[i].u2;
    flat[3 * i + 2] = p[i].u3;
  }
  const auto r = detail::resample_interleaved(flat, 3, xi);
  std::vector<MinkVec3> out(xi.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = {r[3 * i], r[3 * i + 1], r[3 * i + 2]};
  return out;
}

std::vector<double> resample_values(std::span<const double> v, std::span<const double> xi) {
  return detail::resample_interleaved(v, 1, xi);
}

// Sine of the Euclidean angle between two directions.
double angle(MinkVec3 a, MinkVec3 b) { return euclid_norm(euclid_cross(a, b)) / (euclid_norm(a) * euclid_norm(b)); }

// Integral of `rate` times each point, from the first node.
std::vector<MinkVec3> integrate_points(const Grid& g, std::span<const MinkVec3> d, MinkVec3 start, double s0) {
  const std::size_t n = d.size();
  std::vector<double> c[3];
  for (auto& v : c) v.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    c[0][i] = d[i].u1;
    c[1][i] = d[i].u2;
    c[2][i] = d[i].u3;
  }
  const auto x = cumulative_integral(SampledFn(g, c[0]), s0), y = cumulative_integral(SampledFn(g, c[1]), s0),
             z = cumulative_integral(SampledFn(g, c[2]), s0);
  std::vector<MinkVec3> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = start + MinkVec3{x[i], y[i], z[i]};
  return out;
}

}  // namespace

AssociationReport bertrand_mate(const NullCurve& eps) {
  require_pseudo_arc(eps, "bertrand_mate");
  const auto tau = pseudo_torsion(eps);
  const auto [lo, hi] = std::minmax_element(tau.values().begin(), tau.values().end());
  double mean = 0.0;
  for (double t : tau.values()) mean += t;
  mean /= static_cast<double>(tau.size());
  if (*hi - *lo > 1e-4 * (1.0 + std::abs(mean)))
    throw Error(ErrorCode::hypothesis, "bertrand_mate: pseudo-torsion is not constant (spread " + std::to_string(*hi - *lo) + ")");
  if (std::abs(mean) <= tol_degenerate) throw Error(ErrorCode::hypothesis, "bertrand_mate: pseudo-torsion vanishes");

  const auto fr = cartan_frame(eps);
  const std::size_t n = eps.size();
  std::vector<MinkVec3> pts(n);
  for (std::size_t i = 0; i < n; ++i) pts[i] = eps.points[i] - (1.0 / mean) * fr.N[i];
  NullCurve mate(eps.grid, std::move(pts), NullParam::pseudo_arc, eps.label + " Bertrand mate");

  AssociationReport rep{mate, SampledFn(eps.grid, std::vector<double>(eps.grid.count), "beta"), true, {}, {}, {}};
  std::vector<double> b(n);
  for (std::size_t i = 0; i < n; ++i) b[i] = eps.grid.at(i);
  rep.beta = SampledFn(eps.grid, std::move(b), "beta");
  rep.scalars["tau"] = mean;

  const auto tau_bar = pseudo_torsion(mate);
  const auto fb = cartan_frame(mate);
  double rt = 0.0, rn = 0.0, rf = 0.0;
  for (std::size_t k = 0; k < tau_bar.size(); ++k) rt = std::max(rt, std::abs(tau_bar[k] - mean));
  const auto f = differentiate(eps.component(2), 1, DiffScheme::smooth);
  const auto f2 = differentiate(eps.component(2), 3, DiffScheme::smooth);
  const auto fbar = differentiate(mate.component(2), 1, DiffScheme::smooth);
  std::vector<double> fbv(n);
  for (std::size_t i = 0; i < n; ++i) fbv[i] = fbar[i];
  for (std::size_t i = geometry_trim; i + geometry_trim < n; ++i) {
    rn = std::max(rn, angle(fb.N[i], fr.N[i]));
    rf = std::max(rf, std::abs(fbar[i] - (f[i] - f2[i] / mean)));
  }
  rep.functions.emplace("f_bar", SampledFn(eps.grid, std::move(fbv), "f_bar"));
  rep.residuals["torsion"] = rt;
  rep.residuals["normal_lines"] = rn;
  rep.residuals["potential"] = rf;
  return rep;
}

AssociationReport common_binormal_partner(const NullCurve& eps, double v_s0, int sign) {
  require_pseudo_arc(eps, "common_binormal_partner");
  if (sign != 1 && sign != -1) throw Error(ErrorCode::invalid_argument, "sign must be +1 or -1");
  if (!(std::abs(v_s0) > tol_degenerate) || !std::isfinite(v_s0))
    throw Error(ErrorCode::invalid_argument, "v(s0) must be finite and nonzero", v_s0);
  const auto tau = pseudo_torsion(eps);
  const Grid& g = tau.grid();
  const std::size_t m = tau.size();
  const double s0 = g.start;
  const auto tau_dot = differentiate(tau, 1, DiffScheme::smooth);

  std::vector<double> sq(m);
  for (std::size_t k = 0; k < m; ++k) sq[k] = tau[k] * tau[k];
  const auto I = cumulative_integral(SampledFn(g, std::move(sq)), s0);
  std::vector<double> v(m);
  for (std::size_t k = 0; k < m; ++k) {
    const double iv = 1.0 / v_s0 - 0.5 * I[k];
    if (std::abs(iv) <= tol_degenerate) throw Error(ErrorCode::degenerate, "common_binormal_partner: v blows up", g.at(k));
    v[k] = 1.0 / iv;
  }

  // a0^2 as the mean of +-(1 + v tau') / v^4, both branches.
  int branch = 0;
  double best_mean = 0.0, best_dev = std::numeric_limits<double>::infinity();
  for (int pm : {1, -1}) {
    double mean = 0.0;
    for (std::size_t k = 0; k < m; ++k) mean += pm * (1.0 + v[k] * tau_dot[k]) / std::pow(v[k], 4);
    mean /= static_cast<double>(m);
    if (!(mean > 0.0)) continue;
    double dev = 0.0;
    for (std::size_t k = 0; k < m; ++k)
      dev = std::max(dev, std::abs(pm * (1.0 + v[k] * tau_dot[k]) / std::pow(v[k], 4) - mean) / mean);
    if (dev < best_dev) {
      best_dev = dev;
      best_mean = mean;
      branch = pm;
    }
  }
  if (branch == 0) {
    // Neither branch gives a positive a0^2; report the + branch spread.
    double mean = 0.0, lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (std::size_t k = 0; k < m; ++k) {
      const double c = (1.0 + v[k] * tau_dot[k]) / std::pow(v[k], 4);
      mean += c;
      lo = std::min(lo, c);
      hi = std::max(hi, c);
    }
    mean /= static_cast<double>(m);
    best_mean = mean;
    best_dev = (hi - lo) / std::max(std::abs(mean), tol_degenerate);
  }

  const double a0 = sign * std::sqrt(std::abs(best_mean));
  std::vector<double> a(m);
  for (std::size_t k = 0; k < m; ++k) a[k] = a0 * v[k] * v[k];
  SampledFn vf(g, v, "v"), af(g, a, "a");
  const auto beta = cumulative_integral(af, s0).with_label("beta");

  const auto vd = differentiate(vf, 1, DiffScheme::smooth);
  double st1 = 0.0;
  for (std::size_t k = 0; k < m; ++k) st1 = std::max(st1, std::abs(-2.0 * vd[k] + v[k] * v[k] * tau[k] * tau[k]));

  AssociationReport rep{std::nullopt, beta, branch != 0 && best_dev <= 1e-4, {}, {}, {}};
  rep.scalars["a0_squared"] = best_mean;
  rep.scalars["a0"] = a0;
  rep.scalars["branch"] = branch;
  rep.scalars["v0"] = v_s0;
  rep.functions.emplace("v", vf);
  rep.functions.emplace("a", af);
  rep.residuals["a0_squared_deviation"] = best_dev;
  rep.residuals["v_equation"] = st1;
  if (!rep.feasible) return rep;

  const auto fr = cartan_frame(eps);
  std::vector<MinkVec3> zeta(m), B(m);
  for (std::size_t k = 0; k < m; ++k) {
    B[k] = fr.B[k + geometry_trim];
    zeta[k] = eps.points[k + geometry_trim] + v[k] * B[k];
  }
  const auto inv = detail::invert_monotone(beta.values(), a, g.step);
  NullCurve partner(inv.grid, resample_points(zeta, inv.xi), NullParam::pseudo_arc, eps.label + " common binormal");
  const auto Bs = resample_points(B, inv.xi);
  const auto ts = resample_values(tau.values(), inv.xi);
  const auto fb = cartan_frame(partner);
  const auto tb = pseudo_torsion(partner);
  double rb = 0.0, rp = 0.0, rm = 0.0;
  for (std::size_t i = geometry_trim; i + geometry_trim < m; ++i) rb = std::max(rb, angle(fb.B[i], Bs[i]));
  for (std::size_t k = 0; k < tb.size(); ++k) {
    rp = std::max(rp, std::abs(tb[k] - ts[k + geometry_trim]));
    rm = std::max(rm, std::abs(tb[k] + ts[k + geometry_trim]));
  }
  rep.residuals["binormal_lines"] = rb;
  rep.residuals["torsion"] = std::min(rp, rm);
  rep.scalars["torsion_sign"] = rp <= rm ? 1.0 : -1.0;
  rep.partner = std::move(partner);
  return rep;
}

AssociationReport binormal_directional(const NullCurve& eps) {
  require_pseudo_arc(eps, "binormal_directional");
  const auto tau = pseudo_torsion(eps);
  const Grid& g = tau.grid();
  const std::size_t m = tau.size();
  for (std::size_t k = 0; k < m; ++k)
    if (std::abs(tau[k]) <= tol_degenerate || (tau[k] > 0) != (tau[0] > 0))
      throw Error(ErrorCode::degenerate, "binormal_directional: pseudo-torsion vanishes", g.at(k));

  const auto fr = cartan_frame(eps);
  const auto f = differentiate(eps.component(2), 1, DiffScheme::smooth);
  const auto fd = differentiate(eps.component(2), 2, DiffScheme::smooth);
  std::vector<double> rate(m), fbar(m);
  std::vector<MinkVec3> d(m);
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t i = k + geometry_trim;
    rate[k] = std::abs(tau[k]);
    d[k] = rate[k] * fr.B[i];
    fbar[k] = (fd[i] * fd[i] + 1.0) / (2.0 * f[i]);
  }
  const auto beta = cumulative_integral(SampledFn(g, rate), g.start).with_label("beta");
  const auto curve = integrate_points(g, d, MinkVec3{}, g.start);
  const auto inv = detail::invert_monotone(beta.values(), rate, g.step);
  NullCurve partner(inv.grid, resample_points(curve, inv.xi), NullParam::pseudo_arc, eps.label + " binormal-directional");

  const auto ts = resample_values(tau.values(), inv.xi);
  const auto fs = resample_values(fbar, inv.xi);
  const auto tb = pseudo_torsion(partner);
  const auto fp = differentiate(partner.component(2), 1, DiffScheme::smooth);
  double rt = 0.0, rf = 0.0;
  for (std::size_t k = 0; k < tb.size(); ++k) rt = std::max(rt, std::abs(tb[k] * ts[k + geometry_trim] - 1.0));
  for (std::size_t i = geometry_trim; i + geometry_trim < m; ++i) rf = std::max(rf, std::abs(fp[i] - fs[i]));

  AssociationReport rep{std::move(partner), beta, true, {}, {}, {}};
  rep.functions.emplace("f_bar", SampledFn(g, std::move(fbar), "f_bar"));
  rep.functions.emplace("tau", tau);
  rep.residuals["torsion_product"] = rt;
  rep.residuals["potential"] = rf;
  return rep;
}

AssociationReport flatten_to_helix(const NullCurve& eps, double s0) {
  require_pseudo_arc(eps, "flatten_to_helix");
  const auto tau = pseudo_torsion(eps);
  std::vector<double> h(tau.size());
  for (std::size_t k = 0; k < h.size(); ++k) h[k] = -tau[k];
  const auto sol = solve_inverse_schwarzian_full(SampledFn(tau.grid(), std::move(h)), s0);
  const Grid& g = sol.lambda.grid();
  const std::size_t m = g.count;
  if (m < 4 * geometry_trim + 16)
    throw Error(ErrorCode::pole, "flatten_to_helix: pole-free range around s0 is too short", s0);
  const auto first = static_cast<std::size_t>(std::llround((g.start - eps.grid.start) / eps.grid.step));

  const auto fr = cartan_frame(eps);
  std::vector<MinkVec3> d(m);
  for (std::size_t k = 0; k < m; ++k) {
    const double ld = sol.lambda_dot[k];
    d[k] = (ld * ld) * fr.T[first + k];
  }
  // d eps_bar / ds = lambda'^2 T, anchored at eps(s0).
  const auto curve = integrate_points(g, d, eps.points[first + sol.s0_index], g.at(sol.s0_index));
  const auto inv = detail::invert_monotone(sol.lambda.values(), sol.lambda_dot.values(), g.step);
  NullCurve partner(inv.grid, resample_points(curve, inv.xi), NullParam::pseudo_arc, eps.label + " flattened");

  NullCurve along(g, curve);
  double rpar = 0.0;
  {
    const auto cx = differentiate(along.component(0), 1, DiffScheme::smooth),
               cy = differentiate(along.component(1), 1, DiffScheme::smooth),
               cz = differentiate(along.component(2), 1, DiffScheme::smooth);
    for (std::size_t k = geometry_trim; k + geometry_trim < m; ++k)
      rpar = std::max(rpar, angle({cx[k], cy[k], cz[k]}, fr.T[first + k]));
  }
  // W = d eps_bar / ds_bar = lambda' T, resampled onto s_bar.
  std::vector<MinkVec3> w(m);
  for (std::size_t k = 0; k < m; ++k) w[k] = sol.lambda_dot[k] * fr.T[first + k];
  const NullCurve W(inv.grid, resample_points(w, inv.xi));
  double r3 = 0.0;
  for (int c = 0; c < 3; ++c) {
    const auto w3 = differentiate(W.component(c), 3, DiffScheme::smooth);
    for (std::size_t k = geometry_trim; k + geometry_trim < m; ++k) r3 = std::max(r3, std::abs(w3[k]));
  }
  const auto tb = pseudo_torsion(partner);

  AssociationReport rep{std::nullopt, sol.lambda.with_label("beta"), true, {}, {}, {}};
  rep.functions.emplace("lambda", sol.lambda);
  rep.functions.emplace("lambda_dot", sol.lambda_dot);
  rep.scalars["truncated"] = m < tau.size() ? 1.0 : 0.0;
  rep.scalars["s_start"] = g.start;
  rep.scalars["s_stop"] = g.stop();
  rep.residuals["pseudo_arc"] = verify_null(partner).pseudo_arc_residual;
  rep.residuals["torsion"] = tb.max_abs();
  rep.residuals["tangent_parallel"] = rpar;
  rep.residuals["third_derivative"] = r3;
  rep.partner = std::move(partner);
  return rep;
}

}  // namespace nullevo
