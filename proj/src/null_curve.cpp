#include "nullevo/null_curve.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "nullevo/error.hpp"
#include "nullevo/kernels.hpp"
#include "resample.hpp"

namespace nullevo {

NullCurve::NullCurve(Grid g, std::vector<MinkVec3> pts, NullParam k, std::string l)
    : grid(g), points(std::move(pts)), kind(k), label(std::move(l)) {
  if (grid.count != points.size()) throw Error(ErrorCode::invalid_argument, "null curve: grid/point count mismatch");
  if (points.size() < 8) throw Error(ErrorCode::too_few_samples, "null curve needs >= 8 points");
  for (std::size_t i = 0; i < points.size(); ++i)
    if (!std::isfinite(points[i].u1) || !std::isfinite(points[i].u2) || !std::isfinite(points[i].u3))
      throw Error(ErrorCode::invalid_argument, "null curve: non-finite point", static_cast<double>(i));
}

SampledFn NullCurve::component(int c) const {
  std::vector<double> v(size());
  for (std::size_t i = 0; i < size(); ++i) v[i] = points[i][c];
  return {grid, std::move(v), label + ".u" + std::to_string(c + 1)};
}

NullCurve NullCurve::slice(std::size_t first, std::size_t n) const {
  if (first + n > size()) throw Error(ErrorCode::out_of_range, "slice outside curve");
  return {grid.sub(first, n),
          std::vector<MinkVec3>(points.begin() + static_cast<std::ptrdiff_t>(first),
                                points.begin() + static_cast<std::ptrdiff_t>(first + n)),
          kind, label};
}

namespace {

// Frame and torsion stencils: the wide scheme whenever the curve is long enough.
DiffScheme frame_scheme(std::size_t n) {
  return n >= kernels::min_samples(3, DiffScheme::wide) ? DiffScheme::wide : DiffScheme::smooth;
}

std::vector<MinkVec3> derivative(const NullCurve& eps, int order, DiffScheme scheme) {
  std::vector<MinkVec3> out(eps.size());
  for (int c = 0; c < 3; ++c) {
    const auto d = differentiate(eps.component(c), order, scheme);
    for (std::size_t i = 0; i < eps.size(); ++i) {
      if (c == 0) out[i].u1 = d[i];
      else if (c == 1) out[i].u2 = d[i];
      else out[i].u3 = d[i];
    }
  }
  return out;
}

std::vector<MinkVec3> derivative(const Grid& g, const std::vector<MinkVec3>& v) {
  return derivative(NullCurve(g, v), 1, frame_scheme(v.size()));
}

void require_interior(const NullCurve& eps) {
  if (eps.size() < 2 * geometry_trim + 8)
    throw Error(ErrorCode::too_few_samples, "null curve too short for geometry stencils");
}

}  // namespace

NullReport verify_null(const NullCurve& eps) {
  require_interior(eps);
  const auto d1 = derivative(eps, 1, DiffScheme::smooth), d2 = derivative(eps, 2, DiffScheme::smooth);
  NullReport r;
  r.min_gram = std::numeric_limits<double>::infinity();
  for (std::size_t i = geometry_trim; i + geometry_trim < eps.size(); ++i) {
    const double e2 = euclid_dot(d1[i], d1[i]);
    r.null_residual = std::max(r.null_residual, e2 > 0 ? std::abs(lorentz_dot(d1[i], d1[i])) / e2 : 1.0);
    const double ab = euclid_dot(d1[i], d2[i]);
    r.min_gram = std::min(r.min_gram, e2 * euclid_dot(d2[i], d2[i]) - ab * ab);
    r.pseudo_arc_residual = std::max(r.pseudo_arc_residual, std::abs(std::abs(lorentz_dot(d2[i], d2[i])) - 1.0));
  }
  r.null_ok = r.null_residual <= 1e-6;
  r.regular_ok = r.min_gram > tol_degenerate;
  r.pseudo_arc_ok = eps.kind != NullParam::pseudo_arc || r.pseudo_arc_residual <= 1e-5;
  r.passed = r.null_ok && r.regular_ok && r.pseudo_arc_ok;
  return r;
}

PseudoArcResult pseudo_arc_reparam(const NullCurve& eps, double s_start, int sign) {
  if (sign != 1 && sign != -1) throw Error(ErrorCode::invalid_argument, "pseudo-arc sign must be +1 or -1");
  const std::size_t n = eps.size();
  const auto d2 = derivative(eps, 2, DiffScheme::smooth);
  std::vector<double> rate(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double q = std::abs(lorentz_dot(d2[i], d2[i]));
    if (q <= tol_degenerate) throw Error(ErrorCode::degenerate, "pseudo-arc: acceleration vanishes", eps.grid.at(i));
    rate[i] = std::sqrt(std::sqrt(q));
  }
  const auto S = cumulative_integral(SampledFn(eps.grid, rate), eps.grid.start);
  const double total = S.back();
  const Grid out = sign > 0 ? Grid::over(s_start, s_start + total, n) : Grid::over(s_start - total, s_start, n);
  std::vector<double> targets(n), slope(n);
  for (std::size_t i = 0; i < n; ++i) {
    targets[i] = sign > 0 ? out.at(i) - s_start : s_start - out.at(i);
    slope[i] = rate[i] * eps.grid.step;
  }
  auto xi = detail::invert_increasing(S.values(), slope, targets);
  std::vector<double> flat(3 * n);
  for (std::size_t i = 0; i < n; ++i) {
    flat[3 * i] = eps.points[i].u1;
    flat[3 * i + 1] = eps.points[i].u2;
    flat[3 * i + 2] = eps.points[i].u3;
  }
  const auto r = detail::resample_interleaved(flat, 3, xi);
  std::vector<MinkVec3> pts(n);
  std::vector<double> t(n);
  for (std::size_t i = 0; i < n; ++i) {
    pts[i] = {r[3 * i], r[3 * i + 1], r[3 * i + 2]};
    t[i] = eps.grid.start + xi[i] * eps.grid.step;
  }
  return {NullCurve(out, std::move(pts), NullParam::pseudo_arc, eps.label), SampledFn(out, std::move(t), "t")};
}

MinkVec3 solve_binormal(MinkVec3 T, MinkVec3 N) {
  const MinkVec3 V{T.u1, T.u2, -T.u3};
  const MinkVec3 W = V - lorentz_dot(V, N) * N;
  const double wt = lorentz_dot(W, T);
  if (std::abs(wt) <= tol_degenerate) throw Error(ErrorCode::degenerate, "binormal conditions are singular");
  const MinkVec3 Wp = (-1.0 / wt) * W;
  return Wp + (0.5 * lorentz_dot(Wp, Wp)) * T;
}

double frame_residual(const FrameAt& f) {
  return std::max({std::abs(lorentz_dot(f.T, f.T)), std::abs(lorentz_dot(f.B, f.B)),
                   std::abs(lorentz_dot(f.N, f.N) - 1.0), std::abs(lorentz_dot(f.T, f.N)),
                   std::abs(lorentz_dot(f.B, f.N)), std::abs(lorentz_dot(f.T, f.B) + 1.0)});
}

double frame_residual(const CartanFrame& f) {
  double r = 0.0;
  for (std::size_t i = 0; i < f.T.size(); ++i) r = std::max(r, frame_residual(f.at(i)));
  return r;
}

CartanFrame cartan_frame(const NullCurve& eps) {
  if (eps.kind != NullParam::pseudo_arc)
    throw Error(ErrorCode::invalid_argument, "cartan_frame needs a pseudo-arc parameterized curve");
  require_interior(eps);
  CartanFrame f{eps.grid, derivative(eps, 1, frame_scheme(eps.size())), {}, derivative(eps, 2, frame_scheme(eps.size()))};
  f.B.resize(eps.size());
  for (std::size_t i = 0; i < eps.size(); ++i) {
    try {
      f.B[i] = solve_binormal(f.T[i], f.N[i]);
    } catch (const Error&) {
      throw Error(ErrorCode::degenerate, "cartan_frame: binormal system is singular", eps.grid.at(i));
    }
  }
  return f;
}

TorsionReport pseudo_torsion_report(const NullCurve& eps) {
  const auto fr = cartan_frame(eps);
  const auto d3 = derivative(eps, 3, frame_scheme(eps.size()));
  const auto Td = derivative(eps.grid, fr.T);
  const auto Bd = derivative(eps.grid, fr.B);
  const std::size_t n = eps.size() - 2 * geometry_trim;
  std::vector<double> tau(n);
  TorsionReport rep{SampledFn(eps.grid.sub(geometry_trim, n), std::vector<double>(n, 0.0)), 0, 0, 0};
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = k + geometry_trim;
    tau[k] = -lorentz_dot(d3[i], fr.B[i]);
    rep.res_T = std::max(rep.res_T, euclid_norm(Td[i] - fr.N[i]));
    rep.res_B = std::max(rep.res_B, euclid_norm(Bd[i] - tau[k] * fr.N[i]));
    rep.res_N = std::max(rep.res_N, euclid_norm(d3[i] - tau[k] * fr.T[i] - fr.B[i]));
  }
  rep.tau = SampledFn(eps.grid.sub(geometry_trim, n), std::move(tau), "tau");
  return rep;
}

SampledFn pseudo_torsion(const NullCurve& eps) { return pseudo_torsion_report(eps).tau; }

NullCurve integrate_cartan(const SampledFn& tau, double s0, const FrameAt& frame0, MinkVec3 x0) {
  const double fres = frame_residual(frame0);
  if (!(fres <= 1e-6)) throw Error(ErrorCode::invalid_frame, "initial frame violates the Cartan relations", fres);
  const Grid& g = tau.grid();
  if (!g.contains(s0)) throw Error(ErrorCode::out_of_range, "integrate_cartan: s0 outside grid", s0);
  const std::size_t i0 = g.nearest(s0);
  if (std::abs(g.at(i0) - s0) > 1e-9 * g.step)
    throw Error(ErrorCode::invalid_argument, "integrate_cartan: s0 must be a grid node", s0);

  const OdeField field = [&tau](double s, std::span<const double> y, std::span<double> dy) {
    const double t = tau(s);
    // y = x(0..2), T(3..5), B(6..8), N(9..11)
    for (int c = 0; c < 3; ++c) {
      dy[c] = y[3 + c];
      dy[3 + c] = y[9 + c];
      dy[6 + c] = t * y[9 + c];
      dy[9 + c] = t * y[3 + c] + y[6 + c];
    }
  };
  auto pack = [](MinkVec3 x, const FrameAt& f) {
    return std::vector<double>{x.u1, x.u2, x.u3, f.T.u1, f.T.u2, f.T.u3,
                               f.B.u1, f.B.u2, f.B.u3, f.N.u1, f.N.u2, f.N.u3};
  };
  auto vec = [](const std::vector<double>& y, int at) { return MinkVec3{y[at], y[at + 1], y[at + 2]}; };

  std::vector<MinkVec3> pts(g.count);
  pts[i0] = x0;
  for (int dir : {+1, -1}) {
    auto y = pack(x0, frame0);
    std::size_t steps = 0;
    for (std::ptrdiff_t i = static_cast<std::ptrdiff_t>(i0) + dir; i >= 0 && i < static_cast<std::ptrdiff_t>(g.count);
         i += dir) {
      const double s = g.at(static_cast<std::size_t>(i - dir));
      rk4_step(field, s, dir * g.step, y);
      if (++steps % 64 == 0) {
        const MinkVec3 B = solve_binormal(vec(y, 3), vec(y, 9));
        y[6] = B.u1;
        y[7] = B.u2;
        y[8] = B.u3;
      }
      pts[static_cast<std::size_t>(i)] = vec(y, 0);
    }
  }
  return {g, std::move(pts), NullParam::pseudo_arc, "cartan"};
}

MinkVec3 null_helix_at(double tau, double s) {
  if (tau < 0) {
    const double c = std::sqrt(2 * std::abs(tau)), k = 1 / (2 * std::abs(tau));
    return {k * std::cos(c * s), k * std::sin(c * s), k * c * s};
  }
  if (tau == 0) return {s * s * s / 4 - s / 3, s * s / 2, s * s * s / 4 + s / 3};
  const double c = std::sqrt(2 * tau), k = 1 / (2 * tau);
  return {k * c * s, k * std::cosh(c * s), k * std::sinh(c * s)};
}

NullCurve null_helix(double tau, const Grid& grid) {
  std::vector<MinkVec3> pts(grid.count);
  for (std::size_t i = 0; i < grid.count; ++i) pts[i] = null_helix_at(tau, grid.at(i));
  const char* name = tau < 0 ? "helix e1" : (tau == 0 ? "helix e2" : "helix e3");
  return {grid, std::move(pts), NullParam::pseudo_arc, name};
}

GravesReport graves_check(const NullCurve& eps, double t0) {
  if (!eps.grid.contains(t0)) throw Error(ErrorCode::out_of_range, "graves_check: t0 outside grid", t0);
  const std::size_t i0 = eps.grid.nearest(t0);
  GravesReport r;
  r.max_separation = -std::numeric_limits<double>::infinity();
  bool inside = true;
  int sign = 0;
  r.third_sign_constant = true;
  for (std::size_t i = i0 + 1; i < eps.size(); ++i) {
    const MinkVec3 d = eps.points[i] - eps.points[i0];
    const double q = lorentz_dot(d, d);
    r.max_separation = std::max(r.max_separation, q);
    if (q > tol_degenerate * (1.0 + euclid_dot(d, d))) inside = false;
    const int sg = d.u3 > 0 ? 1 : (d.u3 < 0 ? -1 : 0);
    if (sg == 0 || (sign != 0 && sg != sign)) r.third_sign_constant = false;
    if (sign == 0) sign = sg;
  }
  r.passed = inside && r.third_sign_constant && i0 + 1 < eps.size();
  return r;
}

NullCurve apply_laguerre(const LaguerreMap& L, const NullCurve& eps) {
  std::vector<MinkVec3> pts(eps.size());
  for (std::size_t i = 0; i < eps.size(); ++i) pts[i] = L(eps.points[i]);
  const bool keep = eps.kind == NullParam::pseudo_arc && std::abs(L.scale()) == 1.0;
  return {eps.grid, std::move(pts), keep ? NullParam::pseudo_arc : NullParam::generic, eps.label};
}

AffineMap3 register_lorentz(const NullCurve& ref, const NullCurve& moving, std::size_t base) {
  if (base >= ref.size() || base >= moving.size())
    throw Error(ErrorCode::out_of_range, "registration base outside curve");
  const auto fr = cartan_frame(ref).at(base);
  const auto fm = cartan_frame(moving).at(base);
  Eigen::Matrix3d R, M;
  const MinkVec3 cr[3] = {fr.T, fr.B, fr.N}, cm[3] = {fm.T, fm.B, fm.N};
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 3; ++i) {
      R(i, j) = cr[j][i];
      M(i, j) = cm[j][i];
    }
  const Eigen::Matrix3d A = R * M.inverse();
  AffineMap3 map;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) map.A[i][j] = A(i, j);
  map.t = ref.points[base] - mul(map.A, moving.points[base]);
  return map;
}

double lorentz_registered_distance(const NullCurve& ref, const NullCurve& moving, std::size_t base) {
  if (ref.size() != moving.size()) throw Error(ErrorCode::invalid_argument, "registered distance: node counts differ");
  const auto m = register_lorentz(ref, moving, base);
  double d = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i) d = std::max(d, euclid_norm(ref.points[i] - m(moving.points[i])));
  return d;
}

double sup_distance(const NullCurve& a, const NullCurve& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::invalid_argument, "sup_distance: node counts differ");
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, euclid_norm(a.points[i] - b.points[i]));
  return d;
}

}  // namespace nullevo
