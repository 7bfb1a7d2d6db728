#include "nullevo/scalar_fn.hpp"

#include <algorithm>
#include <cmath>

#include "nullevo/error.hpp"
#include "nullevo/kernels.hpp"

namespace nullevo {

Grid Grid::over(double start, double stop, std::size_t count) {
  if (count < 2) throw Error(ErrorCode::too_few_samples, "grid needs at least two nodes");
  if (!(stop > start)) throw Error(ErrorCode::invalid_argument, "grid stop must exceed start");
  return {start, (stop - start) / static_cast<double>(count - 1), count};
}

bool Grid::contains(double x) const {
  const double guard = 1e-9 * step;
  return x >= start - guard && x <= stop() + guard;
}

std::size_t Grid::nearest(double x) const {
  const double xi = std::nearbyint((x - start) / step);
  if (xi <= 0.0) return 0;
  return std::min(static_cast<std::size_t>(xi), count - 1);
}

SampledFn::SampledFn(Grid grid, std::vector<double> values, std::string label)
    : grid_(grid), values_(std::move(values)), label_(std::move(label)) {
  if (!(grid_.step > 0.0)) throw Error(ErrorCode::invalid_argument, "step must be positive");
  if (values_.size() < 8) throw Error(ErrorCode::too_few_samples, "sampled function needs >= 8 values");
  if (grid_.count != values_.size())
    throw Error(ErrorCode::invalid_argument, "grid count does not match value count");
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (!std::isfinite(values_[i]))
      throw Error(ErrorCode::invalid_argument, "non-finite sample in " + label_, grid_.at(i));
}

double SampledFn::operator()(double x) const {
  if (!grid_.contains(x)) throw Error(ErrorCode::out_of_range, "evaluation outside grid of " + label_, x);
  const double xi = std::clamp((x - grid_.start) / grid_.step, 0.0, static_cast<double>(size() - 1));
  return kernels::lagrange_at(values_, xi, 4);
}

SampledFn SampledFn::slice(std::size_t first, std::size_t n) const {
  if (first + n > size()) throw Error(ErrorCode::out_of_range, "slice outside grid");
  return {grid_.sub(first, n),
          std::vector<double>(values_.begin() + static_cast<std::ptrdiff_t>(first),
                              values_.begin() + static_cast<std::ptrdiff_t>(first + n)),
          label_};
}

SampledFn SampledFn::with_label(std::string label) const { return {grid_, values_, std::move(label)}; }

double SampledFn::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

SampledFn SampledPath::component(std::size_t comp, std::string label) const {
  std::vector<double> v(grid.count);
  for (std::size_t i = 0; i < grid.count; ++i) v[i] = at(i, comp);
  return {grid, std::move(v), std::move(label)};
}

SampledFn differentiate(const SampledFn& f, int order, DiffScheme scheme) {
  const auto& plan = kernels::cached_plan(f.size(), order, scheme);
  std::vector<double> out(f.size());
  kernels::omp::apply_stencil(plan, f.values(), 1, out, 1.0 / std::pow(f.grid().step, order));
  return {f.grid(), std::move(out), f.label() + "'"};
}

SampledFn cumulative_integral(const SampledFn& f, double s0) {
  const Grid& g = f.grid();
  if (!g.contains(s0)) throw Error(ErrorCode::out_of_range, "integration base outside grid", s0);
  const std::size_t n = f.size();
  const double h = g.step;
  const auto v = f.values();
  // Exact integral of the cubic interpolant over each cell.
  std::vector<double> acc(n, 0.0);
  double carry = 0.0;  // Kahan compensation
  for (std::size_t j = 0; j + 1 < n; ++j) {
    double cell;
    if (j == 0)
      cell = 9 * v[0] + 19 * v[1] - 5 * v[2] + v[3];
    else if (j + 2 == n)
      cell = 9 * v[n - 1] + 19 * v[n - 2] - 5 * v[n - 3] + v[n - 4];
    else
      cell = -v[j - 1] + 13 * v[j] + 13 * v[j + 1] - v[j + 2];
    const double y = cell * h / 24.0 - carry;
    const double t = acc[j] + y;
    carry = (t - acc[j]) - y;
    acc[j + 1] = t;
  }
  // Value at s0: cell start plus 3-point Gauss on the partial cell.
  const double xi = std::clamp((s0 - g.start) / h, 0.0, static_cast<double>(n - 1));
  std::size_t j = std::min(static_cast<std::size_t>(std::floor(xi)), n - 2);
  double base = acc[j];
  const double a = g.at(j);
  const double b = std::clamp(s0, g.start, g.stop());
  if (b != a) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    const double r = std::sqrt(0.6);
    base += half * (5.0 * f(mid - half * r) + 8.0 * f(mid) + 5.0 * f(mid + half * r)) / 9.0;
  }
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = acc[i] - base;
  return {g, std::move(out), "int " + f.label()};
}

namespace {

void eval_field(const OdeField& field, double s, std::span<const double> y, std::span<double> dy) {
  try {
    field(s, y, dy);
  } catch (const Error& e) {
    throw Error(ErrorCode::singularity, std::string("right-hand side failed: ") + e.what(), s);
  } catch (const std::exception& e) {
    throw Error(ErrorCode::singularity, std::string("right-hand side failed: ") + e.what(), s);
  }
  for (double d : dy)
    if (!std::isfinite(d)) throw Error(ErrorCode::singularity, "right-hand side is not finite", s);
}

}  // namespace

void rk4_step(const OdeField& field, double s, double h, std::span<double> y) {
  const std::size_t d = y.size();
  std::vector<double> k1(d), k2(d), k3(d), k4(d), tmp(d);
  eval_field(field, s, y, k1);
  for (std::size_t c = 0; c < d; ++c) tmp[c] = y[c] + 0.5 * h * k1[c];
  eval_field(field, s + 0.5 * h, tmp, k2);
  for (std::size_t c = 0; c < d; ++c) tmp[c] = y[c] + 0.5 * h * k2[c];
  eval_field(field, s + 0.5 * h, tmp, k3);
  for (std::size_t c = 0; c < d; ++c) tmp[c] = y[c] + h * k3[c];
  eval_field(field, s + h, tmp, k4);
  for (std::size_t c = 0; c < d; ++c) y[c] += h / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
}

SampledPath solve_ivp(const OdeField& field, std::span<const double> y0, double range_start,
                      double range_stop, double step) {
  if (!(step > 0.0) || !(range_stop > range_start))
    throw Error(ErrorCode::invalid_argument, "solve_ivp: need step > 0 and stop > start");
  const double len = range_stop - range_start;
  const double steps = std::nearbyint(len / step);
  if (steps < 1.0 || std::abs(steps * step - len) > 1e-9 * len)
    throw Error(ErrorCode::invalid_argument, "solve_ivp: step does not divide the range");
  const auto n = static_cast<std::size_t>(steps);
  SampledPath path{{range_start, step, n + 1}, y0.size(), {}};
  path.data.resize((n + 1) * y0.size());
  std::vector<double> y(y0.begin(), y0.end());
  std::copy(y.begin(), y.end(), path.data.begin());
  for (std::size_t i = 0; i < n; ++i) {
    rk4_step(field, path.grid.at(i), step, y);
    std::copy(y.begin(), y.end(), path.data.begin() + static_cast<std::ptrdiff_t>((i + 1) * y.size()));
  }
  return path;
}

SampledPath solve_ivp_on(const OdeField& field, const Grid& grid, double s0,
                         std::span<const double> y0,
                         const std::function<bool(std::span<const double>)>& keep) {
  if (!grid.contains(s0)) throw Error(ErrorCode::out_of_range, "solve_ivp_on: start outside grid", s0);
  const std::size_t d = y0.size();
  const std::size_t n = grid.count;
  std::vector<double> data(n * d);
  std::vector<char> have(n, 0);
  const double xi = (s0 - grid.start) / grid.step;
  const std::size_t i0 = grid.nearest(s0);
  const bool on_node = std::abs(xi - static_cast<double>(i0)) <= 1e-9;

  // First node at or to the right of s0, first node strictly to its left.
  std::size_t right = on_node ? i0 : static_cast<std::size_t>(std::ceil(xi));
  std::ptrdiff_t left = on_node ? static_cast<std::ptrdiff_t>(i0) - 1
                                : static_cast<std::ptrdiff_t>(std::floor(xi));

  auto store = [&](std::size_t i, const std::vector<double>& y) {
    std::copy(y.begin(), y.end(), data.begin() + static_cast<std::ptrdiff_t>(i * d));
    have[i] = 1;
  };

  std::size_t hi = right, lo = right;
  bool any = false;
  {
    std::vector<double> y(y0.begin(), y0.end());
    double s = s0;
    if (on_node) {
      if (!keep || keep(y)) {
        store(i0, y);
        any = true;
        lo = hi = i0;
      }
      s = grid.at(i0);
    }
    if (!on_node || any) {
      for (std::size_t i = on_node ? i0 + 1 : right; i < n; ++i) {
        rk4_step(field, s, grid.at(i) - s, y);
        s = grid.at(i);
        if (keep && !keep(y)) break;
        store(i, y);
        if (!any) lo = i;
        any = true;
        hi = i;
      }
    }
  }
  if (!on_node || any) {
    std::vector<double> y(y0.begin(), y0.end());
    double s = on_node ? grid.at(i0) : s0;
    for (std::ptrdiff_t i = left; i >= 0; --i) {
      const auto iu = static_cast<std::size_t>(i);
      rk4_step(field, s, grid.at(iu) - s, y);
      s = grid.at(iu);
      if (keep && !keep(y)) break;
      store(iu, y);
      if (!any) hi = iu;
      any = true;
      lo = iu;
    }
  }
  if (!any) throw Error(ErrorCode::singularity, "solve_ivp_on: no node kept", s0);
  SampledPath path{grid.sub(lo, hi - lo + 1), d, {}};
  path.data.assign(data.begin() + static_cast<std::ptrdiff_t>(lo * d),
                   data.begin() + static_cast<std::ptrdiff_t>((hi + 1) * d));
  return path;
}

SampledFn schwarzian(const SampledFn& g, DiffScheme scheme) {
  const auto d1 = differentiate(g, 1, scheme);
  const auto d2 = differentiate(g, 2, scheme);
  const auto d3 = differentiate(g, 3, scheme);
  const std::size_t trim = scheme == DiffScheme::smooth ? geometry_trim : 3;
  if (g.size() < 2 * trim + 8) throw Error(ErrorCode::too_few_samples, "schwarzian: grid too short");
  const std::size_t n = g.size() - 2 * trim;
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = k + trim;
    if (std::abs(d1[i]) <= tol_degenerate)
      throw Error(ErrorCode::degenerate, "schwarzian: derivative vanishes", g.grid().at(i));
    const double q = d2[i] / d1[i];
    out[k] = d3[i] / d1[i] - 1.5 * q * q;
  }
  return {g.grid().sub(trim, n), std::move(out), "S(" + g.label() + ")"};
}

InverseSchwarzian solve_inverse_schwarzian_full(const SampledFn& h, double s0, double pole_margin) {
  const Grid& g = h.grid();
  if (!g.contains(s0)) throw Error(ErrorCode::out_of_range, "inverse schwarzian: s0 outside grid", s0);
  const OdeField field = [&h](double s, std::span<const double> y, std::span<double> dy) {
    const double c = -0.5 * h(s);
    dy[0] = y[1];
    dy[1] = c * y[0];
    dy[2] = y[3];
    dy[3] = c * y[2];
  };
  const double y0[4] = {0.0, 1.0, 1.0, 0.0};
  SampledPath path;
  try {
    path = solve_ivp_on(field, g, s0, y0, [pole_margin](std::span<const double> y) { return y[2] > pole_margin; });
  } catch (const Error& e) {
    if (e.code() == ErrorCode::singularity) throw Error(ErrorCode::pole, "y2 vanishes at s0", s0);
    throw;
  }
  // Pole within one stencil width of s0 on either side.
  const double reach = 3.0 * g.step;
  const bool clipped_left = path.grid.start > g.start + 0.5 * g.step;
  const bool clipped_right = path.grid.stop() < g.stop() - 0.5 * g.step;
  if (path.grid.count < 8 || (clipped_left && s0 - path.grid.start < reach) ||
      (clipped_right && path.grid.stop() - s0 < reach))
    throw Error(ErrorCode::pole, "y2 vanishes within one stencil of s0", s0);

  std::vector<double> lam(path.grid.count), lam_dot(path.grid.count);
  for (std::size_t i = 0; i < path.grid.count; ++i) {
    const double y2 = path.at(i, 2);
    lam[i] = path.at(i, 0) / y2;
    lam_dot[i] = 1.0 / (y2 * y2);
  }
  return {SampledFn(path.grid, std::move(lam), "lambda"), SampledFn(path.grid, std::move(lam_dot), "lambda'"),
          path.grid.nearest(s0)};
}

SampledFn solve_inverse_schwarzian(const SampledFn& h, double s0) {
  return solve_inverse_schwarzian_full(h, s0).lambda;
}

}  // namespace nullevo
