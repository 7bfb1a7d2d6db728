#include "nullevo/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include <Eigen/Dense>

#include "nullevo/error.hpp"

namespace nullevo::kernels {

namespace {

struct SchemeShape {
  std::size_t interior_width;
  int interior_degree;
  std::size_t boundary_width;
  int boundary_degree;
};

SchemeShape shape_for(int order, DiffScheme scheme) {
  if (scheme == DiffScheme::smooth) return {25, 8, 25, 8};
  if (scheme == DiffScheme::wide) return {97, 8, 97, 8};
  const std::size_t iw = order == 3 ? 7 : 5;
  const std::size_t bw = static_cast<std::size_t>(order) + 4;
  return {iw, static_cast<int>(iw) - 1, bw, static_cast<int>(bw) - 1};
}

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

// Lagrange denominators prod_{k != j} (j - k) for j = 0..p-1.
std::vector<double> lagrange_denominators(int p) {
  std::vector<double> d(p);
  for (int j = 0; j < p; ++j) {
    const double sign = ((p - 1 - j) % 2 == 0) ? 1.0 : -1.0;
    d[j] = sign * factorial(j) * factorial(p - 1 - j);
  }
  return d;
}

std::size_t window_for(double xi, std::size_t n, int points) {
  const auto p = static_cast<std::size_t>(points);
  const double fl = std::floor(xi);
  const double lo = fl - static_cast<double>(p / 2 - 1);
  if (lo <= 0.0) return 0;
  return std::min(static_cast<std::size_t>(lo), n - p);
}

double lagrange_window(const double* v, double u, int p, const std::vector<double>& denom) {
  // Node hit: return the sample itself.
  const double r = std::nearbyint(u);
  if (r == u && r >= 0.0 && r < p) return v[static_cast<int>(r)];
  double sum = 0.0;
  for (int j = 0; j < p; ++j) {
    double num = 1.0;
    for (int k = 0; k < p; ++k) {
      if (k != j) num *= (u - k);
    }
    sum += v[j] * (num / denom[j]);
  }
  return sum;
}

void check_resample(std::span<const double> values, int points, std::span<const double> at,
                    std::span<double> out) {
  if (points < 2 || values.size() < static_cast<std::size_t>(points))
    throw Error(ErrorCode::too_few_samples, "lagrange_resample: not enough samples");
  if (at.size() != out.size())
    throw Error(ErrorCode::invalid_argument, "lagrange_resample: size mismatch");
}

bool better(double m, std::size_t i, std::size_t j, const NestingResult& cur) {
  if (m < cur.min_margin) return true;
  if (m > cur.min_margin) return false;
  return i < cur.worst_i || (i == cur.worst_i && j < cur.worst_j);
}

NestingResult row_min(std::span<const double> cx, std::span<const double> cy,
                      std::span<const double> r, std::size_t i) {
  NestingResult best{std::numeric_limits<double>::infinity(), i, i};
  for (std::size_t j = i + 1; j < cx.size(); ++j) {
    const double m = std::abs(std::abs(r[i]) - std::abs(r[j])) - std::hypot(cx[i] - cx[j], cy[i] - cy[j]);
    if (better(m, i, j, best)) best = {m, i, j};
  }
  return best;
}

}  // namespace

std::vector<double> stencil_weights(std::span<const int> offsets, int degree, int order) {
  using MatL = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  const auto m = static_cast<Eigen::Index>(offsets.size());
  if (degree < order || m < degree + 1)
    throw Error(ErrorCode::invalid_argument, "stencil_weights: degree/size mismatch");
  long double scale = 1.0L;
  for (int o : offsets) scale = std::max(scale, std::abs(static_cast<long double>(o)));
  MatL v(m, degree + 1);
  for (Eigen::Index k = 0; k < m; ++k) {
    const long double x = offsets[k] / scale;
    long double p = 1.0L;
    for (int j = 0; j <= degree; ++j) {
      v(k, j) = p;
      p *= x;
    }
  }
  // Least-squares weights: row `order` of (V^T V)^{-1} V^T, in extended precision.
  const MatL pinv = v.colPivHouseholderQr().solve(MatL::Identity(m, m));
  std::vector<double> w(offsets.size());
  long double f = 1.0L;
  for (int i = 2; i <= order; ++i) f *= i;
  for (int i = 0; i < order; ++i) f /= scale;
  for (Eigen::Index k = 0; k < m; ++k) w[k] = static_cast<double>(pinv(order, k) * f);
  return w;
}

std::size_t min_samples(int order, DiffScheme scheme) {
  if (scheme == DiffScheme::smooth) return 25;
  if (scheme == DiffScheme::wide) return 97;
  return static_cast<std::size_t>(order) + 5;
}

StencilPlan make_plan(std::size_t n, int order, DiffScheme scheme) {
  if (order < 1 || order > 4) throw Error(ErrorCode::invalid_argument, "derivative order must be 1..4");
  if (n < min_samples(order, scheme))
    throw Error(ErrorCode::too_few_samples, "differentiate: too few samples for the stencil");
  const SchemeShape sh = shape_for(order, scheme);
  const std::size_t half = (sh.interior_width - 1) / 2;

  StencilPlan plan;
  plan.order = order;
  plan.width = std::max(sh.interior_width, sh.boundary_width);
  plan.window_start.resize(n);
  plan.row.resize(n);
  plan.interior_begin = half;
  plan.interior_end = n - half;

  // Row 0 is the centered interior stencil; boundary nodes get their own rows.
  {
    std::vector<int> offs(sh.interior_width);
    for (std::size_t k = 0; k < sh.interior_width; ++k) offs[k] = static_cast<int>(k) - static_cast<int>(half);
    plan.weights.push_back(stencil_weights(offs, sh.interior_degree, order));
  }
  const std::size_t bw = sh.boundary_width;
  for (std::size_t i = 0; i < n; ++i) {
    if (i >= half && i < n - half) {
      plan.window_start[i] = i - half;
      plan.row[i] = 0;
      continue;
    }
    const std::size_t lo = i < half ? 0 : n - bw;
    std::vector<int> offs(bw);
    for (std::size_t k = 0; k < bw; ++k) offs[k] = static_cast<int>(lo + k) - static_cast<int>(i);
    plan.window_start[i] = lo;
    plan.row[i] = static_cast<std::uint32_t>(plan.weights.size());
    plan.weights.push_back(stencil_weights(offs, sh.boundary_degree, order));
  }
  return plan;
}

const StencilPlan& cached_plan(std::size_t n, int order, DiffScheme scheme) {
  static std::mutex mu;
  static std::map<std::tuple<std::size_t, int, int>, std::unique_ptr<StencilPlan>> plans;
  const auto key = std::make_tuple(n, order, static_cast<int>(scheme));
  std::lock_guard lock(mu);
  auto& slot = plans[key];
  if (!slot) slot = std::make_unique<StencilPlan>(make_plan(n, order, scheme));
  return *slot;
}

double lagrange_at(std::span<const double> values, double xi, int points) {
  const auto denom = lagrange_denominators(points);
  const std::size_t lo = window_for(xi, values.size(), points);
  return lagrange_window(values.data() + lo, xi - static_cast<double>(lo), points, denom);
}

namespace serial {

void apply_stencil(const StencilPlan& plan, std::span<const double> in, std::size_t stride,
                   std::span<double> out, double scale) {
  const std::size_t n = out.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& w = plan.weights[plan.row[i]];
    const double* base = in.data() + plan.window_start[i] * stride;
    double acc = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k) acc += w[k] * base[k * stride];
    out[i] = acc * scale;
  }
}

void lagrange_resample(std::span<const double> values, std::span<const double> at, int points,
                       std::span<double> out) {
  check_resample(values, points, at, out);
  const auto denom = lagrange_denominators(points);
  for (std::size_t q = 0; q < at.size(); ++q) {
    const std::size_t lo = window_for(at[q], values.size(), points);
    out[q] = lagrange_window(values.data() + lo, at[q] - static_cast<double>(lo), points, denom);
  }
}

NestingResult min_nesting_margin(std::span<const double> cx, std::span<const double> cy,
                                 std::span<const double> radius) {
  NestingResult best{std::numeric_limits<double>::infinity(), 0, 0};
  for (std::size_t i = 0; i + 1 < cx.size(); ++i) {
    const NestingResult r = row_min(cx, cy, radius, i);
    if (better(r.min_margin, r.worst_i, r.worst_j, best)) best = r;
  }
  return best;
}

}  // namespace serial

namespace omp {

void apply_stencil(const StencilPlan& plan, std::span<const double> in, std::size_t stride,
                   std::span<double> out, double scale) {
  const auto n = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static) if (n >= 4096)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto& w = plan.weights[plan.row[i]];
    const double* base = in.data() + plan.window_start[i] * stride;
    double acc = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k) acc += w[k] * base[k * stride];
    out[i] = acc * scale;
  }
}

void lagrange_resample(std::span<const double> values, std::span<const double> at, int points,
                       std::span<double> out) {
  check_resample(values, points, at, out);
  const auto denom = lagrange_denominators(points);
  const auto n = static_cast<std::ptrdiff_t>(at.size());
#pragma omp parallel for schedule(static) if (n >= 2048)
  for (std::ptrdiff_t q = 0; q < n; ++q) {
    const std::size_t lo = window_for(at[q], values.size(), points);
    out[q] = lagrange_window(values.data() + lo, at[q] - static_cast<double>(lo), points, denom);
  }
}

NestingResult min_nesting_margin(std::span<const double> cx, std::span<const double> cy,
                                 std::span<const double> radius) {
  const auto n = static_cast<std::ptrdiff_t>(cx.size());
  std::vector<NestingResult> rows(cx.size() > 0 ? cx.size() - 1 : 0);
#pragma omp parallel for schedule(dynamic, 8) if (n >= 128)
  for (std::ptrdiff_t i = 0; i < n - 1; ++i) rows[i] = row_min(cx, cy, radius, static_cast<std::size_t>(i));
  NestingResult best{std::numeric_limits<double>::infinity(), 0, 0};
  for (const auto& r : rows)
    if (better(r.min_margin, r.worst_i, r.worst_j, best)) best = r;
  return best;
}

}  // namespace omp

}  // namespace nullevo::kernels
