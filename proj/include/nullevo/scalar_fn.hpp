#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace nullevo {

/// Uniform grid start, start + step, ..., start + step * (count - 1).
struct Grid {
  double start = 0.0;
  double step = 1.0;
  std::size_t count = 0;

  /// Grid with `count` nodes spanning [start, stop].
  static Grid over(double start, double stop, std::size_t count);

  double at(std::size_t i) const { return start + step * static_cast<double>(i); }
  double stop() const { return at(count - 1); }
  double length() const { return step * static_cast<double>(count - 1); }
  /// Membership test with a rounding guard of 1e-9 steps at either end.
  bool contains(double x) const;
  /// Index of the node nearest to x (x is clamped onto the grid).
  std::size_t nearest(double x) const;
  Grid sub(std::size_t first, std::size_t n) const { return {at(first), step, n}; }
};

/// How derivatives of sampled data are estimated.
enum class DiffScheme {
  /// Exact-interpolation stencils: 5-point central for orders 1-2, 7-point for
  /// order 3, one-sided width order+4 at the ends.
  compact,
  /// 25-point least-squares degree-8 stencils; used for curve geometry where
  /// three or more stacked derivatives of rounded samples are needed.
  smooth,
  /// 97-point least-squares degree-8 stencils; Cartan frame and pseudo-torsion
  /// of resampled null curves.
  wide,
};

/// Half-width of the smooth stencils: nodes dropped at each end by geometry
/// that differentiates sampled curves.
inline constexpr std::size_t geometry_trim = 12;

/// Scalar function sampled on a uniform grid. Immutable once built.
class SampledFn {
 public:
  SampledFn(Grid grid, std::vector<double> values, std::string label = {});

  const Grid& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  const std::string& label() const { return label_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double front() const { return values_.front(); }
  double back() const { return values_.back(); }

  /// Cubic (4-point Lagrange) interpolation; throws out_of_range outside the grid.
  double operator()(double x) const;

  /// Nodes [first, first + n).
  SampledFn slice(std::size_t first, std::size_t n) const;
  SampledFn with_label(std::string label) const;

  double max_abs() const;

 private:
  Grid grid_;
  std::vector<double> values_;
  std::string label_;
};

/// Vector-valued samples on a uniform grid, row-major (node, component).
struct SampledPath {
  Grid grid;
  std::size_t dim = 0;
  std::vector<double> data;

  double at(std::size_t node, std::size_t comp) const { return data[node * dim + comp]; }
  SampledFn component(std::size_t comp, std::string label = {}) const;
};

SampledFn differentiate(const SampledFn& f, int order, DiffScheme scheme = DiffScheme::compact);

/// F with F(s0) = 0 and F' = f, composite 4th-order quadrature of the cubic
/// interpolant (so off-node s0 is handled consistently with operator()).
SampledFn cumulative_integral(const SampledFn& f, double s0);

/// Right-hand side y' = field(s, y); writes into dy. Throwing or producing a
/// non-finite value is reported as a singularity at s.
using OdeField = std::function<void(double s, std::span<const double> y, std::span<double> dy)>;

/// Classical fixed-step RK4 from range_start to range_stop. The step must
/// divide the range length.
SampledPath solve_ivp(const OdeField& field, std::span<const double> y0, double range_start,
                      double range_stop, double step);

/// One classical RK4 step of size h (h may be negative), in place.
void rk4_step(const OdeField& field, double s, double h, std::span<double> y);

/// RK4 on an existing grid starting from an arbitrary s0 inside it, marching
/// both ways. `keep` (optional) is tested at each new node; the march in that
/// direction stops before the first node where it fails. The result covers the
/// contiguous node range that was kept.
SampledPath solve_ivp_on(const OdeField& field, const Grid& grid, double s0,
                         std::span<const double> y0,
                         const std::function<bool(std::span<const double>)>& keep = {});

/// Schwarzian derivative g'''/g' - 3/2 (g''/g')^2 on the interior grid
/// (half a stencil trimmed at each end: 12 nodes smooth, 3 compact).
SampledFn schwarzian(const SampledFn& g, DiffScheme scheme = DiffScheme::smooth);

/// Full output of the inverse Schwarzian solve. lambda = y1 / y2 and, since the
/// Wronskian is 1, lambda' = 1 / y2^2 exactly.
struct InverseSchwarzian {
  SampledFn lambda;
  SampledFn lambda_dot;
  std::size_t s0_index = 0;  // position of s0 inside lambda's grid
};

/// Solves S(lambda) = h via y'' + (h/2) y = 0 with y1(s0) = 0, y1'(s0) = 1,
/// y2(s0) = 1, y2'(s0) = 0. The domain is the contiguous node range around s0
/// on which y2 > pole_margin (so it ends before the first zero of y2).
InverseSchwarzian solve_inverse_schwarzian_full(const SampledFn& h, double s0,
                                                double pole_margin = 0.1);

SampledFn solve_inverse_schwarzian(const SampledFn& h, double s0);

}  // namespace nullevo
