#pragma once

// Data-parallel inner loops. Each kernel has a plain serial reference in
// `kernels::serial` and an OpenMP version in `kernels::omp`; every output
// element is produced by the same sequence of floating-point operations in
// both, so results are bit-identical for any thread count.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "nullevo/scalar_fn.hpp"

namespace nullevo::kernels {

/// Polynomial derivative weights on integer offsets: least-squares fit of the
/// given degree (exact interpolation when offsets.size() == degree + 1),
/// derivative `order` evaluated at offset 0, unit spacing.
std::vector<double> stencil_weights(std::span<const int> offsets, int degree, int order);

/// Per-node window and weight table for one (size, order, scheme) triple.
struct StencilPlan {
  int order = 1;
  std::size_t width = 0;  // widest row
  std::vector<std::vector<double>> weights;  // distinct weight rows, each its own width
  std::vector<std::size_t> window_start;     // per node
  std::vector<std::uint32_t> row;            // per node index into weights
  std::size_t interior_begin = 0;            // first node with a centered window
  std::size_t interior_end = 0;              // one past the last such node
};

StencilPlan make_plan(std::size_t n, int order, DiffScheme scheme);
/// make_plan memoized per (n, order, scheme); thread-safe, references stay valid.
const StencilPlan& cached_plan(std::size_t n, int order, DiffScheme scheme);

/// Fewest samples `make_plan` accepts.
std::size_t min_samples(int order, DiffScheme scheme);

/// Nesting margin of an oriented circle pair: ||r_i| - |r_j|| - |c_i - c_j|.
struct NestingResult {
  double min_margin = 0.0;
  std::size_t worst_i = 0;
  std::size_t worst_j = 0;
};

namespace serial {
/// out[i] = sum_k w_k in[(start_i + k) * stride] * scale
void apply_stencil(const StencilPlan& plan, std::span<const double> in, std::size_t stride,
                   std::span<double> out, double scale);
/// Lagrange interpolation of `values` (unit-spaced local coordinates) at each
/// position in `at`, using `points`-point windows.
void lagrange_resample(std::span<const double> values, std::span<const double> at, int points,
                       std::span<double> out);
NestingResult min_nesting_margin(std::span<const double> cx, std::span<const double> cy,
                                 std::span<const double> radius);
}  // namespace serial

namespace omp {
void apply_stencil(const StencilPlan& plan, std::span<const double> in, std::size_t stride,
                   std::span<double> out, double scale);
void lagrange_resample(std::span<const double> values, std::span<const double> at, int points,
                       std::span<double> out);
NestingResult min_nesting_margin(std::span<const double> cx, std::span<const double> cy,
                                 std::span<const double> radius);
}  // namespace omp

/// Single Lagrange evaluation at local coordinate xi in [0, n-1].
double lagrange_at(std::span<const double> values, double xi, int points);

}  // namespace nullevo::kernels
