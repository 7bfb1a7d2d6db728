#pragma once

// Private helpers for reparametrizing sampled curves.

#include <span>
#include <vector>

#include "nullevo/scalar_fn.hpp"

namespace nullevo::detail {

/// Fractional node positions xi with values(xi) = target for an increasing
/// sampled map. `slope` holds d(values)/d(index) at the nodes.
std::vector<double> invert_increasing(std::span<const double> values, std::span<const double> slope,
                                      std::span<const double> targets);

/// 8-point Lagrange resampling of `dim` interleaved components at positions xi.
std::vector<double> resample_interleaved(std::span<const double> data, std::size_t dim,
                                         std::span<const double> xi);

/// Uniform grid over the range of a strictly monotone sampled map (same node
/// count) and the fractional source positions of its nodes. `deriv` is the
/// derivative of the map per unit parameter, h the parameter step.
struct Inverse {
  Grid grid;
  std::vector<double> xi;
};
Inverse invert_monotone(std::span<const double> values, std::span<const double> deriv, double h);

}  // namespace nullevo::detail
