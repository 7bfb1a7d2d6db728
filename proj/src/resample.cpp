#include "resample.hpp"

#include <algorithm>
#include <cmath>

#include "nullevo/error.hpp"
#include "nullevo/kernels.hpp"

namespace nullevo::detail {

std::vector<double> invert_increasing(std::span<const double> values, std::span<const double> slope,
                                      std::span<const double> targets) {
  const std::size_t n = values.size();
  std::vector<double> xi(targets.size());
  for (std::size_t q = 0; q < targets.size(); ++q) {
    const double y = targets[q];
    if (y <= values.front()) {
      xi[q] = 0.0;
      continue;
    }
    if (y >= values.back()) {
      xi[q] = static_cast<double>(n - 1);
      continue;
    }
    const auto it = std::upper_bound(values.begin(), values.end(), y);
    const auto j = static_cast<std::size_t>(it - values.begin()) - 1;
    double lo = static_cast<double>(j), hi = lo + 1.0;
    double x = lo + (y - values[j]) / (values[j + 1] - values[j]);
    for (int iter = 0; iter < 64; ++iter) {
      const double r = kernels::lagrange_at(values, x, 8) - y;
      if (r == 0.0) break;
      if (r > 0.0) hi = x; else lo = x;
      const double d = kernels::lagrange_at(slope, x, 8);
      double nx = d > 0.0 ? x - r / d : 0.5 * (lo + hi);
      if (!(nx >= lo && nx <= hi)) nx = 0.5 * (lo + hi);
      if (std::abs(nx - x) < 1e-15) {
        x = nx;
        break;
      }
      x = nx;
    }
    xi[q] = x;
  }
  return xi;
}

std::vector<double> resample_interleaved(std::span<const double> data, std::size_t dim,
                                         std::span<const double> xi) {
  const std::size_t n = data.size() / dim;
  std::vector<double> comp(n), col(xi.size()), out(xi.size() * dim);
  for (std::size_t c = 0; c < dim; ++c) {
    for (std::size_t i = 0; i < n; ++i) comp[i] = data[i * dim + c];
    kernels::omp::lagrange_resample(comp, xi, 8, col);
    for (std::size_t q = 0; q < xi.size(); ++q) out[q * dim + c] = col[q];
  }
  return out;
}

Inverse invert_monotone(std::span<const double> values, std::span<const double> deriv, double h) {
  const std::size_t n = values.size();
  const bool up = values.back() > values.front();
  std::vector<double> v(n), slope(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = up ? values[i] : -values[i];
    slope[i] = std::abs(deriv[i]) * h;
  }
  const double lo = std::min(values.front(), values.back()), hi = std::max(values.front(), values.back());
  const Grid out = Grid::over(lo, hi, n);
  std::vector<double> targets(n);
  for (std::size_t i = 0; i < n; ++i) targets[i] = up ? out.at(i) : -out.at(i);
  return {out, invert_increasing(v, slope, targets)};
}

}  // namespace nullevo::detail
