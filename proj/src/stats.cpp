#include "orient/stats.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace orient {

double quantile_sorted(std::span<const double> sorted, double q) {
  if (sorted.empty()) {
    throw std::invalid_argument("quantile of empty sample");
  }
  if (!(q >= 0.0 && q <= 1.0)) {
    throw std::invalid_argument("quantile level outside [0,1]");
  }
  const std::size_t n = sorted.size();
  const double h = static_cast<double>(n - 1) * q;
  const auto lo = static_cast<std::size_t>(h);
  if (lo + 1 >= n) {
    return sorted[n - 1];
  }
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace orient
