#pragma once

// Block decomposition shared by the serial and OpenMP kernel variants.

#include <cstddef>
#include <span>
#include <vector>

#include "orient/geometry.hpp"
#include "orient/kernels.hpp"

namespace orient::kernels::detail {

inline std::size_t num_blocks(std::size_t n) { return (n + kSumBlock - 1) / kSumBlock; }

inline double sum_block(std::span<const double> xs, std::size_t block) {
  const std::size_t begin = block * kSumBlock;
  const std::size_t end = std::min(begin + kSumBlock, xs.size());
  double s = 0.0;
  for (std::size_t i = begin; i < end; ++i) {
    s += xs[i];
  }
  return s;
}

inline Vec3 resultant_block(std::span<const UnitVec3> v, std::size_t block) {
  const std::size_t begin = block * kSumBlock;
  const std::size_t end = std::min(begin + kSumBlock, v.size());
  Vec3 s;
  for (std::size_t i = begin; i < end; ++i) {
    s += v[i].vec();
  }
  return s;
}

inline std::vector<double> cumulative_weights(std::span<const double> weights) {
  std::vector<double> cumulative(weights.size());
  double acc = 0.0;
  for (std::size_t c = 0; c < weights.size(); ++c) {
    acc += weights[c];
    cumulative[c] = acc;
  }
  if (!cumulative.empty()) {
    cumulative.back() = 1.0;  // guard against rounding in the last bin
  }
  return cumulative;
}

}  // namespace orient::kernels::detail
