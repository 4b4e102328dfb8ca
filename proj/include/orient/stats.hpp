#pragma once

#include <span>

namespace orient {

// Quantile of an ascending-sorted sample with linear interpolation between
// order statistics at position 1+(n-1)q (the "Type 7" convention), the one
// convention used throughout this project. q in [0,1]; data must be non-empty.
double quantile_sorted(std::span<const double> sorted, double q);

}  // namespace orient
