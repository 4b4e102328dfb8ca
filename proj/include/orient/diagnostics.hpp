#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "orient/geometry.hpp"
#include "orient/vmf.hpp"

namespace orient {

// Paired empirical/theoretical projection quantiles for a Q-Q plot. A good
// fit puts (empirical, reference) on the identity line.
struct QQSeries {
  std::vector<double> taus;
  std::vector<double> empirical;
  std::vector<double> reference;
};

// {0.05, 0.06, ..., 0.95} — 91 levels.
std::vector<double> default_tau_grid();

// Type-7 quantiles of the projected scalars rho . mu_hat, each in [-1,1].
// Requires >= 2 samples; an empty tau list yields an empty result.
std::vector<double> projection_quantiles(std::span<const UnitVec3> samples,
                                         const UnitVec3& mu_hat, std::span<const double> taus);

// Exact inverse of the projection CDF F(t) = (e^{kappa t} - e^{-kappa}) /
// (2 sinh kappa); 2*tau - 1 for kappa = 0. tau must lie in (0,1).
double theoretical_projection_quantile(double kappa, double tau);

struct QQOptions {
  // Draw the reference quantiles from a simulated sample instead of the
  // closed form (reproduces the published plotting procedure).
  bool simulate_reference = false;
  std::size_t simulation_size = 100000;
  std::uint64_t seed = 0;
};

QQSeries qq_series(std::span<const UnitVec3> samples, const VmfParams& model,
                   std::span<const double> taus, const QQOptions& options = {});
// Overload on the default tau grid.
QQSeries qq_series(std::span<const UnitVec3> samples, const VmfParams& model);

// Per-axis normalized histograms of the orientation-vector components over
// [-1,1]; each histogram integrates to 1.
struct AxisHistograms {
  std::vector<double> edges;                   // bins + 1 edges
  std::array<std::vector<double>, 3> density;  // x, y, z
};
AxisHistograms component_histograms(std::span<const UnitVec3> vectors, std::size_t bins);

}  // namespace orient
