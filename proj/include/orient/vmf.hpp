#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "orient/geometry.hpp"

namespace orient {

// von Mises-Fisher distribution on the unit sphere:
//   f(rho; mu, kappa) = kappa / (4*pi*sinh(kappa)) * exp(kappa * mu.rho)
// kappa = 0 is the uniform distribution 1/(4*pi).
struct VmfParams {
  UnitVec3 mu;
  double kappa = 0.0;  // >= 0, finite
};

struct FitReport {
  VmfParams params;
  std::size_t n = 0;           // samples used
  double rbar = 0.0;           // mean resultant length ||sum rho_i|| / n
  int newton_iterations = 0;   // concentration solve iterations
  double log_likelihood = 0.0;
};

// Density per steradian. Evaluated in log space, so it stays finite for any
// kappa up to 1e6. Throws std::domain_error for kappa < 0.
double vmf_pdf(const UnitVec3& rho, const VmfParams& params);

// N*ln(kappa/(4*pi*sinh kappa)) + kappa * mu . sum(rho_i).
// Throws std::invalid_argument on an empty sample set.
double log_likelihood(std::span<const UnitVec3> samples, const VmfParams& params);

// A3(kappa) = I_{3/2}(kappa) / I_{1/2}(kappa) = coth(kappa) - 1/kappa,
// the mean resultant length of a vMF sample. Strictly increasing, kappa/3 as
// kappa -> 0+, -> 1 as kappa -> inf. Throws std::domain_error for kappa <= 0.
double bessel_ratio_a3(double kappa);

enum class NewtonMode {
  kConverged,  // iterate to |A3(kappa) - rbar| < 1e-12, 50-iteration cap
  kTwoStep,    // exactly two Newton updates (the --paper-compat shortcut)
};

struct InvertResult {
  double kappa = 0.0;
  int iterations = 0;
};

// Solves A3(kappa) = rbar by Newton from kappa0 = rbar*(3-rbar^2)/(1-rbar^2).
// rbar = 0 yields kappa = 0. Throws std::domain_error for rbar outside [0,1);
// rbar >= 1 means degenerate concentration (all samples identical).
InvertResult invert_a3(double rbar, NewtonMode mode = NewtonMode::kConverged);

// Maximum-likelihood fit: mu is the resultant direction, kappa inverts A3 at
// the mean resultant length. Requires >= 2 samples; throws DataError when the
// resultant is zero (no mean direction) or rbar >= 1 (degenerate).
FitReport fit_vmf(std::span<const UnitVec3> samples, NewtonMode mode = NewtonMode::kConverged);

// n i.i.d. draws; deterministic given the seed (counter-based generator).
// The projection onto mu uses the exact inverse CDF
//   w = 1 + log1p((1-u)*expm1(-2*kappa)) / kappa,
// the tangent angle is uniform, and the result is rotated from the pole to mu.
// kappa = 0 draws uniformly on the sphere.
std::vector<UnitVec3> sample_vmf(const VmfParams& params, std::size_t n, std::uint64_t seed);

}  // namespace orient
