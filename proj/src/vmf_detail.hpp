#pragma once

// Shared single-point vMF math. The serial and OpenMP kernel variants loop
// over these same inline functions, which keeps their results bit-identical.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>

#include "orient/geometry.hpp"
#include "orient/rng.hpp"
#include "orient/vmf.hpp"

namespace orient::detail {

inline constexpr double kInv4Pi = 1.0 / (4.0 * kPi);

// ln(sinh k) = k + ln((1 - e^{-2k})/2), exact down to denormal k.
inline double log_sinh(double k) {
  return k + std::log(-std::expm1(-2.0 * k)) - std::log(2.0);
}

// ln f as a function of the projection t = mu . rho.
inline double vmf_log_pdf_t(double kappa, double t) {
  if (kappa == 0.0) {
    return std::log(kInv4Pi);
  }
  return std::log(kappa) - std::log(4.0 * kPi) - log_sinh(kappa) + kappa * t;
}

inline double vmf_pdf_t(double kappa, double t) {
  if (kappa == 0.0) {
    return kInv4Pi;
  }
  return std::exp(vmf_log_pdf_t(kappa, t));
}

// Inverse CDF of the projection t = mu . rho at level u in (0,1):
// F(t) = (e^{kappa t} - e^{-kappa}) / (2 sinh kappa). Stable for all kappa.
inline double inv_projection_cdf(double kappa, double u) {
  if (kappa == 0.0) {
    return 2.0 * u - 1.0;
  }
  const double w = 1.0 + std::log1p((1.0 - u) * std::expm1(-2.0 * kappa)) / kappa;
  return std::clamp(w, -1.0, 1.0);
}

// Slot layout per draw index: 0 selects a mixture component, 1 and 2 drive the
// vMF draw itself. A bare vMF draw and a single-component mixture draw with
// the same seed therefore produce the same vectors.
inline UnitVec3 draw_one_vmf(const VmfParams& p, const RandomStream& rng, std::uint64_t index) {
  const double u = rng.uniform01(index, 1);
  const double v = rng.uniform01(index, 2);
  const double w = inv_projection_cdf(p.kappa, u);
  const double r = std::sqrt(std::max(0.0, 1.0 - w * w));
  const double psi = 2.0 * kPi * v;
  const UnitVec3 local = UnitVec3::unchecked(r * std::cos(psi), r * std::sin(psi), w);
  return rotate_pole_to(p.mu, local);
}

inline double eval_mixture_pdf(const UnitVec3& rho, std::span<const VmfParams> params,
                               std::span<const double> weights) {
  double sum = 0.0;
  for (std::size_t c = 0; c < params.size(); ++c) {
    sum += weights[c] * vmf_pdf_t(params[c].kappa, dot(params[c].mu, rho));
  }
  return sum;
}

inline std::uint32_t pick_component(std::span<const double> cumulative, double u) {
  std::uint32_t c = 0;
  while (c + 1 < cumulative.size() && u > cumulative[c]) {
    ++c;
  }
  return c;
}

}  // namespace orient::detail
