#include "orient/vmf.hpp"

#include <cmath>
#include <stdexcept>

#include "orient/errors.hpp"
#include "orient/kernels.hpp"
#include "vmf_detail.hpp"

namespace orient {
namespace {

// Below this, coth(k) - 1/k loses ~8 digits to cancellation; the two-term
// series is exact to machine precision here (next term is 2k^5/945).
constexpr double kSeriesGuard = 5e-3;

constexpr double kNewtonTol = 1e-12;
constexpr int kNewtonCap = 50;

void check_kappa(double kappa) {
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) {
    throw std::domain_error("kappa must be finite and >= 0");
  }
}

double newton_update(double kappa, double rbar) {
  const double a = bessel_ratio_a3(kappa);
  const double slope = 1.0 - a * a - (2.0 / kappa) * a;
  double next = kappa - (a - rbar) / slope;
  if (!(next > 0.0)) {
    next = kappa / 2.0;  // keep the iterate in the domain
  }
  return next;
}

}  // namespace

double vmf_pdf(const UnitVec3& rho, const VmfParams& params) {
  check_kappa(params.kappa);
  return detail::vmf_pdf_t(params.kappa, dot(params.mu, rho));
}

double log_likelihood(std::span<const UnitVec3> samples, const VmfParams& params) {
  if (samples.empty()) {
    throw std::invalid_argument("log_likelihood: empty sample set");
  }
  check_kappa(params.kappa);
  const double n = static_cast<double>(samples.size());
  if (params.kappa == 0.0) {
    return n * std::log(detail::kInv4Pi);
  }
  const Vec3 sum = kernels::resultant(samples);
  const double log_c =
      std::log(params.kappa) - std::log(4.0 * kPi) - detail::log_sinh(params.kappa);
  return n * log_c + params.kappa * dot(params.mu, sum);
}

double bessel_ratio_a3(double kappa) {
  if (!(kappa > 0.0)) {
    throw std::domain_error("bessel_ratio_a3: kappa must be > 0");
  }
  if (kappa < kSeriesGuard) {
    return kappa / 3.0 - kappa * kappa * kappa / 45.0;
  }
  return 1.0 / std::tanh(kappa) - 1.0 / kappa;
}

InvertResult invert_a3(double rbar, NewtonMode mode) {
  if (rbar >= 1.0) {
    throw DataError("invert_a3: degenerate concentration (rbar >= 1, all samples identical)");
  }
  if (!(rbar >= 0.0)) {
    throw std::domain_error("invert_a3: rbar must be in [0,1)");
  }
  if (rbar == 0.0) {
    return {0.0, 0};
  }
  double kappa = rbar * (3.0 - rbar * rbar) / (1.0 - rbar * rbar);
  if (mode == NewtonMode::kTwoStep) {
    kappa = newton_update(kappa, rbar);
    kappa = newton_update(kappa, rbar);
    return {kappa, 2};
  }
  for (int it = 0; it < kNewtonCap; ++it) {
    if (std::abs(bessel_ratio_a3(kappa) - rbar) < kNewtonTol) {
      return {kappa, it};
    }
    kappa = newton_update(kappa, rbar);
  }
  return {kappa, kNewtonCap};
}

FitReport fit_vmf(std::span<const UnitVec3> samples, NewtonMode mode) {
  if (samples.size() < 2) {
    throw std::invalid_argument("fit_vmf: need at least 2 samples");
  }
  const Vec3 sum = kernels::resultant(samples);
  const double resultant_norm = norm(sum);
  if (resultant_norm == 0.0) {
    throw DataError("fit_vmf: zero resultant, no mean direction");
  }
  FitReport report;
  report.n = samples.size();
  report.rbar = resultant_norm / static_cast<double>(samples.size());
  // rbar of 1 never shows up exactly in floating point; anything this close
  // means the samples are (numerically) identical.
  if (report.rbar > 1.0 - 1e-12) {
    throw DataError("fit_vmf: degenerate concentration (rbar ~ 1, samples identical)");
  }
  report.params.mu = normalize(sum);
  const InvertResult inv = invert_a3(report.rbar, mode);
  report.params.kappa = inv.kappa;
  report.newton_iterations = inv.iterations;
  report.log_likelihood = log_likelihood(samples, report.params);
  return report;
}

std::vector<UnitVec3> sample_vmf(const VmfParams& params, std::size_t n, std::uint64_t seed) {
  check_kappa(params.kappa);
  const RandomStream rng(seed);
  return kernels::draw_vmf(params, n, rng);
}

}  // namespace orient
