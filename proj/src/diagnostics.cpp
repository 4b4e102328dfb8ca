#include "orient/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "orient/errors.hpp"
#include "orient/kernels.hpp"
#include "orient/rng.hpp"
#include "orient/stats.hpp"
#include "vmf_detail.hpp"

namespace orient {

std::vector<double> default_tau_grid() {
  std::vector<double> taus;
  taus.reserve(91);
  for (int i = 5; i <= 95; ++i) {
    taus.push_back(static_cast<double>(i) / 100.0);
  }
  return taus;
}

std::vector<double> projection_quantiles(std::span<const UnitVec3> samples,
                                         const UnitVec3& mu_hat, std::span<const double> taus) {
  if (samples.size() < 2) {
    throw std::invalid_argument("projection_quantiles: need at least 2 samples");
  }
  if (taus.empty()) {
    return {};
  }
  std::vector<double> projected = kernels::projections(samples, mu_hat);
  std::sort(projected.begin(), projected.end());
  std::vector<double> quantiles;
  quantiles.reserve(taus.size());
  for (double tau : taus) {
    quantiles.push_back(quantile_sorted(projected, tau));
  }
  return quantiles;
}

double theoretical_projection_quantile(double kappa, double tau) {
  if (!(tau > 0.0 && tau < 1.0)) {
    throw std::domain_error("theoretical_projection_quantile: tau must be in (0,1)");
  }
  if (!(kappa >= 0.0)) {
    throw std::domain_error("theoretical_projection_quantile: kappa must be >= 0");
  }
  return detail::inv_projection_cdf(kappa, tau);
}

QQSeries qq_series(std::span<const UnitVec3> samples, const VmfParams& model,
                   std::span<const double> taus, const QQOptions& options) {
  if (samples.empty()) {
    throw DataError("qq_series: no samples");
  }
  QQSeries series;
  series.taus.assign(taus.begin(), taus.end());
  series.empirical = projection_quantiles(samples, model.mu, taus);
  if (options.simulate_reference) {
    const std::vector<UnitVec3> simulated =
        sample_vmf(model, options.simulation_size, options.seed);
    series.reference = projection_quantiles(simulated, model.mu, taus);
  } else {
    series.reference.reserve(taus.size());
    for (double tau : taus) {
      series.reference.push_back(theoretical_projection_quantile(model.kappa, tau));
    }
  }
  return series;
}

QQSeries qq_series(std::span<const UnitVec3> samples, const VmfParams& model) {
  const std::vector<double> taus = default_tau_grid();
  return qq_series(samples, model, taus);
}

AxisHistograms component_histograms(std::span<const UnitVec3> vectors, std::size_t bins) {
  if (vectors.empty()) {
    throw DataError("component_histograms: no vectors");
  }
  if (bins < 1) {
    throw std::invalid_argument("component_histograms: bins must be >= 1");
  }
  AxisHistograms h;
  h.edges.resize(bins + 1);
  const double width = 2.0 / static_cast<double>(bins);
  for (std::size_t i = 0; i <= bins; ++i) {
    h.edges[i] = -1.0 + width * static_cast<double>(i);
  }
  for (auto& d : h.density) {
    d.assign(bins, 0.0);
  }
  const auto bin_of = [&](double value) {
    auto b = static_cast<std::size_t>((value + 1.0) / width);
    return std::min(b, bins - 1);  // value == 1 lands in the last bin
  };
  for (const UnitVec3& v : vectors) {
    h.density[0][bin_of(v.x)] += 1.0;
    h.density[1][bin_of(v.y)] += 1.0;
    h.density[2][bin_of(v.z)] += 1.0;
  }
  const double scale = 1.0 / (static_cast<double>(vectors.size()) * width);
  for (auto& d : h.density) {
    for (double& value : d) {
      value *= scale;
    }
  }
  return h;
}

}  // namespace orient
