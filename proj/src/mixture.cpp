#include "orient/mixture.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "orient/errors.hpp"
#include "orient/kernels.hpp"
#include "orient/rng.hpp"
#include "vmf_detail.hpp"

namespace orient {

MixtureModel::MixtureModel(std::vector<MixtureComponent> components)
    : components_(std::move(components)) {
  if (components_.empty()) {
    throw DataError("mixture: no components");
  }
  double total = 0.0;
  for (const MixtureComponent& c : components_) {
    if (!(c.weight >= 0.0) || !std::isfinite(c.weight)) {
      throw std::invalid_argument("mixture: weights must be finite and >= 0");
    }
    if (!(c.params.kappa >= 0.0) || !std::isfinite(c.params.kappa)) {
      throw std::invalid_argument("mixture: kappa must be finite and >= 0");
    }
    total += c.weight;
  }
  if (total <= 0.0) {
    throw DataError("mixture: all weights are zero");
  }
  params_.reserve(components_.size());
  weights_.reserve(components_.size());
  for (MixtureComponent& c : components_) {
    c.weight /= total;
    params_.push_back(c.params);
    weights_.push_back(c.weight);
  }
}

std::map<UsageType, double> heuristic_weights(const std::map<UsageType, std::size_t>& counts) {
  std::size_t total = 0;
  for (const auto& [usage, count] : counts) {
    total += count;
  }
  if (total == 0) {
    throw DataError("heuristic_weights: all counts are zero");
  }
  std::map<UsageType, double> weights;
  for (const auto& [usage, count] : counts) {
    weights[usage] = static_cast<double>(count) / static_cast<double>(total);
  }
  return weights;
}

MixtureModel build_mixture(std::span<const UsageFit> fits,
                           const std::optional<std::set<UsageType>>& subset) {
  std::map<UsageType, std::size_t> counts;
  std::vector<const UsageFit*> selected;
  for (const UsageFit& fit : fits) {
    if (subset && !subset->contains(fit.usage)) {
      continue;
    }
    selected.push_back(&fit);
    counts[fit.usage] = fit.n_samples;
  }
  if (selected.empty()) {
    throw DataError("build_mixture: empty component selection");
  }
  const std::map<UsageType, double> weights = heuristic_weights(counts);
  std::vector<MixtureComponent> components;
  components.reserve(selected.size());
  for (const UsageFit* fit : selected) {
    components.push_back({fit->usage, fit->params, weights.at(fit->usage), fit->n_samples});
  }
  return MixtureModel(std::move(components));
}

double mixture_pdf(const UnitVec3& rho, const MixtureModel& model) {
  return detail::eval_mixture_pdf(rho, model.params(), model.weights());
}

std::vector<LabeledSample> sample_mixture(const MixtureModel& model, std::size_t n,
                                          std::uint64_t seed) {
  const RandomStream rng(seed);
  const kernels::LabeledDraws draws =
      kernels::draw_mixture({model.params(), model.weights()}, n, rng);
  std::vector<LabeledSample> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = {model.components()[draws.component[i]].usage, draws.vectors[i]};
  }
  return out;
}

}  // namespace orient
