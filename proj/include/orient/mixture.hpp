#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "orient/geometry.hpp"
#include "orient/usage_type.hpp"
#include "orient/vmf.hpp"

namespace orient {

struct MixtureComponent {
  UsageType usage;
  VmfParams params;
  double weight = 0.0;  // >= 0; normalized at model construction
  std::size_t n_samples = 0;
};

// Finite mixture of vMF components. Weights are renormalized to sum to 1 at
// construction (within 1e-12 thereafter); at least one component with positive
// weight is required and negative weights are rejected.
class MixtureModel {
 public:
  explicit MixtureModel(std::vector<MixtureComponent> components);

  const std::vector<MixtureComponent>& components() const { return components_; }

  // Contiguous parameter/weight arrays for the evaluation kernels.
  std::span<const VmfParams> params() const { return params_; }
  std::span<const double> weights() const { return weights_; }

 private:
  std::vector<MixtureComponent> components_;
  std::vector<VmfParams> params_;
  std::vector<double> weights_;
};

// Observation-frequency weights: weight = count / total. Throws DataError when
// every count is zero; absent usage types simply contribute nothing.
std::map<UsageType, double> heuristic_weights(const std::map<UsageType, std::size_t>& counts);

struct UsageFit {
  UsageType usage;
  VmfParams params;
  std::size_t n_samples = 0;
};

// Builds the mixture from fitted components, optionally restricted to a subset
// of usage types; weights are the renormalized observation frequencies of the
// selected components. Throws DataError when the selection is empty.
MixtureModel build_mixture(std::span<const UsageFit> fits,
                           const std::optional<std::set<UsageType>>& subset = std::nullopt);

// Sum over components of weight * vmf_pdf.
double mixture_pdf(const UnitVec3& rho, const MixtureModel& model);

struct LabeledSample {
  UsageType usage;
  UnitVec3 rho;
};

// Composition sampling: each draw selects a component by cumulative-weight
// inversion of one uniform, then draws from that component. Deterministic per
// seed; the component label is returned with each vector.
std::vector<LabeledSample> sample_mixture(const MixtureModel& model, std::size_t n,
                                          std::uint64_t seed);

}  // namespace orient
