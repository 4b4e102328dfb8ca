#include <cstddef>

#include "orient/kernels.hpp"

#include "kernels_detail.hpp"
#include "vmf_detail.hpp"

namespace orient::kernels::serial {

std::vector<double> magnitudes(std::span<const Vec3> a) {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[i] = norm(a[i]);
  }
  return out;
}

std::vector<double> projections(std::span<const UnitVec3> v, const UnitVec3& mu) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = dot(mu, v[i]);
  }
  return out;
}

double block_sum(std::span<const double> xs) {
  const std::size_t blocks = detail::num_blocks(xs.size());
  std::vector<double> partial(blocks);
  for (std::size_t b = 0; b < blocks; ++b) {
    partial[b] = detail::sum_block(xs, b);
  }
  double total = 0.0;
  for (double p : partial) {
    total += p;
  }
  return total;
}

Vec3 resultant(std::span<const UnitVec3> v) {
  const std::size_t blocks = detail::num_blocks(v.size());
  std::vector<Vec3> partial(blocks);
  for (std::size_t b = 0; b < blocks; ++b) {
    partial[b] = detail::resultant_block(v, b);
  }
  Vec3 total;
  for (const Vec3& p : partial) {
    total += p;
  }
  return total;
}

std::vector<double> density(std::span<const UnitVec3> dirs, const MixtureView& model) {
  std::vector<double> out(dirs.size());
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    out[i] = orient::detail::eval_mixture_pdf(dirs[i], model.params, model.weights);
  }
  return out;
}

std::vector<UnitVec3> draw_vmf(const VmfParams& p, std::size_t n, const RandomStream& rng) {
  std::vector<UnitVec3> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = orient::detail::draw_one_vmf(p, rng, i);
  }
  return out;
}

LabeledDraws draw_mixture(const MixtureView& model, std::size_t n, const RandomStream& rng) {
  const std::vector<double> cumulative = detail::cumulative_weights(model.weights);
  LabeledDraws draws;
  draws.vectors.resize(n);
  draws.component.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint32_t c = orient::detail::pick_component(cumulative, rng.uniform01(i, 0));
    draws.component[i] = c;
    draws.vectors[i] = orient::detail::draw_one_vmf(model.params[c], rng, i);
  }
  return draws;
}

}  // namespace orient::kernels::serial
