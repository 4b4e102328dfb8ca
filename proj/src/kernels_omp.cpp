#include <cstddef>
#include <cstdint>

#include "orient/kernels.hpp"

#include "kernels_detail.hpp"
#include "vmf_detail.hpp"

// Loop counters are signed for OpenMP 2.x-compatible canonical form.

namespace orient::kernels::par {

std::vector<double> magnitudes(std::span<const Vec3> a) {
  const auto n = static_cast<std::int64_t>(a.size());
  std::vector<double> out(a.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = norm(a[static_cast<std::size_t>(i)]);
  }
  return out;
}

std::vector<double> projections(std::span<const UnitVec3> v, const UnitVec3& mu) {
  const auto n = static_cast<std::int64_t>(v.size());
  std::vector<double> out(v.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = dot(mu, v[static_cast<std::size_t>(i)]);
  }
  return out;
}

double block_sum(std::span<const double> xs) {
  const auto blocks = static_cast<std::int64_t>(detail::num_blocks(xs.size()));
  std::vector<double> partial(static_cast<std::size_t>(blocks));
#pragma omp parallel for schedule(static)
  for (std::int64_t b = 0; b < blocks; ++b) {
    partial[static_cast<std::size_t>(b)] = detail::sum_block(xs, static_cast<std::size_t>(b));
  }
  double total = 0.0;
  for (double p : partial) {
    total += p;
  }
  return total;
}

Vec3 resultant(std::span<const UnitVec3> v) {
  const auto blocks = static_cast<std::int64_t>(detail::num_blocks(v.size()));
  std::vector<Vec3> partial(static_cast<std::size_t>(blocks));
#pragma omp parallel for schedule(static)
  for (std::int64_t b = 0; b < blocks; ++b) {
    partial[static_cast<std::size_t>(b)] = detail::resultant_block(v, static_cast<std::size_t>(b));
  }
  Vec3 total;
  for (const Vec3& p : partial) {
    total += p;
  }
  return total;
}

std::vector<double> density(std::span<const UnitVec3> dirs, const MixtureView& model) {
  const auto n = static_cast<std::int64_t>(dirs.size());
  std::vector<double> out(dirs.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] =
        orient::detail::eval_mixture_pdf(dirs[static_cast<std::size_t>(i)], model.params,
                                         model.weights);
  }
  return out;
}

std::vector<UnitVec3> draw_vmf(const VmfParams& p, std::size_t n, const RandomStream& rng) {
  const auto count = static_cast<std::int64_t>(n);
  std::vector<UnitVec3> out(n);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < count; ++i) {
    out[static_cast<std::size_t>(i)] =
        orient::detail::draw_one_vmf(p, rng, static_cast<std::uint64_t>(i));
  }
  return out;
}

LabeledDraws draw_mixture(const MixtureView& model, std::size_t n, const RandomStream& rng) {
  const std::vector<double> cumulative = detail::cumulative_weights(model.weights);
  const auto count = static_cast<std::int64_t>(n);
  LabeledDraws draws;
  draws.vectors.resize(n);
  draws.component.resize(n);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < count; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    const std::uint32_t c =
        orient::detail::pick_component(cumulative, rng.uniform01(static_cast<std::uint64_t>(i), 0));
    draws.component[idx] = c;
    draws.vectors[idx] = orient::detail::draw_one_vmf(model.params[c], rng,
                                                      static_cast<std::uint64_t>(i));
  }
  return draws;
}

}  // namespace orient::kernels::par
