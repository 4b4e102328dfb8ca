#pragma once

// Data-parallel inner loops, each in two variants: orient::kernels::serial is
// the plain reference implementation kept for testing, orient::kernels::par
// is the OpenMP version used by the library (tools/bench compares them).
//
// Determinism contract: both variants produce bit-identical results for the
// same inputs, independent of thread count. Sampling is counter-based (each
// draw depends only on seed and index) and reductions accumulate in fixed
// kSumBlock-element blocks, so the summation order never changes.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "orient/geometry.hpp"
#include "orient/rng.hpp"
#include "orient/vmf.hpp"

namespace orient::kernels {

inline constexpr std::size_t kSumBlock = 4096;

// Flattened mixture data for the density/sampling loops.
struct MixtureView {
  std::span<const VmfParams> params;
  std::span<const double> weights;  // normalized, same length as params
};

struct LabeledDraws {
  std::vector<UnitVec3> vectors;
  std::vector<std::uint32_t> component;
};

namespace serial {
std::vector<double> magnitudes(std::span<const Vec3> a);
std::vector<double> projections(std::span<const UnitVec3> v, const UnitVec3& mu);
double block_sum(std::span<const double> xs);
Vec3 resultant(std::span<const UnitVec3> v);
std::vector<double> density(std::span<const UnitVec3> dirs, const MixtureView& model);
std::vector<UnitVec3> draw_vmf(const VmfParams& p, std::size_t n, const RandomStream& rng);
LabeledDraws draw_mixture(const MixtureView& model, std::size_t n, const RandomStream& rng);
}  // namespace serial

namespace par {
std::vector<double> magnitudes(std::span<const Vec3> a);
std::vector<double> projections(std::span<const UnitVec3> v, const UnitVec3& mu);
double block_sum(std::span<const double> xs);
Vec3 resultant(std::span<const UnitVec3> v);
std::vector<double> density(std::span<const UnitVec3> dirs, const MixtureView& model);
std::vector<UnitVec3> draw_vmf(const VmfParams& p, std::size_t n, const RandomStream& rng);
LabeledDraws draw_mixture(const MixtureView& model, std::size_t n, const RandomStream& rng);
}  // namespace par

// Entry points used by the library.
using par::block_sum;
using par::density;
using par::draw_mixture;
using par::draw_vmf;
using par::magnitudes;
using par::projections;
using par::resultant;

}  // namespace orient::kernels
