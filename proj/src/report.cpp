#include "orient/report.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "orient/kernels.hpp"

namespace orient {
namespace {

constexpr double kSqrt2 = 1.4142135623730951;

double solve_mollweide_aux(double latitude_rad) {
  // 2a + sin(2a) = pi * sin(lat); poles are closed-form.
  if (std::abs(latitude_rad) >= kPi / 2.0 - 1e-12) {
    return std::copysign(kPi / 2.0, latitude_rad);
  }
  const double target = kPi * std::sin(latitude_rad);
  double alpha = latitude_rad;
  for (int it = 0; it < 100; ++it) {
    const double f = 2.0 * alpha + std::sin(2.0 * alpha) - target;
    if (std::abs(f) < 1e-10) {
      break;
    }
    alpha -= f / (2.0 + 2.0 * std::cos(2.0 * alpha));
  }
  return alpha;
}

DensityGrid grid_from_view(const kernels::MixtureView& view, std::size_t n_phi,
                           std::size_t n_theta) {
  if (n_phi < 2 || n_theta < 2) {
    throw std::invalid_argument("density_grid: resolutions must be >= 2");
  }
  const double dphi = 360.0 / static_cast<double>(n_phi);
  const double dtheta = 180.0 / static_cast<double>(n_theta);

  std::vector<UnitVec3> dirs;
  dirs.reserve(n_phi * n_theta);
  for (std::size_t i = 0; i < n_phi; ++i) {
    const double phi = (static_cast<double>(i) + 0.5) * dphi;
    for (std::size_t j = 0; j < n_theta; ++j) {
      const double theta = (static_cast<double>(j) + 0.5) * dtheta;
      dirs.push_back(from_spherical({phi, theta}));
    }
  }
  const std::vector<double> density = kernels::density(dirs, view);

  DensityGrid grid;
  grid.n_phi = n_phi;
  grid.n_theta = n_theta;
  grid.cells.resize(n_phi * n_theta);
  for (std::size_t i = 0; i < n_phi; ++i) {
    const double phi = (static_cast<double>(i) + 0.5) * dphi;
    for (std::size_t j = 0; j < n_theta; ++j) {
      const double theta = (static_cast<double>(j) + 0.5) * dtheta;
      const MollweidePoint m = mollweide_project(phi, theta);
      grid.cells[i * n_theta + j] = {phi, theta, m.x, m.y, density[i * n_theta + j]};
    }
  }
  return grid;
}

}  // namespace

MollweidePoint mollweide_project(double phi_deg, double theta_deg) {
  const double latitude = (90.0 - theta_deg) * kRadPerDeg;
  const double longitude = (phi_deg - 180.0) * kRadPerDeg;  // map centered on phi = 180
  const double alpha = solve_mollweide_aux(latitude);
  return {2.0 * kSqrt2 / kPi * longitude * std::cos(alpha), kSqrt2 * std::sin(alpha)};
}

DensityGrid density_grid(const MixtureModel& model, std::size_t n_phi, std::size_t n_theta) {
  return grid_from_view({model.params(), model.weights()}, n_phi, n_theta);
}

DensityGrid density_grid(const VmfParams& params, std::size_t n_phi, std::size_t n_theta) {
  const std::array<VmfParams, 1> single{params};
  const std::array<double, 1> weight{1.0};
  return grid_from_view({single, weight}, n_phi, n_theta);
}

std::vector<SummaryRow> phi_theta_summary(
    std::span<const std::pair<UsageType, FitReport>> fits) {
  if (fits.empty()) {
    throw std::invalid_argument("phi_theta_summary: no fits");
  }
  std::vector<SummaryRow> rows;
  rows.reserve(fits.size());
  for (const auto& [usage, fit] : fits) {
    const SphericalDirection dir = to_spherical(fit.params.mu);
    rows.push_back({usage, dir.phi_deg, dir.theta_deg, fit.params.kappa,
                    fit.params.kappa > 0.0 ? 1.0 / fit.params.kappa : 0.0});
  }
  return rows;
}

std::span<const TestCondition> test_conditions() {
  static constexpr std::array<TestCondition, 11> kConditions{{
      {1, "XY-plane", "Vertical upright"},
      {2, "XZ-plane", "Vertical sideways"},
      {3, "Free space data mode (FS-DMSU)", "Horizontal, screen up"},
      {4, "Face down", "Horizontal, screen down"},
      {5, "Free space data mode portrait (FS-DMP)", "Portrait, tilted"},
      {6, "Free space tilted down", "Portrait, downtilted"},
      {7, "Free space data mode landscape (FS-DML)", "Landscape, tilted"},
      {8, "Free space landscape, tilted down", "Landscape, downtilted"},
      {9, "Left/right hand phantom data mode portrait (LH/RH-DMP)", "Portrait, tilted"},
      {10, "Beside head and hand right (BHHR)", "Cheek right"},
      {11, "Beside head and hand left (BHHL)", "Cheek left"},
  }};
  return kConditions;
}

std::vector<int> usage_to_test_conditions(UsageType usage) {
  switch (usage.code()) {
    case 0b0000:
      return {1};
    case 0b0001:
      return {10};
    case 0b0010:
      return {5, 9};
    case 0b0100:
      return {3};
    case 0b1000:
      return {5, 9};
    case 0b1010:
      return {1, 5, 9};
    case 0b1100:
      return {5, 9};
    default:
      return {};
  }
}

}  // namespace orient
