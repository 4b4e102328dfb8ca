#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "orient/geometry.hpp"
#include "orient/mixture.hpp"
#include "orient/usage_type.hpp"
#include "orient/vmf.hpp"

namespace orient {

struct MollweidePoint {
  double x = 0.0;  // in [-2*sqrt(2), 2*sqrt(2)], 0 at phi = 180
  double y = 0.0;  // in [-sqrt(2), sqrt(2)], 0 on the equator
};

// Equal-area Mollweide projection of (phi, theta); the auxiliary angle solves
// 2a + sin(2a) = pi*sin(latitude) by Newton to 1e-10, latitude = 90 - theta.
MollweidePoint mollweide_project(double phi_deg, double theta_deg);

struct DensityCell {
  double phi_deg = 0.0;
  double theta_deg = 0.0;
  double mollweide_x = 0.0;
  double mollweide_y = 0.0;
  double density = 0.0;  // per steradian
};

// Density evaluated at cell centers of an n_phi x n_theta grid covering
// phi in [0,360), theta in [0,180]. Cells are laid out theta-major per phi row
// (phi varies slowest). Requires n_phi, n_theta >= 2.
struct DensityGrid {
  std::size_t n_phi = 0;
  std::size_t n_theta = 0;
  std::vector<DensityCell> cells;
};

DensityGrid density_grid(const MixtureModel& model, std::size_t n_phi, std::size_t n_theta);
DensityGrid density_grid(const VmfParams& params, std::size_t n_phi, std::size_t n_theta);

// One row per fitted usage type; marker value inversely proportional to the
// concentration, matching the phi-theta spread plots.
struct SummaryRow {
  UsageType usage;
  double phi_deg = 0.0;
  double theta_deg = 0.0;
  double kappa = 0.0;
  double inv_kappa = 0.0;
};

std::vector<SummaryRow> phi_theta_summary(
    std::span<const std::pair<UsageType, FitReport>> fits);

// OTA device-orientation test conditions (3GPP TR 37.977 / CTIA); indices 1-11.
struct TestCondition {
  int index = 0;
  const char* name = "";
  const char* comment = "";
};

std::span<const TestCondition> test_conditions();

// Static usage-type to test-condition mapping; an empty result means no
// defined mapping for that usage type.
std::vector<int> usage_to_test_conditions(UsageType usage);

}  // namespace orient
