#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "orient/diagnostics.hpp"
#include "orient/ingest.hpp"
#include "orient/mixture.hpp"
#include "orient/report.hpp"
#include "orient/vmf.hpp"

namespace orient {

// Shortest round-trip decimal form; locale-independent, byte-stable.
std::string format_double(double value);

// Write-to-temp-then-rename so partial runs never corrupt existing files.
void atomic_write_text(const std::filesystem::path& path, std::string_view text);
std::string read_text(const std::filesystem::path& path);  // FormatError if unreadable

// Fitted model document:
// {usage, mu:[x,y,z], kappa, phi_deg, theta_deg, n_samples, rbar, log_likelihood}
nlohmann::json fit_report_json(UsageType usage, const FitReport& fit);
// mu is renormalized on load (stored components may be rounded).
std::pair<UsageType, FitReport> fit_report_from_json(const nlohmann::json& j);
void write_fit_json(const std::filesystem::path& path, UsageType usage, const FitReport& fit);
std::pair<UsageType, FitReport> read_fit_json(const std::filesystem::path& path);

// Mixture document: {components:[{usage, mu, kappa, weight, n_samples}]}.
// The loader renormalizes weights and rejects negative ones.
nlohmann::json mixture_json(const MixtureModel& model);
MixtureModel mixture_from_json(const nlohmann::json& j);
void write_mixture_json(const std::filesystem::path& path, const MixtureModel& model);
MixtureModel read_mixture_json(const std::filesystem::path& path);

// Orientation vectors, header `x,y,z`.
void write_orientations_csv(const std::filesystem::path& path, const OrientationSet& set);
std::vector<UnitVec3> read_orientations_csv(const std::filesystem::path& path);

// Q-Q series, header `tau,empirical,reference`.
void write_qq_csv(const std::filesystem::path& path, const QQSeries& series);

// Density grid, header `phi_deg,theta_deg,mollweide_x,mollweide_y,density`.
void write_grid_csv(const std::filesystem::path& path, const DensityGrid& grid);

// Summary, header `usage,phi_deg,theta_deg,kappa,inv_kappa`.
void write_summary_csv(const std::filesystem::path& path, std::span<const SummaryRow> rows);

// Usage-to-test-condition mapping, header `usage,index,name,comment`;
// one row per (usage, condition) pair.
void write_conditions_csv(const std::filesystem::path& path, std::span<const UsageType> usages);

// Labeled draws, header `usage,x,y,z`.
void write_samples_csv(const std::filesystem::path& path, std::span<const LabeledSample> samples);

// Skipped input rows, header `line,reason`.
void write_rejects_csv(const std::filesystem::path& path, std::span<const RejectedRow> rejects);

}  // namespace orient
