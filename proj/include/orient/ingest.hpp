#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "orient/geometry.hpp"
#include "orient/usage_type.hpp"

namespace orient {

// One accelerometer reading. Components must be finite (enforced at parse time).
struct AccelSample {
  double timestamp = 0.0;  // seconds
  Vec3 a;                  // m/s^2
  UsageType usage;
};

struct RejectedRow {
  std::size_t line = 0;  // 1-based line number in the source file
  std::string reason;
};

struct ParseResult {
  std::vector<AccelSample> samples;
  std::vector<RejectedRow> rejects;
};

// Input CSV: header `timestamp,ax,ay,az,service,wired,speaker,bluetooth`,
// one sample per row, floats in decimal notation, bits as 0/1. Malformed rows
// are recorded and skipped; more than 50% rejected rows throws FormatError
// (wrong format). Rows with non-finite components are rejected.
ParseResult parse_log(std::istream& in);

// Buckets keyed by the 4-bit usage type; every sample lands in exactly one.
std::map<UsageType, std::vector<AccelSample>> partition_by_usage(
    std::span<const AccelSample> samples);

struct IqrFilterResult {
  std::vector<AccelSample> kept;
  std::vector<AccelSample> removed;
  double q1 = 0.0;
  double q3 = 0.0;
  double lower_fence = 0.0;
  double upper_fence = 0.0;
  bool passthrough = false;  // fewer than 4 samples: nothing filtered, warn
};

// 1.5*IQR rule on ||a||: keep iff Q1-1.5*IQR <= ||a|| <= Q3+1.5*IQR, quartiles
// by Type-7 interpolation. Below 4 samples the input passes through unchanged.
IqrFilterResult iqr_filter(std::span<const AccelSample> samples);

// Keeps the first occurrence of each exact (a.x,a.y,a.z) bit pattern; order
// preserved. Equality is bitwise, so -0.0 and 0.0 are distinct readouts.
std::vector<AccelSample> dedup(std::span<const AccelSample> samples);

struct OrientationSet {
  UsageType usage;
  std::vector<UnitVec3> vectors;
  std::size_t n_raw = 0;
  std::size_t n_after_iqr = 0;
  std::size_t n_after_dedup = 0;   // always == vectors.size()
  std::size_t n_zero_dropped = 0;  // zero-magnitude samples dropped at normalization
};

// Normalizes already-filtered samples into orientation vectors. Zero-magnitude
// samples are dropped and counted. n_raw/n_after_iqr record the pipeline
// history for this bucket.
OrientationSet to_orientations(UsageType usage, std::span<const AccelSample> filtered,
                               std::size_t n_raw, std::size_t n_after_iqr);

// Full per-bucket pipeline: IQR filter, dedup, normalize. Counts are recorded
// in the returned set; the IQR stage details are exposed through iqr_out.
OrientationSet process_bucket(UsageType usage, std::span<const AccelSample> raw,
                              IqrFilterResult* iqr_out = nullptr);

// Right-continuous empirical CDF of ||a|| evaluated on grid; throws DataError
// on empty input.
std::vector<std::pair<double, double>> magnitude_cdf(std::span<const AccelSample> samples,
                                                     std::span<const double> grid);

}  // namespace orient
