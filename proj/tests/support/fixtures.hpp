#pragma once

// Synthetic accelerometer log with known outliers and a known duplicate block,
// so the pipeline counts are exact by construction.

#include <array>
#include <cstddef>
#include <string>

#include "orient/geometry.hpp"
#include "orient/io.hpp"
#include "orient/rng.hpp"

namespace testsupport {

struct BucketExpectation {
  const char* usage;
  const char* bits;  // CSV fields "service,wired,speaker,bluetooth"
  std::size_t n_raw;
  std::size_t n_after_iqr;
  std::size_t n_after_dedup;
};

struct PipelineFixture {
  std::string csv;
  std::array<BucketExpectation, 3> expected;
  std::size_t n_rejects;
};

inline PipelineFixture make_pipeline_fixture() {
  PipelineFixture fixture;
  fixture.expected = {{
      {"0000", "0,0,0,0", 205, 203, 201},
      {"0100", "0,1,0,0", 150, 150, 150},
      {"1000", "1,0,0,0", 120, 120, 120},
  }};
  fixture.n_rejects = 2;

  const orient::RandomStream rng(20240917);
  std::string& csv = fixture.csv;
  csv = "timestamp,ax,ay,az,service,wired,speaker,bluetooth\n";
  double ts = 0.0;
  std::uint64_t draw = 0;

  const auto emit = [&](const orient::Vec3& a, const char* bits) {
    csv += orient::format_double(ts);
    ts += 1.0;
    csv.push_back(',');
    csv += orient::format_double(a.x);
    csv.push_back(',');
    csv += orient::format_double(a.y);
    csv.push_back(',');
    csv += orient::format_double(a.z);
    csv.push_back(',');
    csv += bits;
    csv.push_back('\n');
  };

  const auto jittered = [&](const orient::Vec3& base, double magnitude) {
    const orient::Vec3 offset{0.25 * (rng.uniform01(draw, 0) - 0.5),
                              0.25 * (rng.uniform01(draw, 1) - 0.5),
                              0.25 * (rng.uniform01(draw, 2) - 0.5)};
    ++draw;
    return magnitude * orient::normalize(base + offset).vec();
  };

  // 0000: 200 distinct samples, one block of 3 identical rows, 2 outliers.
  const orient::Vec3 base0{0.27, 0.93, 0.24};
  for (int i = 0; i < 200; ++i) {
    emit(jittered(base0, 9.78 + 0.04 * i / 200.0), "0,0,0,0");
  }
  const orient::Vec3 dup = 9.8 * orient::normalize(base0).vec();
  for (int i = 0; i < 3; ++i) {
    emit(dup, "0,0,0,0");
  }
  emit(50.0 * orient::normalize(base0).vec(), "0,0,0,0");
  emit(0.5 * orient::normalize(base0).vec(), "0,0,0,0");

  // 0100: 150 clean samples near the +z pole.
  const orient::Vec3 base1{0.08, 0.30, 0.95};
  for (int i = 0; i < 150; ++i) {
    emit(jittered(base1, 9.79 + 0.02 * i / 150.0), "0,1,0,0");
  }

  // 1000: 120 clean samples.
  const orient::Vec3 base2{-0.04, 0.65, 0.76};
  for (int i = 0; i < 120; ++i) {
    emit(jittered(base2, 9.77 + 0.05 * i / 120.0), "1,0,0,0");
  }

  // Two rows the parser must reject.
  csv += "not,a,sample\n";
  csv += orient::format_double(ts);
  csv += ",0.1,nan,9.8,0,0,0,0\n";

  return fixture;
}

}  // namespace testsupport
