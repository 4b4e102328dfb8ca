#include "orient/ingest.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <istream>
#include <stdexcept>
#include <string_view>
#include <unordered_set>

#include "orient/errors.hpp"
#include "orient/stats.hpp"

namespace orient {
namespace {

constexpr std::string_view kHeader = "timestamp,ax,ay,az,service,wired,speaker,bluetooth";

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_header(std::string_view line) {
  std::string folded;
  for (char c : line) {
    if (!std::isspace(static_cast<unsigned char>(c))) {
      folded.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  return folded == kHeader;
}

bool parse_double(std::string_view field, double& out) {
  field = trim(field);
  const char* first = field.data();
  const char* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && !field.empty();
}

bool parse_bit(std::string_view field, bool& out) {
  field = trim(field);
  if (field == "0") {
    out = false;
    return true;
  }
  if (field == "1") {
    out = true;
    return true;
  }
  return false;
}

// Splits into exactly 8 comma-separated fields; returns false otherwise.
bool split8(std::string_view line, std::string_view (&fields)[8]) {
  std::size_t count = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == ',') {
      if (count == 8) return false;
      fields[count++] = line.substr(start, i - start);
      start = i + 1;
    }
  }
  return count == 8;
}

struct TripleKey {
  std::uint64_t x, y, z;
  bool operator==(const TripleKey&) const = default;
};

struct TripleKeyHash {
  std::size_t operator()(const TripleKey& k) const {
    auto mix = [](std::uint64_t v) {
      v ^= v >> 30;
      v *= 0xBF58476D1CE4E5B9ull;
      v ^= v >> 27;
      v *= 0x94D049BB133111EBull;
      v ^= v >> 31;
      return v;
    };
    return static_cast<std::size_t>(mix(k.x ^ mix(k.y ^ mix(k.z))));
  }
};

TripleKey key_of(const Vec3& a) {
  return {std::bit_cast<std::uint64_t>(a.x), std::bit_cast<std::uint64_t>(a.y),
          std::bit_cast<std::uint64_t>(a.z)};
}

}  // namespace

ParseResult parse_log(std::istream& in) {
  ParseResult result;
  std::string line;
  std::size_t line_no = 0;
  std::size_t data_rows = 0;
  bool header_seen = false;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string_view view = trim(line);
    if (view.empty()) continue;
    if (!header_seen && line_no == 1 && is_header(view)) {
      header_seen = true;
      continue;
    }
    ++data_rows;

    std::string_view fields[8];
    if (!split8(view, fields)) {
      result.rejects.push_back({line_no, "expected 8 comma-separated fields"});
      continue;
    }
    double ts = 0.0, ax = 0.0, ay = 0.0, az = 0.0;
    if (!parse_double(fields[0], ts) || !parse_double(fields[1], ax) ||
        !parse_double(fields[2], ay) || !parse_double(fields[3], az)) {
      result.rejects.push_back({line_no, "unparseable numeric field"});
      continue;
    }
    if (!std::isfinite(ts) || !std::isfinite(ax) || !std::isfinite(ay) || !std::isfinite(az)) {
      result.rejects.push_back({line_no, "non-finite value"});
      continue;
    }
    bool service = false, wired = false, speaker = false, bluetooth = false;
    if (!parse_bit(fields[4], service) || !parse_bit(fields[5], wired) ||
        !parse_bit(fields[6], speaker) || !parse_bit(fields[7], bluetooth)) {
      result.rejects.push_back({line_no, "usage bits must be 0 or 1"});
      continue;
    }
    result.samples.push_back(
        {ts, {ax, ay, az}, UsageType::from_bits(service, wired, speaker, bluetooth)});
  }

  if (data_rows > 0 && 2 * result.rejects.size() > data_rows) {
    throw FormatError("more than 50% of rows rejected (" + std::to_string(result.rejects.size()) +
                      "/" + std::to_string(data_rows) + "): wrong input format?");
  }
  return result;
}

std::map<UsageType, std::vector<AccelSample>> partition_by_usage(
    std::span<const AccelSample> samples) {
  std::map<UsageType, std::vector<AccelSample>> buckets;
  for (const AccelSample& s : samples) {
    buckets[s.usage].push_back(s);
  }
  return buckets;
}

IqrFilterResult iqr_filter(std::span<const AccelSample> samples) {
  IqrFilterResult result;
  if (samples.size() < 4) {
    result.kept.assign(samples.begin(), samples.end());
    result.passthrough = true;
    return result;
  }
  std::vector<double> mags(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    mags[i] = norm(samples[i].a);
  }
  std::vector<double> sorted = mags;
  std::sort(sorted.begin(), sorted.end());
  result.q1 = quantile_sorted(sorted, 0.25);
  result.q3 = quantile_sorted(sorted, 0.75);
  const double iqr = result.q3 - result.q1;
  result.lower_fence = result.q1 - 1.5 * iqr;
  result.upper_fence = result.q3 + 1.5 * iqr;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (mags[i] >= result.lower_fence && mags[i] <= result.upper_fence) {
      result.kept.push_back(samples[i]);
    } else {
      result.removed.push_back(samples[i]);
    }
  }
  return result;
}

std::vector<AccelSample> dedup(std::span<const AccelSample> samples) {
  std::vector<AccelSample> unique;
  std::unordered_set<TripleKey, TripleKeyHash> seen;
  seen.reserve(samples.size());
  for (const AccelSample& s : samples) {
    if (seen.insert(key_of(s.a)).second) {
      unique.push_back(s);
    }
  }
  return unique;
}

OrientationSet to_orientations(UsageType usage, std::span<const AccelSample> filtered,
                               std::size_t n_raw, std::size_t n_after_iqr) {
  OrientationSet set;
  set.usage = usage;
  set.n_raw = n_raw;
  set.n_after_iqr = n_after_iqr;
  set.vectors.reserve(filtered.size());
  for (const AccelSample& s : filtered) {
    if (norm(s.a) == 0.0) {
      ++set.n_zero_dropped;
      continue;
    }
    set.vectors.push_back(normalize(s.a));
  }
  set.n_after_dedup = set.vectors.size();
  return set;
}

OrientationSet process_bucket(UsageType usage, std::span<const AccelSample> raw,
                              IqrFilterResult* iqr_out) {
  IqrFilterResult iqr = iqr_filter(raw);
  std::vector<AccelSample> unique = dedup(iqr.kept);
  OrientationSet set = to_orientations(usage, unique, raw.size(), iqr.kept.size());
  if (iqr_out != nullptr) {
    *iqr_out = std::move(iqr);
  }
  return set;
}

std::vector<std::pair<double, double>> magnitude_cdf(std::span<const AccelSample> samples,
                                                     std::span<const double> grid) {
  if (samples.empty()) {
    throw DataError("magnitude_cdf: no samples");
  }
  std::vector<double> mags(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    mags[i] = norm(samples[i].a);
  }
  std::sort(mags.begin(), mags.end());
  std::vector<std::pair<double, double>> cdf;
  cdf.reserve(grid.size());
  const double n = static_cast<double>(mags.size());
  for (double g : grid) {
    const auto count = std::upper_bound(mags.begin(), mags.end(), g) - mags.begin();
    cdf.emplace_back(g, static_cast<double>(count) / n);
  }
  return cdf;
}

}  // namespace orient
