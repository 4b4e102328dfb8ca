#pragma once

#include <cstdint>

namespace orient {

// Counter-based uniform generator: a value depends only on (seed, index, slot).
// Draws can therefore be produced in any order and from any number of threads
// with identical results, which is what makes seeded runs byte-reproducible.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t bits(std::uint64_t index, std::uint32_t slot) const {
    std::uint64_t x = seed_ + 0x9E3779B97F4A7C15ull * (index + 1) +
                      0xD1B54A32D192ED03ull * (static_cast<std::uint64_t>(slot) + 1);
    return mix(mix(x) + 0x9E3779B97F4A7C15ull);
  }

  // Strictly inside (0,1); 52-bit resolution.
  double uniform01(std::uint64_t index, std::uint32_t slot) const {
    return (static_cast<double>(bits(index, slot) >> 12) + 0.5) * 0x1.0p-52;
  }

  // Decorrelated sub-stream, e.g. one per usage type.
  RandomStream derive(std::uint64_t tag) const { return RandomStream(mix(seed_ ^ mix(tag))); }

 private:
  // SplitMix64 finalizer (Stafford mix13).
  static std::uint64_t mix(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ull;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBull;
    x ^= x >> 31;
    return x;
  }

  std::uint64_t seed_;
};

}  // namespace orient
