#pragma once

#include <cmath>
#include <cstdint>

#include "exl/vec3.hpp"

namespace exl {

/// Counter-based generator built on the SplitMix64 finalizer.
///
/// Draw i of stream `key` is mix(key + (i+1) * golden), so any draw can be
/// evaluated independently of the others. Child streams hash a tag into the key.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : key_(mix(seed ^ 0x6a09e667f3bcc909ULL)) {}

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t bits(std::uint64_t i) const { return mix(key_ + (i + 1) * 0x9e3779b97f4a7c15ULL); }

  /// Uniform on (0, 1), 53-bit resolution, never exactly 0.
  double uniform(std::uint64_t i) const { return (static_cast<double>(bits(i) >> 11) + 0.5) * 0x1.0p-53; }

  /// Standard normal from draws 2i and 2i+1 (Box-Muller, cosine branch).
  double normal(std::uint64_t i) const {
    const double u1 = uniform(2 * i);
    const double u2 = uniform(2 * i + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
  }

  CounterRng child(std::uint64_t tag) const { return CounterRng(key_, mix(tag + 0x3c6ef372fe94f82bULL)); }

  std::uint64_t key() const { return key_; }

 private:
  CounterRng(std::uint64_t parent, std::uint64_t tag) : key_(mix(parent ^ tag)) {}
  std::uint64_t key_;
};

}  // namespace exl
