#pragma once

#include <cstdint>

namespace wavecoeff {

/// Counter-based generator: draw n is a pure function of (seed, n), so streams
/// are reproducible on every platform and can be addressed out of order.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) noexcept : seed_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }

  /// SplitMix64 finaliser applied to seed + (n + 1) * golden gamma.
  std::uint64_t bits(std::uint64_t n) const noexcept {
    std::uint64_t z = seed_ + (n + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform on [0, 1) with 53 random bits.
  double unit(std::uint64_t n) const noexcept {
    return static_cast<double>(bits(n) >> 11) * 0x1.0p-53;
  }

  /// Uniform on [-1, 1).
  double symmetric(std::uint64_t n) const noexcept { return 2.0 * unit(n) - 1.0; }

 private:
  std::uint64_t seed_;
};

}  // namespace wavecoeff
