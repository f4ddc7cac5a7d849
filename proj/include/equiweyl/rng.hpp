#pragma once

#include <cstdint>

namespace equiweyl {

/// Counter-based generator: the value drawn for a given (seed, index, slot)
/// triple is independent of evaluation order, so Monte-Carlo loops can be
/// split across workers without changing the result.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  /// Uniform double in [0, 1) for sample `index`, component `slot`.
  double uniform(std::uint64_t index, std::uint64_t slot) const {
    std::uint64_t x = mix(seed_ ^ mix(index * 0x9e3779b97f4a7c15ULL + slot));
    return static_cast<double>(x >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [lo, hi).
  double uniform(std::uint64_t index, std::uint64_t slot, double lo, double hi) const {
    return lo + (hi - lo) * uniform(index, slot);
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_;
};

}  // namespace equiweyl
