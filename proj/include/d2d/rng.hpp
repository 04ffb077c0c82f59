#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace d2d {

/// Deterministic random source. The engine sequence is fully specified by the
/// standard; the double mappings live here because the standard distributions
/// are implementation-defined and would break cross-platform reproducibility.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1).
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Unit-mean exponential draw, strictly positive.
  double exponential() {
    double u;
    do {
      u = uniform01();
    } while (u <= 0.0);
    return -std::log(u);
  }

 private:
  std::mt19937_64 engine_;
};

/// splitmix64 finalizer.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Per-realization seed derived from (base seed, grid point, realization).
/// Algorithms never enter the mix, so paired comparisons at one grid cell see
/// identical channel draws.
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t point, std::uint64_t realization) {
  return mix64(mix64(mix64(base) ^ point) ^ realization);
}

}  // namespace d2d
