#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace rigidswap {

/// Denominator of the dyadic grid every sampled coordinate is snapped to.
/// Dyadic values convert to exact rationals without rounding.
inline constexpr double kCoordinateGrid = 512.0;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Derives an independent stream seed from a base seed and a tag path,
/// e.g. derive_seed(seed, {kFillStream, face, attempt}).
inline std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
  std::uint64_t h = splitmix64(seed);
  for (std::uint64_t tag : path) h = splitmix64(h ^ splitmix64(tag + 0x632be59bd9b4e019ULL));
  return h;
}

// Stream tags for derive_seed.
inline constexpr std::uint64_t kFillStream = 1;
inline constexpr std::uint64_t kGussetStream = 2;
inline constexpr std::uint64_t kConfigurationStream = 3;
inline constexpr std::uint64_t kTransformStream = 4;
inline constexpr std::uint64_t kProbeStream = 5;
inline constexpr std::uint64_t kForestStream = 6;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1); built from raw engine bits so values are identical across standard libraries.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::uint64_t next() { return engine_(); }
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : engine_() % n; }

 private:
  std::mt19937_64 engine_;
};

inline double snap_to_grid(double x) { return std::round(x * kCoordinateGrid) / kCoordinateGrid; }

}  // namespace rigidswap
