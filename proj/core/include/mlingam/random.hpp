#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace mlingam {

/// Engine used throughout; its output sequence is fixed by the standard.
using Rng = std::mt19937_64;

/// splitmix64 finalizer; maps (seed, stream) to well-separated engine seeds.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Uniform on [0, 1) with 53 random bits. Samplers below avoid the standard
/// distribution classes so streams are identical across standard libraries.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline double uniform(Rng& rng, double lo, double hi) { return lo + (hi - lo) * uniform01(rng); }

/// Marsaglia polar method; the second variate is discarded.
inline double standard_normal(Rng& rng) {
  for (;;) {
    const double u = 2.0 * uniform01(rng) - 1.0;
    const double v = 2.0 * uniform01(rng) - 1.0;
    const double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
  }
}

inline bool bernoulli(Rng& rng, double probability) { return uniform01(rng) < probability; }

}  // namespace mlingam
