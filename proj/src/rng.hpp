// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace spinmem {

// SplitMix64 finalizer. Used to derive independent substream seeds so that
// every Monte Carlo job owns a generator keyed by its own indices, which makes
// results independent of how jobs are scheduled across workers.
constexpr uint64_t mix64(uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

template <typename... Ids>
constexpr uint64_t substream(uint64_t seed, Ids... ids) {
  uint64_t s = mix64(seed);
  ((s = mix64(s ^ static_cast<uint64_t>(ids))), ...);
  return s;
}

using RandomEngine = std::mt19937_64;

inline RandomEngine make_engine(uint64_t stream_seed) {
  return RandomEngine(stream_seed);
}

// Uniform in [0, 1) with 53 random bits.
inline double uniform01(RandomEngine& g) {
  return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

// Unbiased integer in [0, n) by rejection.
inline uint64_t uniform_below(RandomEngine& g, uint64_t n) {
  const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  uint64_t x;
  do {
    x = g();
  } while (x >= limit);
  return x % n;
}

// Standard normal, Box-Muller cosine branch. Consumes exactly two engine
// draws per call, so substream consumption is identical on every platform
// (std::normal_distribution does not guarantee that).
inline double standard_normal(RandomEngine& g) {
  const double u1 = 1.0 - uniform01(g);  // (0, 1]
  const double u2 = uniform01(g);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

inline double normal(RandomEngine& g, double mean, double sigma) {
  return mean + sigma * standard_normal(g);
}

}  // namespace spinmem
