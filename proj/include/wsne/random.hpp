#pragma once

#include <cstdint>
#include <random>

namespace wsne {

// All randomness in the library flows through std::mt19937_64 seeded from a
// single 64-bit value; derived streams are split off with splitmix64 so that
// corpora stay reproducible across releases and platforms.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) {
  return splitmix64(seed ^ splitmix64(salt));
}

// 53-bit uniform in [0, 1); avoids std::uniform_real_distribution, whose
// output is not pinned down by the standard.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace wsne
