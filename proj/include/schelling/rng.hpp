#pragma once

#include <cstdint>
#include <random>

namespace schelling {

// All randomness in the library flows through std::mt19937_64 plus the two
// samplers below.  The standard fixes the generator's output sequence for a
// given seed, but it does NOT fix the library distributions — so we never use
// std::uniform_*_distribution / bernoulli_distribution.  Every draw is made
// with these helpers, making run records reproducible across compilers.
using Rng = std::mt19937_64;

// Uniform in [0,1) using the top 53 bits of one generator word.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, bound) by rejection from a power-of-two mask.
// Unbiased; consumes a variable (but deterministic) number of words.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  if (bound < 2) return 0;
  std::uint64_t mask = bound - 1;
  mask |= mask >> 1;
  mask |= mask >> 2;
  mask |= mask >> 4;
  mask |= mask >> 8;
  mask |= mask >> 16;
  mask |= mask >> 32;
  for (;;) {
    const std::uint64_t v = rng() & mask;
    if (v < bound) return v;
  }
}

// splitmix64 finalizer: a bijection on 64-bit words with strong avalanche.
// Used to derive independent per-cell seeds in parameter sweeps.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace schelling
