#include "doctest.h"
#include "schelling/rng.hpp"

#include <cstdint>
#include <set>
#include <vector>

using namespace schelling;

TEST_CASE("generator sequence is the standard-pinned one") {
  // The standard fixes this value: the 10000th output of a default-seeded
  // mt19937_64.  If this fails, run records are not portable.
  Rng rng(5489u);
  std::uint64_t v = 0;
  for (int i = 0; i < 10000; ++i) v = rng();
  CHECK(v == 9981545732273789042ULL);
}

TEST_CASE("uniform01 stays in [0,1) and is deterministic") {
  Rng a(42), b(42);
  for (int i = 0; i < 10000; ++i) {
    const double x = uniform01(a);
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
    CHECK(x == uniform01(b));
  }
}

TEST_CASE("uniform_below respects its bound") {
  Rng rng(7);
  for (const std::uint64_t bound : {1ULL, 2ULL, 3ULL, 7ULL, 64ULL, 1000ULL}) {
    for (int i = 0; i < 2000; ++i) {
      CHECK(uniform_below(rng, bound) < bound);
    }
  }
  CHECK(uniform_below(rng, 0) == 0);
  CHECK(uniform_below(rng, 1) == 0);
}

TEST_CASE("uniform_below is unbiased across a non-power-of-two range") {
  // Chi-square goodness of fit, 10 bins, 100k draws.  Critical value for
  // 9 degrees of freedom at the 0.001 level is 27.877; a correct sampler
  // fails this with probability 1e-3 (and the seed is fixed, so never flakes).
  Rng rng(12345);
  const int bins = 10;
  const int draws = 100000;
  std::vector<int> count(bins, 0);
  for (int i = 0; i < draws; ++i) ++count[uniform_below(rng, bins)];
  const double expected = static_cast<double>(draws) / bins;
  double chi2 = 0.0;
  for (int c : count) {
    const double d = c - expected;
    chi2 += d * d / expected;
  }
  CHECK(chi2 < 27.877);
}

TEST_CASE("mix64 is injective on a sample and avalanches") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 10000; ++i) seen.insert(mix64(i));
  CHECK(seen.size() == 10000);

  // Flipping one input bit should flip roughly half the output bits.
  int total = 0;
  for (std::uint64_t i = 0; i < 256; ++i) {
    const std::uint64_t base = mix64(i);
    for (int bit = 0; bit < 64; ++bit) {
      total += __builtin_popcountll(base ^ mix64(i ^ (1ULL << bit)));
    }
  }
  const double mean_flips = static_cast<double>(total) / (256.0 * 64.0);
  CHECK(mean_flips > 28.0);
  CHECK(mean_flips < 36.0);
}
