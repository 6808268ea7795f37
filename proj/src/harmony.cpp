#include "schelling/harmony.hpp"

#include <stdexcept>

namespace schelling {

namespace {

__int128 gcd128(__int128 a, __int128 b) {
  while (b != 0) {
    const __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace

std::optional<Rational> harmony_chi(const Scenario& scenario, std::int64_t w) {
  if (w < 1) throw std::invalid_argument("harmony_chi: w must be >= 1");
  const Rational one(1, 1);
  const Rational& tg = scenario.tau_g;
  const Rational& tr = scenario.tau_r;

  if (tg + tr <= one) {
    // Closed interval; non-empty exactly because tau_g + tau_r <= 1.
    const Rational lo = tr / (one - tr);
    const Rational hi = (one - tg) / tg;
    return (lo + hi) / Rational(2, 1);
  }

  const Rational q1(1, 2 * w + 1);
  const Rational d = tg - q1;
  if (!(Rational(0, 1) < d)) return std::nullopt;  // tau_g too small for this window
  const Rational lo = (one - tg + q1) / d;
  const Rational hi = (tr - q1) / (one - tr + q1);
  if (!(lo < hi)) return std::nullopt;  // open interval empty: no valid weight
  return (lo + hi) / Rational(2, 1);
}

HarmonyMonitor::HarmonyMonitor(const Ring& ring, Rational chi) : chi_(chi), score_(0) {
  if (!(Rational(0, 1) < chi)) throw std::invalid_argument("harmony weight must be positive");
  scale_ = static_cast<__int128>(chi_.den()) * ring.window();
  const std::int64_t W = ring.window();
  const std::int64_t p = chi_.num();
  const std::int64_t q = chi_.den();
  for (std::int64_t x = 0; x < ring.n(); ++x) {
    const std::int64_t greens = ring.neighborhood_greens(x);
    if (ring.color(x) == Color::Green)
      score_ += static_cast<__int128>(p) * greens;
    else
      score_ += static_cast<__int128>(q) * (W - greens);
  }
}

__int128 HarmonyMonitor::window_contribution(const Ring& ring, std::int64_t x) const {
  const std::int64_t n = ring.n();
  const std::int64_t W = ring.window();
  const std::int64_t p = chi_.num();
  const std::int64_t q = chi_.den();
  __int128 sum = 0;
  std::int64_t y = x - ring.w();
  if (y < 0) y += n;
  for (std::int64_t k = 0; k < W; ++k) {
    const std::int64_t greens = ring.neighborhood_greens(y);
    if (ring.color(y) == Color::Green)
      sum += static_cast<__int128>(p) * greens;
    else
      sum += static_cast<__int128>(q) * (W - greens);
    if (++y == n) y = 0;
  }
  return sum;
}

Rational harmony_index(const Ring& ring, const Rational& chi) {
  const HarmonyMonitor m(ring, chi);
  __int128 num = m.scaled_score();
  __int128 den = m.scale();
  const __int128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  constexpr __int128 kMax = INT64_MAX;
  if (num > kMax || den > kMax)
    throw std::overflow_error("harmony_index: reduced score exceeds 64-bit range");
  return Rational(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

}  // namespace schelling
