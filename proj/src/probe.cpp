#include "schelling/probe.hpp"

#include <stdexcept>

#include "schelling/numerics.hpp"
#include "schelling/rational.hpp"
#include "schelling/ring.hpp"
#include "schelling/rng.hpp"

namespace schelling {

namespace {

struct Cuts {
  std::int64_t unhappy;      // floor((1-tau) W) + 1
  std::int64_t flip_ready;   // ceil(tau W) - 1, also the stable-interval cutoff
  std::int64_t intractable;  // ceil((tau - 1/2) W) - 1
};

Cuts cuts_for(const Rational& tau, std::int64_t w) {
  const std::int64_t W = 2 * w + 1;
  Cuts c;
  c.unhappy = Rational((tau.den() - tau.num()) * W, tau.den()).floor() + 1;
  c.flip_ready = Rational(tau.num() * W, tau.den()).ceil() - 1;
  c.intractable = Rational((2 * tau.num() - tau.den()) * W, 2 * tau.den()).ceil() - 1;
  return c;
}

}  // namespace

ProbeReport probe(const Scenario& scenario, std::int64_t w) {
  if (w < 1) throw std::invalid_argument("probe: w must be >= 1");
  const double rho = scenario.rho;
  const Cuts g = cuts_for(scenario.tau_g, w);
  const Cuts r = cuts_for(scenario.tau_r, w);

  ProbeReport rep;
  rep.w = w;
  rep.cut_unhappy_green = g.unhappy;
  rep.cut_unhappy_red = r.unhappy;
  rep.cut_flip_ready_red = g.flip_ready;
  rep.cut_flip_ready_green = r.flip_ready;
  rep.cut_stable_green = g.flip_ready;
  rep.cut_stable_red = r.flip_ready;
  rep.cut_intractable_green = g.intractable;
  rep.cut_intractable_red = r.intractable;

  rep.unhappy_green = binom_upper_tail(2 * w, 1.0 - rho, g.unhappy);
  rep.unhappy_red = binom_upper_tail(2 * w, rho, r.unhappy);
  rep.flip_ready_red = binom_upper_tail(2 * w, rho, g.flip_ready);
  rep.flip_ready_green = binom_upper_tail(2 * w, 1.0 - rho, r.flip_ready);
  rep.stable_green = binom_upper_tail(w, rho, g.flip_ready);
  rep.stable_red = binom_upper_tail(w, 1.0 - rho, r.flip_ready);
  rep.intractable_green = binom_lower_tail(w + 1, rho, g.intractable);
  rep.intractable_red = binom_lower_tail(w + 1, 1.0 - rho, r.intractable);
  return rep;
}

ProbeSample probe_monte_carlo(const Scenario& scenario, std::int64_t w, std::int64_t samples,
                              std::uint64_t seed) {
  if (w < 1) throw std::invalid_argument("probe_monte_carlo: w must be >= 1");
  if (samples < 1) throw std::invalid_argument("probe_monte_carlo: samples must be >= 1");
  const std::int64_t n = 2 * w + 1;

  std::int64_t greens_seen = 0;
  std::int64_t unhappy_g = 0, unhappy_r = 0;
  std::int64_t flip_g = 0, flip_r = 0;
  std::int64_t stable_g = 0, stable_r = 0;
  std::int64_t intract_g = 0, intract_r = 0;

  const Rational& tg = scenario.tau_g;
  const Rational& tr = scenario.tau_r;
  const std::int64_t W = n;

  Rng rng(seed);
  for (std::int64_t s = 0; s < samples; ++s) {
    Ring ring = Ring::random(scenario, n, w, rng);
    const bool green0 = ring.color(0) == Color::Green;

    std::int64_t short_greens = 0;  // greens in [0, w]
    for (std::int64_t x = 0; x <= w; ++x) short_greens += ring.color(x) == Color::Green;
    // stable interval test for [0, w], exact
    if (green0) {
      ++greens_seen;
      if (ring.status(0) != NodeStatus::Happy) ++unhappy_g;
      if (tg.den() * short_greens >= tg.num() * W) ++stable_g;
    } else {
      if (ring.status(0) != NodeStatus::Happy) ++unhappy_r;
      const std::int64_t short_reds = (w + 1) - short_greens;
      if (tr.den() * short_reds >= tr.num() * W) ++stable_r;
    }
    // intractable window tests for [0, w], unconditional
    if (2 * tg.den() * short_greens < (2 * tg.num() - tg.den()) * W) ++intract_g;
    const std::int64_t short_reds = (w + 1) - short_greens;
    if (2 * tr.den() * short_reds < (2 * tr.num() - tr.den()) * W) ++intract_r;

    // would node 0 be happy wearing the other colour?
    ring.flip(0);
    if (ring.status(0) == NodeStatus::Happy) ++(green0 ? flip_g : flip_r);
  }

  ProbeSample out;
  out.samples = samples;
  out.green_samples = greens_seen;
  const std::int64_t reds_seen = samples - greens_seen;
  const auto frac = [](std::int64_t num, std::int64_t den) {
    return den > 0 ? static_cast<double>(num) / static_cast<double>(den) : 0.0;
  };
  out.unhappy_green = frac(unhappy_g, greens_seen);
  out.unhappy_red = frac(unhappy_r, reds_seen);
  out.flip_ready_green = frac(flip_g, greens_seen);
  out.flip_ready_red = frac(flip_r, reds_seen);
  out.stable_green = frac(stable_g, greens_seen);
  out.stable_red = frac(stable_r, reds_seen);
  out.intractable_green = frac(intract_g, samples);
  out.intractable_red = frac(intract_r, samples);
  return out;
}

}  // namespace schelling
