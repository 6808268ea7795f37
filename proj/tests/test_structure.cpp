#include "doctest.h"
#include "schelling/dynamics.hpp"
#include "schelling/structure.hpp"

#include <cstdint>
#include <vector>

using namespace schelling;

namespace {

// Direct per-window recount oracle, no sliding updates.
std::int64_t window_greens(const std::vector<Color>& colors, std::int64_t n, std::int64_t a,
                           std::int64_t len) {
  std::int64_t g = 0;
  for (std::int64_t i = 0; i < len; ++i) g += colors[(a + i) % n] == Color::Green;
  return g;
}

bool oracle_stable(const Scenario& s, Color c, std::int64_t greens, std::int64_t w) {
  const Rational W = Rational::from_int(2 * w + 1);
  const Rational count = Rational::from_int(c == Color::Green ? greens : (w + 1) - greens);
  return count >= (c == Color::Green ? s.tau_g : s.tau_r) * W;
}

bool oracle_intractable(const Scenario& s, Color c, std::int64_t greens, std::int64_t w) {
  const Rational W = Rational::from_int(2 * w + 1);
  const Rational count = Rational::from_int(c == Color::Green ? greens : (w + 1) - greens);
  const Rational len = Rational::from_int(w + 1);
  return count < (c == Color::Green ? s.tau_g : s.tau_r) * W - len;
}

// Maximal same-colour runs by direct expansion from each run head.
std::vector<IntervalReport> oracle_firewalls(const std::vector<Color>& colors, std::int64_t n,
                                             std::int64_t w, Color color) {
  const IntervalKind kind =
      color == Color::Green ? IntervalKind::GreenFirewall : IntervalKind::RedFirewall;
  bool uniform = true;
  for (std::int64_t x = 1; x < n; ++x)
    if (colors[x] != colors[0]) uniform = false;
  if (uniform) {
    if (colors[0] == color) return {{kind, 0, n}};
    return {};
  }
  std::vector<IntervalReport> out;
  for (std::int64_t x = 0; x < n; ++x) {
    if (colors[x] != color) continue;
    if (colors[(x + n - 1) % n] == color) continue;  // not a run head
    std::int64_t len = 1;
    while (colors[(x + len) % n] == color) ++len;
    if (len >= w + 1) out.push_back({kind, x, len});
  }
  return out;
}

void check_structure_oracle(const Ring& ring) {
  const std::int64_t n = ring.n();
  const std::int64_t w = ring.w();
  const Scenario& s = ring.scenario();
  const auto& colors = ring.colors();

  for (const Color c : {Color::Green, Color::Red}) {
    const auto stable = find_stable_intervals(ring, c);
    const auto intract = find_intractable_intervals(ring, c);
    std::size_t si = 0, ii = 0;
    for (std::int64_t a = 0; a < n; ++a) {
      const std::int64_t g = window_greens(colors, n, a, w + 1);
      if (oracle_stable(s, c, g, w)) {
        REQUIRE(si < stable.size());
        REQUIRE(stable[si].start == a);
        REQUIRE(stable[si].length == w + 1);
        ++si;
      }
      if (oracle_intractable(s, c, g, w)) {
        REQUIRE(ii < intract.size());
        REQUIRE(intract[ii].start == a);
        ++ii;
      }
    }
    REQUIRE(si == stable.size());
    REQUIRE(ii == intract.size());
    REQUIRE(find_firewalls(ring, c) == oracle_firewalls(colors, n, w, c));
  }

  const Census cen = census(ring);
  CHECK(cen.happy_green + cen.unhappy_green +
            (cen.happy_red + cen.unhappy_red) == n);
  CHECK(cen.hopeful_green <= cen.unhappy_green);
  CHECK(cen.hopeful_red <= cen.unhappy_red);
  CHECK(cen.stably_green_intervals ==
        static_cast<std::int64_t>(find_stable_intervals(ring, Color::Green).size()));
  CHECK(cen.stably_red_intervals ==
        static_cast<std::int64_t>(find_stable_intervals(ring, Color::Red).size()));
  CHECK(cen.green_intractable_intervals ==
        static_cast<std::int64_t>(find_intractable_intervals(ring, Color::Green).size()));
  CHECK(cen.red_intractable_intervals ==
        static_cast<std::int64_t>(find_intractable_intervals(ring, Color::Red).size()));
}

std::vector<Color> bits_to_colors(std::uint32_t bits, std::int64_t n) {
  std::vector<Color> colors(n);
  for (std::int64_t x = 0; x < n; ++x)
    colors[x] = (bits >> x) & 1 ? Color::Green : Color::Red;
  return colors;
}

bool in_wrapped_window(std::int64_t x, std::int64_t start, std::int64_t len, std::int64_t n) {
  return ((x - start) % n + n) % n < len;
}

}  // namespace

TEST_CASE("interval detectors match the recount oracle on every small colouring") {
  const std::int64_t n = 12;
  for (const std::int64_t w : {std::int64_t{1}, std::int64_t{2}, std::int64_t{3}}) {
    const std::int64_t W = 2 * w + 1;
    std::vector<Scenario> scenarios;
    // Exact boundaries of the stable and intractable conditions, plus
    // asymmetric and sub-1/2 cases.
    scenarios.emplace_back(0.5, Rational(w + 1, W), Rational(w + 1, W));
    scenarios.emplace_back(0.5, Rational(w + 2 >= W ? W - 1 : w + 2, W), Rational(1, W));
    scenarios.emplace_back(0.5, Rational(2, 5), Rational(2, 5));
    scenarios.emplace_back(0.5, Rational(9, 10), Rational(9, 10));
    scenarios.emplace_back(0.5, Rational(2, 5), Rational(3, 5));
    for (const Scenario& s : scenarios) {
      for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
        Ring ring(s, n, w, bits_to_colors(bits, n));
        check_structure_oracle(ring);
      }
    }
  }
}

TEST_CASE("structure detectors on larger random rings") {
  Rng rng(17);
  for (int rep = 0; rep < 20; ++rep) {
    const Scenario s(0.5, Rational(3, 7), Rational(4, 7));
    Ring ring = Ring::random(s, 257, 3, rng);
    check_structure_oracle(ring);
  }
}

TEST_CASE("interval reports are colour-swap covariant") {
  Rng rng(23);
  const Scenario s(0.3, Rational(2, 5), Rational(4, 5));
  const Scenario mirrored(0.7, Rational(4, 5), Rational(2, 5));
  for (int rep = 0; rep < 10; ++rep) {
    Ring ring = Ring::random(s, 100, 2, rng);
    std::vector<Color> swapped(ring.colors());
    for (Color& c : swapped) c = other(c);
    Ring mirror(mirrored, 100, 2, swapped);
    // Same starts, opposite kinds.
    const auto sg = find_stable_intervals(ring, Color::Green);
    const auto sr = find_stable_intervals(mirror, Color::Red);
    REQUIRE(sg.size() == sr.size());
    for (std::size_t i = 0; i < sg.size(); ++i) CHECK(sg[i].start == sr[i].start);
    const auto ig = find_intractable_intervals(ring, Color::Green);
    const auto ir = find_intractable_intervals(mirror, Color::Red);
    REQUIRE(ig.size() == ir.size());
    for (std::size_t i = 0; i < ig.size(); ++i) CHECK(ig[i].start == ir[i].start);
    const auto fg = find_firewalls(ring, Color::Green);
    const auto fr = find_firewalls(mirror, Color::Red);
    REQUIRE(fg.size() == fr.size());
    for (std::size_t i = 0; i < fg.size(); ++i) {
      CHECK(fg[i].start == fr[i].start);
      CHECK(fg[i].length == fr[i].length);
    }
  }
}

TEST_CASE("no intractable window exists when tolerances stay at or below one half") {
  // The deficit bound needs tau*(2w+1) > w+1, impossible for tau <= 1/2.
  Rng rng(5);
  for (const std::int64_t w : {std::int64_t{1}, std::int64_t{4}}) {
    const Scenario s(0.5, Rational(1, 2), Rational(2, 5));
    for (int rep = 0; rep < 10; ++rep) {
      Ring ring = Ring::random(s, 80, w, rng);
      CHECK(find_intractable_intervals(ring, Color::Green).empty());
      CHECK(find_intractable_intervals(ring, Color::Red).empty());
    }
  }
}

TEST_CASE("no stable window exists once tau crosses (w+1)/(2w+1)") {
  // w = 2: (w+1)/W = 3/5.  tau = 13/20 > 3/5 kills even all-green windows.
  const Scenario s(0.5, Rational(13, 20), Rational(13, 20));
  Ring all_green = Ring::uniform(s, 40, 2, Color::Green);
  CHECK(find_stable_intervals(all_green, Color::Green).empty());
  // At tau = 3/5 exactly, every all-green window qualifies.
  const Scenario edge(0.5, Rational(3, 5), Rational(3, 5));
  Ring edge_ring = Ring::uniform(edge, 40, 2, Color::Green);
  CHECK(find_stable_intervals(edge_ring, Color::Green).size() == 40);
}

TEST_CASE("green members of a stable green window never flip (non-perturbed dynamics)") {
  const Scenario s(0.5, Rational(2, 5), Rational(2, 5));
  for (const Dynamic d : {Dynamic::selective(), Dynamic::incremental(), Dynamic::synchronous()}) {
    for (const std::uint64_t seed : {101ULL, 102ULL, 103ULL}) {
      Rng rng(seed);
      Ring ring = Ring::random(s, 120, 2, rng);
      const auto stable = find_stable_intervals(ring, Color::Green);
      const std::vector<Color> initial = ring.colors();
      const RunRecord rec = run_dynamic(ring, d, rng);
      for (const ChangeEvent& ev : rec.events) {
        if (ev.new_color != Color::Red) continue;  // only green->red flips matter
        for (const IntervalReport& iv : stable) {
          if (in_wrapped_window(ev.node, iv.start, iv.length, 120) &&
              initial[ev.node] == Color::Green) {
            FAIL("protected green node " << ev.node << " flipped red");
          }
        }
      }
    }
  }
}

TEST_CASE("an intractable window keeps its deficit under hopeful-only flips") {
  // tau_g = 4/5 at w = 2: a length-3 window with fewer than
  // 4/5*5 - 3 = 1 green (i.e. none) can never gain one while only hopeful
  // nodes flip.  Replay the event log and track every initial window.
  const Scenario s(0.5, Rational(4, 5), Rational(2, 5));
  for (const std::uint64_t seed : {7ULL, 8ULL, 9ULL, 10ULL}) {
    Rng rng(seed);
    Ring ring = Ring::random(s, 120, 2, rng);
    const auto intract = find_intractable_intervals(ring, Color::Green);
    const RunRecord rec = run_dynamic(ring, Dynamic::selective(), rng);
    std::vector<Color> colors = rec.initial_colors;
    for (const ChangeEvent& ev : rec.events) {
      colors[ev.node] = ev.new_color;
      for (const IntervalReport& iv : intract) {
        // The window's green count must never exceed its initial value; in
        // particular no red inside ever turns green.
        if (ev.new_color == Color::Green &&
            in_wrapped_window(ev.node, iv.start, iv.length, 120) &&
            rec.initial_colors[ev.node] == Color::Red) {
          FAIL("red node " << ev.node << " inside an intractable window turned green");
        }
      }
    }
  }
}

TEST_CASE("firewall bookkeeping on crafted rings") {
  const Scenario s(0.5, Rational(2, 5), Rational(2, 5));
  // 5 green, 2 red, 4 green, 1 red  (n = 12, w = 2): the runs of length >= 3
  // are the two green ones; the wrap joins nothing here.
  std::vector<Color> colors(12, Color::Red);
  for (int i = 0; i < 5; ++i) colors[i] = Color::Green;
  for (int i = 7; i < 11; ++i) colors[i] = Color::Green;
  Ring ring(s, 12, 2, colors);
  const auto green = find_firewalls(ring, Color::Green);
  REQUIRE(green.size() == 2);
  CHECK(green[0] == IntervalReport{IntervalKind::GreenFirewall, 0, 5});
  CHECK(green[1] == IntervalReport{IntervalKind::GreenFirewall, 7, 4});
  CHECK(find_firewalls(ring, Color::Red).empty());  // runs of 2 and 1 only

  // A wrapped run: green on [10, 2] (length 5).
  std::vector<Color> wrap(12, Color::Red);
  for (const int i : {10, 11, 0, 1, 2}) wrap[i] = Color::Green;
  Ring wring(s, 12, 2, wrap);
  const auto wruns = find_firewalls(wring, Color::Green);
  REQUIRE(wruns.size() == 1);
  CHECK(wruns[0].start == 10);
  CHECK(wruns[0].length == 5);
  const auto rruns = find_firewalls(wring, Color::Red);
  REQUIRE(rruns.size() == 1);
  CHECK(rruns[0] == IntervalReport{IntervalKind::RedFirewall, 3, 7});

  // All one colour: a single run spanning the ring.
  Ring mono = Ring::uniform(s, 12, 2, Color::Green);
  const auto all = find_firewalls(mono, Color::Green);
  REQUIRE(all.size() == 1);
  CHECK(all[0].length == 12);
  CHECK(find_firewalls(mono, Color::Red).empty());
}

TEST_CASE("run statistics are a faithful projection") {
  const Scenario s(0.5, Rational(2, 5), Rational(3, 5));
  const RunRecord rec = simulate(s, 90, 2, 4, Dynamic::selective());
  const RunSummary sum = run_statistics(rec);
  CHECK(sum.final_green_fraction == rec.final_green_fraction());
  CHECK(sum.changed_fraction == rec.changed_fraction());
  CHECK(sum.steps == rec.steps);
  CHECK(sum.termination.kind == rec.termination.kind);
}

TEST_CASE("interval kinds have distinct names") {
  CHECK(std::string(interval_kind_name(IntervalKind::StablyGreen)) == "stably_green");
  CHECK(std::string(interval_kind_name(IntervalKind::RedFirewall)) == "red_firewall");
  CHECK(std::string(interval_kind_name(IntervalKind::GreenIntractable)) == "green_intractable");
}
