#include "doctest.h"
#include "schelling/serialize.hpp"

#include <stdexcept>
#include <string>
#include <vector>

#include "schelling/dynamics.hpp"
#include "schelling/ring.hpp"
#include "schelling/rng.hpp"

using namespace schelling;

namespace {

Scenario sc(double rho, Rational tg, Rational tr) { return Scenario(rho, tg, tr); }

void check_records_equal(const RunRecord& a, const RunRecord& b) {
  CHECK(a.n == b.n);
  CHECK(a.w == b.w);
  CHECK(a.seed == b.seed);
  CHECK(a.scenario.rho == b.scenario.rho);
  CHECK(a.scenario.tau_g == b.scenario.tau_g);
  CHECK(a.scenario.tau_r == b.scenario.tau_r);
  CHECK(a.dynamic.kind == b.dynamic.kind);
  CHECK(a.dynamic.epsilon == b.dynamic.epsilon);
  CHECK(a.max_steps == b.max_steps);
  CHECK(a.initial_green == b.initial_green);
  CHECK(a.final_green == b.final_green);
  CHECK(a.changed_nodes == b.changed_nodes);
  CHECK(a.steps == b.steps);
  CHECK(a.termination.kind == b.termination.kind);
  CHECK(a.termination.cycle_period == b.termination.cycle_period);
  CHECK(a.initial_colors == b.initial_colors);
  CHECK(a.final_colors == b.final_colors);
  REQUIRE(a.events.size() == b.events.size());
  for (std::size_t i = 0; i < a.events.size(); ++i) {
    CHECK(a.events[i].time == b.events[i].time);
    CHECK(a.events[i].node == b.events[i].node);
    CHECK(a.events[i].new_color == b.events[i].new_color);
  }
}

}  // namespace

TEST_CASE("ring text round-trips colours, scenario, and seed") {
  const Scenario s = sc(0.42, Rational(2, 5), Rational(7, 10));
  Rng rng(314159);
  const Ring ring = Ring::random(s, 101, 3, rng);

  const std::string text = ring_to_text(ring, 314159);
  const ParsedRing parsed = ring_from_text(text);
  CHECK(parsed.seed == 314159);
  CHECK(parsed.ring.n() == 101);
  CHECK(parsed.ring.w() == 3);
  CHECK(parsed.ring.scenario().rho == 0.42);
  CHECK(parsed.ring.scenario().tau_g == Rational(2, 5));
  CHECK(parsed.ring.scenario().tau_r == Rational(7, 10));
  CHECK(parsed.ring.colors() == ring.colors());
  // Re-serialising reproduces the text byte for byte.
  CHECK(ring_to_text(parsed.ring, parsed.seed) == text);

  // Seed defaults to 0 when not supplied.
  CHECK(ring_from_text(ring_to_text(ring)).seed == 0);
}

TEST_CASE("ring text survives awkward densities and uniform colourings") {
  // Shortest-round-trip doubles come back exactly.
  for (double rho : {0.1, 1.0 / 3.0, 0.9999999999999999, 0.123456789012345}) {
    const Scenario s = sc(rho, Rational(1, 3), Rational(1, 3));
    Rng rng(7);
    const Ring ring = Ring::random(s, 9, 2, rng);
    CHECK(ring_from_text(ring_to_text(ring)).ring.scenario().rho == rho);
  }
  // A uniform ring is one run.
  const Scenario s = sc(0.5, Rational(1, 2), Rational(1, 2));
  const Ring uni(s, 7, 1, std::vector<Color>(7, Color::Green));
  const std::string text = ring_to_text(uni);
  CHECK(text.find("colors G7\n") != std::string::npos);
  CHECK(ring_from_text(text).ring.colors() == uni.colors());
}

TEST_CASE("run records round-trip under every selection rule") {
  const Scenario s = sc(0.5, Rational(2, 5), Rational(3, 5));
  for (const Dynamic& d : {Dynamic::selective(), Dynamic::incremental(),
                           Dynamic::perturbed(0.05)}) {
    RunOptions opt;
    opt.max_steps = 60;
    const RunRecord rec = simulate(s, 48, 2, 90210, d, opt);
    const std::string text = record_to_text(rec);
    const RunRecord back = record_from_text(text);
    check_records_equal(rec, back);
    CHECK(record_to_text(back) == text);
    CHECK(replay(back) == back.final_colors);
  }
  // Epsilon appears in the dynamic line and parses back to the same double.
  const RunRecord pert = simulate(s, 30, 1, 5, Dynamic::perturbed(0.05), {});
  CHECK(record_to_text(pert).find("dynamic perturbed:0.05\n") != std::string::npos);
  CHECK(record_from_text(record_to_text(pert)).dynamic.epsilon == 0.05);
}

TEST_CASE("a synchronous cycle serialises its period") {
  // Alternating colours with tau = 2/3 blink forever under synchronous
  // updates; the record carries the detected period.
  const Scenario s = sc(0.5, Rational(2, 3), Rational(2, 3));
  std::vector<Color> colors;
  for (int i = 0; i < 6; ++i) colors.push_back(i % 2 ? Color::Red : Color::Green);
  Ring ring(s, 6, 1, colors);
  Rng rng(1);
  const RunRecord rec = run_dynamic(ring, Dynamic::synchronous(), rng);
  REQUIRE(rec.termination.kind == TerminationKind::CycleDetected);
  REQUIRE(rec.termination.cycle_period == 2);

  const std::string text = record_to_text(rec);
  CHECK(text.find("termination cycle:2\n") != std::string::npos);
  const RunRecord back = record_from_text(text);
  check_records_equal(rec, back);
  CHECK(replay(back) == back.final_colors);
}

TEST_CASE("records without event logs stay lean") {
  const Scenario s = sc(0.5, Rational(2, 5), Rational(3, 5));
  RunOptions opt;
  opt.log_events = false;
  const RunRecord rec = simulate(s, 64, 2, 1234, Dynamic::selective(), opt);
  const std::string text = record_to_text(rec);
  CHECK(text.find("initial ") == std::string::npos);
  CHECK(text.find("events ") == std::string::npos);

  const RunRecord back = record_from_text(text);
  CHECK(back.initial_colors.empty());
  CHECK(back.final_colors.empty());
  CHECK(back.events.empty());
  CHECK(back.final_green == rec.final_green);
  CHECK(back.steps == rec.steps);
  CHECK_THROWS_AS(replay(back), std::logic_error);
}

TEST_CASE("malformed ring text is rejected with a pointed message") {
  const Scenario s = sc(0.5, Rational(1, 2), Rational(1, 2));
  Rng rng(3);
  const std::string good = ring_to_text(Ring::random(s, 12, 2, rng), 3);

  auto broken = [&](const std::string& from, const std::string& to) {
    std::string text = good;
    const std::size_t at = text.find(from);
    REQUIRE(at != std::string::npos);
    text.replace(at, from.size(), to);
    return text;
  };

  CHECK_THROWS_AS(ring_from_text(broken("ring v1", "ring v2")), std::invalid_argument);
  CHECK_THROWS_AS(ring_from_text(broken("n 12", "nodes 12")), std::invalid_argument);
  CHECK_THROWS_AS(ring_from_text(broken("n 12", "n twelve")), std::invalid_argument);
  CHECK_THROWS_AS(ring_from_text(broken("end", "fin")), std::invalid_argument);
  // Truncation: drop everything from "colors" on.
  CHECK_THROWS_AS(ring_from_text(good.substr(0, good.find("colors"))), std::invalid_argument);

  // Swapped header lines break the fixed key order.
  {
    std::string text = good;
    const std::size_t a = text.find("n 12\n");
    const std::size_t b = text.find("w 2\n");
    REQUIRE(a < b);
    text.replace(a, b + 4 - a, "w 2\nn 12\n");
    CHECK_THROWS_AS(ring_from_text(text), std::invalid_argument);
  }
}

TEST_CASE("malformed colour runs are rejected") {
  const std::string prefix =
      "ring v1\nn 7\nw 1\nseed 0\nrho 0.5\ntau_g 1/2\ntau_r 1/2\ncolors ";
  auto with_colors = [&](const std::string& runs) { return prefix + runs + "\nend\n"; };

  CHECK_NOTHROW(ring_from_text(with_colors("G3 R2 G2")));
  CHECK_THROWS_AS(ring_from_text(with_colors("G3 G2 R2")), std::invalid_argument);  // no alternation
  CHECK_THROWS_AS(ring_from_text(with_colors("G3 R2")), std::invalid_argument);     // sums to 5
  CHECK_THROWS_AS(ring_from_text(with_colors("G6 R2")), std::invalid_argument);     // sums to 8
  CHECK_THROWS_AS(ring_from_text(with_colors("X7")), std::invalid_argument);        // bad letter
  CHECK_THROWS_AS(ring_from_text(with_colors("G")), std::invalid_argument);         // no length
  CHECK_THROWS_AS(ring_from_text(with_colors("G0 R7")), std::invalid_argument);     // empty run
  CHECK_THROWS_AS(ring_from_text(with_colors("G3x R4")), std::invalid_argument);    // trailing junk
}

TEST_CASE("malformed run records are rejected") {
  const Scenario s = sc(0.5, Rational(2, 5), Rational(3, 5));
  const RunRecord rec = simulate(s, 24, 2, 77, Dynamic::incremental(), {});
  const std::string good = record_to_text(rec);

  auto broken = [&](const std::string& from, const std::string& to) {
    std::string text = good;
    const std::size_t at = text.find(from);
    REQUIRE(at != std::string::npos);
    text.replace(at, from.size(), to);
    return text;
  };

  CHECK_THROWS_AS(record_from_text(broken("runrecord v1", "runrecord v2")),
                  std::invalid_argument);
  CHECK_THROWS_AS(record_from_text(broken("dynamic incremental", "dynamic osmotic")),
                  std::invalid_argument);
  CHECK_THROWS_AS(record_from_text(broken("termination", "halt")), std::invalid_argument);

  // Termination variants: take the line as serialised, whatever it was.
  {
    const std::size_t at = good.find("\ntermination ");
    REQUIRE(at != std::string::npos);
    const std::string term = good.substr(at, good.find('\n', at + 1) - at);
    CHECK_THROWS_AS(record_from_text(broken(term, "\ntermination stopped")),
                    std::invalid_argument);
    CHECK_THROWS_AS(record_from_text(broken(term, "\ntermination cycle:x")),
                    std::invalid_argument);
  }

  // Event-block damage, with event lines anchored by their newlines.
  REQUIRE(rec.events.size() >= 2);
  auto event_line = [&](std::size_t i, std::int64_t time, std::int64_t node) {
    return '\n' + std::to_string(time) + ' ' + std::to_string(node) + ' ' +
           (rec.events[i].new_color == Color::Green ? "G\n" : "R\n");
  };
  const std::string ev0 = event_line(0, rec.events[0].time, rec.events[0].node);
  CHECK_THROWS_AS(record_from_text(broken(ev0, ev0.substr(0, ev0.size() - 1) + " junk\n")),
                  std::invalid_argument);
  CHECK_THROWS_AS(record_from_text(broken(ev0, "\nwhat even is this\n")),
                  std::invalid_argument);
  // Send the first event's node out of range (node == n).
  CHECK_THROWS_AS(record_from_text(broken(ev0, event_line(0, rec.events[0].time, 24))),
                  std::invalid_argument);
  // Shift the first event after the second in time.
  CHECK_THROWS_AS(
      record_from_text(broken(ev0, event_line(0, rec.events[1].time + 5, rec.events[0].node))),
      std::invalid_argument);
  CHECK_THROWS_AS(
      record_from_text(broken("\nevents " + std::to_string(rec.events.size()), "\nevents -1")),
      std::invalid_argument);
}
