#pragma once

#include <cstdint>
#include <vector>

#include "schelling/dynamics.hpp"
#include "schelling/ring.hpp"
#include "schelling/scenario.hpp"

namespace schelling {

// Interval detectors.  Stable and intractable intervals always have length
// exactly w+1; firewalls are maximal monochromatic runs of length >= w+1.
// Intervals are reported by start index and may wrap around the ring;
// overlapping qualifying windows are all reported.

enum class IntervalKind : std::uint8_t {
  StablyGreen = 0,
  StablyRed = 1,
  GreenIntractable = 2,
  RedIntractable = 3,
  GreenFirewall = 4,
  RedFirewall = 5,
};

const char* interval_kind_name(IntervalKind kind);

struct IntervalReport {
  IntervalKind kind;
  std::int64_t start = 0;   // first node of the interval
  std::int64_t length = 0;  // node count, walking forward from start

  friend bool operator==(const IntervalReport& a, const IntervalReport& b) {
    return a.kind == b.kind && a.start == b.start && a.length == b.length;
  }
};

// Length-(w+1) windows [a, a+w] whose colour count C satisfies
// den*C >= num*(2w+1), i.e. C >= tau*(2w+1) exactly.  Every node of such a
// window sees the whole window inside its neighbourhood, so its members of
// that colour stay happy no matter what happens outside.
std::vector<IntervalReport> find_stable_intervals(const Ring& ring, Color color);

// Length-(w+1) windows J whose colour count satisfies C < tau*(2w+1) - (w+1)
// exactly (den*C < num*(2w+1) - den*(w+1)).  No opposite-colour node inside
// such a window can be hopeful, whatever the w outside nodes do, so under
// hopeful-only flips the window's deficit can never recover.
std::vector<IntervalReport> find_intractable_intervals(const Ring& ring, Color color);

// Maximal runs of >= w+1 consecutive nodes of the given colour, wrap-around
// aware.  A single-colour ring is reported as one run of length n.
std::vector<IntervalReport> find_firewalls(const Ring& ring, Color color);

struct Census {
  std::int64_t happy_green = 0;
  std::int64_t unhappy_green = 0;  // total unhappy (hopeful included)
  std::int64_t hopeful_green = 0;
  std::int64_t happy_red = 0;
  std::int64_t unhappy_red = 0;
  std::int64_t hopeful_red = 0;
  std::int64_t stably_green_intervals = 0;
  std::int64_t stably_red_intervals = 0;
  std::int64_t green_intractable_intervals = 0;
  std::int64_t red_intractable_intervals = 0;
};

// One pass over the node statuses plus one sliding-window pass shared by all
// four interval counters.  happy + unhappy = colour total; hopeful <= unhappy.
Census census(const Ring& ring);

struct RunSummary {
  double final_green_fraction = 0.0;
  double changed_fraction = 0.0;  // distinct nodes ever flipped / n
  std::int64_t steps = 0;
  Termination termination;
};

RunSummary run_statistics(const RunRecord& record);

}  // namespace schelling
