#include "schelling/structure.hpp"

#include <algorithm>

namespace schelling {

const char* interval_kind_name(IntervalKind kind) {
  switch (kind) {
    case IntervalKind::StablyGreen: return "stably_green";
    case IntervalKind::StablyRed: return "stably_red";
    case IntervalKind::GreenIntractable: return "green_intractable";
    case IntervalKind::RedIntractable: return "red_intractable";
    case IntervalKind::GreenFirewall: return "green_firewall";
    case IntervalKind::RedFirewall: return "red_firewall";
  }
  return "?";
}

namespace {

// Walk every length-(w+1) window [a, a+w] once, handing the green count to
// `visit(a, greens)`.  Shared by the detectors and census.
template <typename Visit>
void for_each_short_window(const Ring& ring, Visit visit) {
  const std::int64_t n = ring.n();
  const std::int64_t len = ring.w() + 1;
  const auto& colors = ring.colors();
  std::int64_t greens = 0;
  for (std::int64_t i = 0; i < len; ++i) greens += colors[i] == Color::Green;
  for (std::int64_t a = 0; a < n; ++a) {
    visit(a, greens);
    greens -= colors[a] == Color::Green;
    greens += colors[(a + len) % n] == Color::Green;
  }
}

struct WindowTests {
  // den*C >= num*(2w+1) and den*C < num*(2w+1) - den*(w+1), cross-multiplied
  // so everything stays in exact integers.
  std::int64_t den_g, num_g, den_r, num_r;
  std::int64_t wide, len;

  explicit WindowTests(const Ring& ring)
      : den_g(ring.scenario().tau_g.den()),
        num_g(ring.scenario().tau_g.num()),
        den_r(ring.scenario().tau_r.den()),
        num_r(ring.scenario().tau_r.num()),
        wide(ring.window()),
        len(ring.w() + 1) {}

  bool stable(Color c, std::int64_t greens) const {
    if (c == Color::Green) return den_g * greens >= num_g * wide;
    return den_r * (len - greens) >= num_r * wide;
  }
  bool intractable(Color c, std::int64_t greens) const {
    if (c == Color::Green) return den_g * greens < num_g * wide - den_g * len;
    return den_r * (len - greens) < num_r * wide - den_r * len;
  }
};

}  // namespace

std::vector<IntervalReport> find_stable_intervals(const Ring& ring, Color color) {
  const WindowTests tests(ring);
  const IntervalKind kind = color == Color::Green ? IntervalKind::StablyGreen : IntervalKind::StablyRed;
  std::vector<IntervalReport> out;
  for_each_short_window(ring, [&](std::int64_t a, std::int64_t greens) {
    if (tests.stable(color, greens)) out.push_back({kind, a, tests.len});
  });
  return out;
}

std::vector<IntervalReport> find_intractable_intervals(const Ring& ring, Color color) {
  const WindowTests tests(ring);
  const IntervalKind kind =
      color == Color::Green ? IntervalKind::GreenIntractable : IntervalKind::RedIntractable;
  std::vector<IntervalReport> out;
  for_each_short_window(ring, [&](std::int64_t a, std::int64_t greens) {
    if (tests.intractable(color, greens)) out.push_back({kind, a, tests.len});
  });
  return out;
}

std::vector<IntervalReport> find_firewalls(const Ring& ring, Color color) {
  const std::int64_t n = ring.n();
  const auto& colors = ring.colors();
  const IntervalKind kind =
      color == Color::Green ? IntervalKind::GreenFirewall : IntervalKind::RedFirewall;
  std::vector<IntervalReport> out;

  std::int64_t first_break = -1;  // a node whose colour differs from its left neighbour
  for (std::int64_t x = 0; x < n; ++x) {
    if (colors[x] != colors[(x + n - 1) % n]) {
      first_break = x;
      break;
    }
  }
  if (first_break < 0) {
    if (colors[0] == color) out.push_back({kind, 0, n});
    return out;
  }

  std::int64_t consumed = 0;
  std::int64_t start = first_break;
  while (consumed < n) {
    const Color run_color = colors[start];
    std::int64_t length = 1;
    while (length < n && colors[(start + length) % n] == run_color) ++length;
    if (run_color == color && length >= ring.w() + 1) out.push_back({kind, start % n, length});
    consumed += length;
    start = (start + length) % n;
  }
  std::sort(out.begin(), out.end(),
            [](const IntervalReport& a, const IntervalReport& b) { return a.start < b.start; });
  return out;
}

Census census(const Ring& ring) {
  Census c;
  const std::int64_t n = ring.n();
  for (std::int64_t x = 0; x < n; ++x) {
    const bool green = ring.color(x) == Color::Green;
    switch (ring.status(x)) {
      case NodeStatus::Happy:
        ++(green ? c.happy_green : c.happy_red);
        break;
      case NodeStatus::UnhappyHopeless:
        ++(green ? c.unhappy_green : c.unhappy_red);
        break;
      case NodeStatus::Hopeful:
        ++(green ? c.unhappy_green : c.unhappy_red);
        ++(green ? c.hopeful_green : c.hopeful_red);
        break;
    }
  }
  const WindowTests tests(ring);
  for_each_short_window(ring, [&](std::int64_t, std::int64_t greens) {
    c.stably_green_intervals += tests.stable(Color::Green, greens);
    c.stably_red_intervals += tests.stable(Color::Red, greens);
    c.green_intractable_intervals += tests.intractable(Color::Green, greens);
    c.red_intractable_intervals += tests.intractable(Color::Red, greens);
  });
  return c;
}

RunSummary run_statistics(const RunRecord& record) {
  RunSummary s;
  s.final_green_fraction = record.final_green_fraction();
  s.changed_fraction = record.changed_fraction();
  s.steps = record.steps;
  s.termination = record.termination;
  return s;
}

}  // namespace schelling
