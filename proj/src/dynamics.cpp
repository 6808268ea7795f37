#include "schelling/dynamics.hpp"

#include <stdexcept>
#include <unordered_map>

#include "schelling/harmony.hpp"

namespace schelling {

namespace {

// Two independent multiplicative hashes over the colour array, used as a
// 128-bit fingerprint for synchronous cycle detection.  Equal configurations
// always hash equal; a false match needs both 64-bit halves to collide.
struct StateHash {
  std::uint64_t a;
  std::uint64_t b;
};

StateHash hash_state(const std::vector<Color>& colors) {
  std::uint64_t a = 1469598103934665603ULL;   // FNV-1a offset basis
  std::uint64_t b = 0x2545F4914F6CDD1DULL;
  for (const Color c : colors) {
    a = (a ^ static_cast<std::uint64_t>(c)) * 1099511628211ULL;
    b = b * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(c) + 1;
  }
  return {a, b};
}

}  // namespace

const char* termination_name(TerminationKind k) {
  switch (k) {
    case TerminationKind::Finished: return "finished";
    case TerminationKind::StepCapReached: return "step-cap";
    case TerminationKind::CycleDetected: return "cycle";
  }
  return "?";
}

std::optional<ChangeEvent> step_selective(Ring& ring, Rng& rng, std::int64_t t) {
  if (ring.hopeful().empty()) return std::nullopt;
  const std::int64_t x = ring.hopeful().sample(rng);
  ring.flip(x);
  return ChangeEvent{t, static_cast<std::int32_t>(x), ring.color(x)};
}

std::optional<ChangeEvent> step_incremental(Ring& ring, Rng& rng, std::int64_t t) {
  if (ring.unhappy().empty()) return std::nullopt;
  const std::int64_t x = ring.unhappy().sample(rng);
  ring.flip(x);
  return ChangeEvent{t, static_cast<std::int32_t>(x), ring.color(x)};
}

std::vector<ChangeEvent> step_synchronous(Ring& ring, std::int64_t t) {
  // Snapshot first: every node unhappy *now* flips, judged on the current
  // configuration, regardless of what earlier flips in the batch do.
  const std::vector<std::int32_t> batch = ring.unhappy().items();
  ring.bulk_flip(batch);
  std::vector<ChangeEvent> events;
  events.reserve(batch.size());
  for (const std::int32_t x : batch) events.push_back({t, x, ring.color(x)});
  return events;
}

std::optional<ChangeEvent> step_perturbed(Ring& ring, Rng& rng, double epsilon, std::int64_t t) {
  // Draw order: first the error coin, then (in whichever branch) the node.
  if (uniform01(rng) < epsilon) {
    const std::int64_t x = static_cast<std::int64_t>(uniform_below(rng, ring.n()));
    ring.flip(x);
    return ChangeEvent{t, static_cast<std::int32_t>(x), ring.color(x)};
  }
  if (ring.unhappy().empty()) return std::nullopt;  // counted no-op
  const std::int64_t x = ring.unhappy().sample(rng);
  ring.flip(x);
  return ChangeEvent{t, static_cast<std::int32_t>(x), ring.color(x)};
}

RunRecord run_dynamic(Ring& ring, const Dynamic& dynamic, Rng& rng, const RunOptions& options) {
  const std::int64_t n = ring.n();
  const std::int64_t cap = options.max_steps < 0 ? 50 * n : options.max_steps;

  RunRecord rec(ring.scenario());
  rec.n = n;
  rec.w = ring.w();
  rec.dynamic = dynamic;
  rec.max_steps = cap;
  rec.initial_green = ring.green_total();
  if (options.log_events) rec.initial_colors = ring.colors();

  // changed_nodes counts distinct nodes that flipped at least once, so a node
  // that oscillates back to its initial colour still counts as changed.
  std::vector<std::uint8_t> touched(n, 0);
  std::int64_t changed_count = 0;
  const auto note = [&](std::int64_t x) {
    if (!touched[x]) {
      touched[x] = 1;
      ++changed_count;
    }
  };

  std::optional<HarmonyMonitor> monitor;
  if (options.harmony_monitor) {
    if (dynamic.kind != DynamicKind::Selective)
      throw std::invalid_argument("harmony monitor applies to the selective dynamic only");
    const auto chi = harmony_chi(ring.scenario(), ring.w());
    if (!chi)
      throw std::invalid_argument("no harmony weight exists for this scenario and window");
    monitor.emplace(ring, *chi);
  }

  // Synchronous runs are deterministic, so a repeated configuration proves a
  // cycle.  Fingerprints of every visited state, keyed by the first hash
  // half, with the second half stored for confirmation.
  std::unordered_map<std::uint64_t, std::pair<std::uint64_t, std::int64_t>> seen;
  if (dynamic.kind == DynamicKind::Synchronous) {
    const StateHash h = hash_state(ring.colors());
    seen.emplace(h.a, std::make_pair(h.b, std::int64_t{0}));
  }

  bool finished = false;
  bool cycled = false;
  std::int64_t cycle_period = 0;
  std::int64_t steps = 0;

  while (steps < cap && !finished && !cycled) {
    const std::int64_t t = steps + 1;
    switch (dynamic.kind) {
      case DynamicKind::Selective: {
        if (ring.hopeful().empty()) {
          finished = true;
          break;
        }
        const std::int64_t x = ring.hopeful().sample(rng);
        __int128 before = 0;
        if (monitor) before = monitor->window_contribution(ring, x);
        ring.flip(x);
        if (monitor) {
          const __int128 after = monitor->window_contribution(ring, x);
          if (!(after > before))
            throw std::logic_error("harmony score failed to strictly increase on a selective flip");
          monitor->add(after - before);
        }
        note(x);
        if (options.log_events)
          rec.events.push_back({t, static_cast<std::int32_t>(x), ring.color(x)});
        ++steps;
        break;
      }
      case DynamicKind::Incremental: {
        if (ring.unhappy().empty()) {
          finished = true;
          break;
        }
        const std::int64_t x = ring.unhappy().sample(rng);
        ring.flip(x);
        note(x);
        if (options.log_events)
          rec.events.push_back({t, static_cast<std::int32_t>(x), ring.color(x)});
        ++steps;
        break;
      }
      case DynamicKind::Synchronous: {
        if (ring.unhappy().empty()) {
          finished = true;
          break;
        }
        const std::vector<std::int32_t> batch = ring.unhappy().items();
        ring.bulk_flip(batch);
        for (const std::int32_t x : batch) {
          note(x);
          if (options.log_events) rec.events.push_back({t, x, ring.color(x)});
        }
        ++steps;
        const StateHash h = hash_state(ring.colors());
        const auto [it, inserted] = seen.emplace(h.a, std::make_pair(h.b, t));
        if (!inserted && it->second.first == h.b) {
          cycled = true;
          cycle_period = t - it->second.second;
        }
        break;
      }
      case DynamicKind::PerturbedIncremental: {
        std::optional<std::int64_t> x;
        if (uniform01(rng) < dynamic.epsilon) {
          x = static_cast<std::int64_t>(uniform_below(rng, static_cast<std::uint64_t>(n)));
        } else if (!ring.unhappy().empty()) {
          x = ring.unhappy().sample(rng);
        }
        if (x) {
          ring.flip(*x);
          note(*x);
          if (options.log_events)
            rec.events.push_back({t, static_cast<std::int32_t>(*x), ring.color(*x)});
        }
        ++steps;  // a no-op step still counts
        break;
      }
    }
  }

  rec.steps = steps;
  rec.final_green = ring.green_total();
  rec.changed_nodes = changed_count;
  if (finished)
    rec.termination = {TerminationKind::Finished, 0};
  else if (cycled)
    rec.termination = {TerminationKind::CycleDetected, cycle_period};
  else
    rec.termination = {TerminationKind::StepCapReached, 0};
  if (options.log_events) rec.final_colors = ring.colors();
  return rec;
}

RunRecord simulate(const Scenario& scenario, std::int64_t n, std::int64_t w, std::uint64_t seed,
                   const Dynamic& dynamic, const RunOptions& options) {
  Rng rng(seed);
  Ring ring = Ring::random(scenario, n, w, rng);
  RunRecord rec = run_dynamic(ring, dynamic, rng, options);
  rec.seed = seed;
  return rec;
}

std::vector<Color> replay(const RunRecord& record) {
  if (record.initial_colors.empty())
    throw std::logic_error("replay: record has no stored initial colours (event logging was off)");
  std::vector<Color> colors = record.initial_colors;
  const auto n = static_cast<std::int64_t>(colors.size());
  for (const ChangeEvent& ev : record.events) {
    if (ev.node < 0 || ev.node >= n) throw std::logic_error("replay: event node out of range");
    colors[ev.node] = ev.new_color;
  }
  return colors;
}

}  // namespace schelling
