#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "schelling/dynamic.hpp"
#include "schelling/ring.hpp"
#include "schelling/rng.hpp"
#include "schelling/scenario.hpp"

namespace schelling {

struct ChangeEvent {
  std::int64_t time;      // 1-based step index; synchronous flips share one
  std::int32_t node;
  Color new_color;
};

enum class TerminationKind { Finished, StepCapReached, CycleDetected };

struct Termination {
  TerminationKind kind = TerminationKind::Finished;
  std::int64_t cycle_period = 0;  // set only for CycleDetected
};

const char* termination_name(TerminationKind k);

// One step of each selection rule.  The selective and incremental steps
// return the event performed, or nullopt when no eligible node exists (the
// run is finished).  The synchronous step flips every currently unhappy node
// at once and returns all events; an empty result means finished.  The
// perturbed step always counts as a step: nullopt there means the no-error
// branch found nothing to do.
std::optional<ChangeEvent> step_selective(Ring& ring, Rng& rng, std::int64_t t);
std::optional<ChangeEvent> step_incremental(Ring& ring, Rng& rng, std::int64_t t);
std::vector<ChangeEvent> step_synchronous(Ring& ring, std::int64_t t);
std::optional<ChangeEvent> step_perturbed(Ring& ring, Rng& rng, double epsilon, std::int64_t t);

struct RunOptions {
  std::int64_t max_steps = -1;   // negative: use the default cap of 50*n
  bool log_events = true;        // also snapshots initial and final colours
  bool harmony_monitor = false;  // selective only; throws if no weight exists
};

struct RunRecord {
  Scenario scenario;
  std::int64_t n = 0;
  std::int64_t w = 0;
  std::uint64_t seed = 0;
  Dynamic dynamic;
  std::int64_t max_steps = 0;

  std::vector<ChangeEvent> events;    // populated when log_events
  std::vector<Color> initial_colors;  // likewise
  std::vector<Color> final_colors;    // likewise

  std::int64_t initial_green = 0;
  std::int64_t final_green = 0;
  std::int64_t changed_nodes = 0;  // distinct nodes that flipped at least once
  std::int64_t steps = 0;          // steps executed (synchronous: rounds)
  Termination termination;

  explicit RunRecord(const Scenario& s) : scenario(s) {}

  double final_green_fraction() const {
    return static_cast<double>(final_green) / static_cast<double>(n);
  }
  double changed_fraction() const {
    return static_cast<double>(changed_nodes) / static_cast<double>(n);
  }
};

// Drive `ring` under the given dynamic until it finishes, a synchronous
// cycle is detected, or the step cap is hit.  Draws (for the random
// dynamics) come from `rng` in a documented order, so a run is a pure
// function of (ring state, dynamic, rng state, options).  The record's seed
// field is left at 0; simulate() fills it.
RunRecord run_dynamic(Ring& ring, const Dynamic& dynamic, Rng& rng, const RunOptions& options = {});

// Standard end-to-end entry point: one generator seeded with `seed` draws
// the initial colours (n words, node 0 first) and then drives the dynamic.
// Identical arguments produce identical records, bit for bit.
RunRecord simulate(const Scenario& scenario, std::int64_t n, std::int64_t w, std::uint64_t seed,
                   const Dynamic& dynamic, const RunOptions& options = {});

// Apply a record's event log to its stored initial colours.  Returns the
// reconstructed final colouring; throws std::logic_error if the record was
// produced with event logging off or an event is out of range.
std::vector<Color> replay(const RunRecord& record);

}  // namespace schelling
