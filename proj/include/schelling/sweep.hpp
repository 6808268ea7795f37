#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "schelling/classify.hpp"
#include "schelling/dynamic.hpp"
#include "schelling/dynamics.hpp"
#include "schelling/rational.hpp"
#include "schelling/structure.hpp"

namespace schelling {

// Empirical outcome of a single finished-or-capped run, judged with band
// delta.  Precedence: Total > AE > Static > Unfinished > Mixed.
enum class EmpiricalLabel : std::uint8_t {
  GreenTotal = 0,
  RedTotal = 1,
  GreenAE = 2,
  RedAE = 3,
  Static = 4,
  Mixed = 5,
  Unfinished = 6,
};

const char* empirical_label_name(EmpiricalLabel label);

EmpiricalLabel label_outcome(const RunSummary& summary, double delta);

// Injective 64-bit seed derivation: distinct (i, j, rep) tuples under one
// base produce distinct seeds, and changing the base rescrambles all of them.
std::uint64_t seed_for_cell(std::uint64_t base_seed, std::int64_t i, std::int64_t j,
                            std::int64_t rep);

struct SweepConfig {
  double rho = 0.5;
  std::int64_t w = 30;
  std::int64_t n = 50000;
  Dynamic dynamic = Dynamic::selective();
  std::int64_t grid = 32;        // cells per axis
  std::int64_t replicates = 3;   // runs per cell
  std::uint64_t base_seed = 1;
  std::int64_t max_steps = -1;   // -1: the run default (50 n)
  double delta = 0.05;           // outcome band
  std::int64_t threads = 0;      // 0: hardware concurrency
};

struct ReplicateResult {
  std::uint64_t seed = 0;
  EmpiricalLabel label = EmpiricalLabel::Mixed;
  double final_green_frac = 0.0;
  double changed_frac = 0.0;
  std::int64_t steps = 0;
  Termination termination;
};

struct CellResult {
  Rational tau_g{1, 2};
  Rational tau_r{1, 2};
  std::vector<ReplicateResult> reps;
  EmpiricalLabel majority = EmpiricalLabel::Mixed;
  Prediction predicted;
  double mean_final_green = 0.0;
  double mean_changed = 0.0;
  double mean_steps = 0.0;
  std::string error;  // non-empty if this cell failed; reps then empty
};

struct OverlayLine {
  std::string name;
  bool vertical = false;  // vertical: fixed tau_r; horizontal: fixed tau_g
  double position = 0.0;
};

struct SweepGrid {
  SweepConfig config;
  // Row-major: cells[i * grid + j] holds tau_g = (2i+1)/(2 grid),
  // tau_r = (2j+1)/(2 grid).
  std::vector<CellResult> cells;
  std::vector<OverlayLine> lines;
  // Domination boundary h(tau_g, tau_r) = (1-rho)/rho, one (tau_r, tau_g)
  // point per vertical grid line where the root exists.
  std::vector<std::pair<double, double>> domination_curve;

  std::int64_t definitive_cells = 0;  // classifier gave a proved label
  std::int64_t agreeing_cells = 0;

  struct Disagreement {
    std::int64_t i = 0;
    std::int64_t j = 0;
    EmpiricalLabel majority = EmpiricalLabel::Mixed;
    Outcome predicted = Outcome::StaticAE;
    double boundary_distance = 0.0;  // to the nearest overlay line or curve point
  };
  std::vector<Disagreement> disagreements;

  double agreement() const {
    return definitive_cells > 0
               ? static_cast<double>(agreeing_cells) / static_cast<double>(definitive_cells)
               : 1.0;
  }
};

// True when the majority empirical label is consistent with a proved
// classifier outcome; total takeover counts as compatible with almost-
// everywhere takeover of the same colour.
bool labels_compatible(Outcome predicted, EmpiricalLabel majority);

// The marked lines of the landscape maps: kappa_r, 1/2, mu_r and
// 1 - rho/2 vertically (tau_r axis); rho/2, kappa_g, 1/2 and mu_g
// horizontally (tau_g axis).
std::vector<OverlayLine> analytic_overlays(double rho);

// Points (x, y) with h(y, x) = (1-rho)/rho, one per requested x where the
// root exists in (0,1); h is strictly decreasing in its first argument, so
// the root is unique.
std::vector<std::pair<double, double>> domination_boundary(double rho,
                                                           const std::vector<double>& xs);

// Simulates every (cell, replicate) on a worker pool.  Output is a pure
// function of the config: cell seeds are derived, not drawn, so the thread
// count never changes any number in the result.
SweepGrid run_sweep(const SweepConfig& config);

// One row per (cell, replicate):
// tau_r,tau_g,rep,seed,outcome,final_green_frac,changed_frac,steps,termination,predicted
std::string sweep_csv(const SweepGrid& grid);

// Key-value digest: config echo, label counts, prediction agreement,
// per-disagreement distances, overlay positions.
std::string sweep_summary(const SweepGrid& grid);

}  // namespace schelling
