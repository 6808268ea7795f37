#include "schelling/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <array>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "schelling/format.hpp"
#include "schelling/numerics.hpp"
#include "schelling/rng.hpp"
#include "schelling/thresholds.hpp"

namespace schelling {

const char* empirical_label_name(EmpiricalLabel label) {
  switch (label) {
    case EmpiricalLabel::GreenTotal: return "green_total";
    case EmpiricalLabel::RedTotal: return "red_total";
    case EmpiricalLabel::GreenAE: return "green_ae";
    case EmpiricalLabel::RedAE: return "red_ae";
    case EmpiricalLabel::Static: return "static";
    case EmpiricalLabel::Mixed: return "mixed";
    case EmpiricalLabel::Unfinished: return "unfinished";
  }
  return "?";
}

EmpiricalLabel label_outcome(const RunSummary& summary, double delta) {
  if (!(delta > 0.0 && delta < 0.5)) throw std::invalid_argument("delta must be in (0, 1/2)");
  const double green = summary.final_green_fraction;
  if (green == 1.0) return EmpiricalLabel::GreenTotal;
  if (green == 0.0) return EmpiricalLabel::RedTotal;
  if (green >= 1.0 - delta) return EmpiricalLabel::GreenAE;
  if (green <= delta) return EmpiricalLabel::RedAE;
  if (summary.changed_fraction <= delta) return EmpiricalLabel::Static;
  if (summary.termination.kind != TerminationKind::Finished) return EmpiricalLabel::Unfinished;
  return EmpiricalLabel::Mixed;
}

std::uint64_t seed_for_cell(std::uint64_t base_seed, std::int64_t i, std::int64_t j,
                            std::int64_t rep) {
  if (i < 0 || j < 0 || rep < 0 || i >= (1 << 20) || j >= (1 << 20) || rep >= (1 << 20))
    throw std::invalid_argument("seed_for_cell: indices must be in [0, 2^20)");
  const std::uint64_t packed = (static_cast<std::uint64_t>(i) << 40) |
                               (static_cast<std::uint64_t>(j) << 20) |
                               static_cast<std::uint64_t>(rep);
  // Both mixes are bijections, so distinct tuples cannot collide under a
  // fixed base.
  return mix64(base_seed ^ mix64(packed));
}

std::vector<OverlayLine> analytic_overlays(double rho) {
  const ThresholdSet t = compute_thresholds(rho);
  return {
      {"kappa_r", true, t.kappa_r},
      {"half", true, 0.5},
      {"mu_r", true, t.mu_r},
      {"one_minus_half_rho", true, 1.0 - 0.5 * rho},
      {"half_rho", false, 0.5 * rho},
      {"kappa_g", false, t.kappa_g},
      {"half", false, 0.5},
      {"mu_g", false, t.mu_g},
  };
}

std::vector<std::pair<double, double>> domination_boundary(double rho,
                                                           const std::vector<double>& xs) {
  std::vector<std::pair<double, double>> curve;
  const double target = std::log((1.0 - rho) / rho);
  for (const double x : xs) {
    const auto fn = [&](double y) { return std::log(eval_h(y, x)) - target; };
    const double lo = 1e-9;
    const double hi = 1.0 - 1e-9;
    if (fn(lo) * fn(hi) > 0.0) continue;
    curve.emplace_back(x, bisect(fn, lo, hi, 1e-10));
  }
  return curve;
}

bool labels_compatible(Outcome predicted, EmpiricalLabel majority) {
  switch (predicted) {
    case Outcome::StaticAE:
      return majority == EmpiricalLabel::Static;
    case Outcome::GreenTakeoverAE:
    case Outcome::GreenTotal:
      return majority == EmpiricalLabel::GreenTotal || majority == EmpiricalLabel::GreenAE;
    case Outcome::RedTakeoverAE:
    case Outcome::RedTotal:
      return majority == EmpiricalLabel::RedTotal || majority == EmpiricalLabel::RedAE;
    default:
      return false;
  }
}

namespace {

bool is_definitive(Outcome o) {
  switch (o) {
    case Outcome::StaticAE:
    case Outcome::GreenTakeoverAE:
    case Outcome::RedTakeoverAE:
    case Outcome::GreenTotal:
    case Outcome::RedTotal:
      return true;
    default:
      return false;
  }
}

void run_cell(const SweepConfig& config, std::int64_t i, std::int64_t j, CellResult& cell) {
  cell.tau_g = Rational(2 * i + 1, 2 * config.grid);
  cell.tau_r = Rational(2 * j + 1, 2 * config.grid);
  try {
    const Scenario scenario(config.rho, cell.tau_g, cell.tau_r);
    cell.predicted = classify(config.rho, cell.tau_g.to_double(), cell.tau_r.to_double(),
                              config.dynamic.kind);
    cell.reps.reserve(config.replicates);
    std::array<std::int64_t, 7> counts{};
    for (std::int64_t rep = 0; rep < config.replicates; ++rep) {
      const std::uint64_t seed = seed_for_cell(config.base_seed, i, j, rep);
      RunOptions options;
      options.log_events = false;
      options.max_steps = config.max_steps;
      const RunRecord record = simulate(scenario, config.n, config.w, seed, config.dynamic, options);
      const RunSummary summary = run_statistics(record);
      ReplicateResult rr;
      rr.seed = seed;
      rr.label = label_outcome(summary, config.delta);
      rr.final_green_frac = summary.final_green_fraction;
      rr.changed_frac = summary.changed_fraction;
      rr.steps = summary.steps;
      rr.termination = summary.termination;
      ++counts[static_cast<std::size_t>(rr.label)];
      cell.mean_final_green += rr.final_green_frac;
      cell.mean_changed += rr.changed_frac;
      cell.mean_steps += static_cast<double>(rr.steps);
      cell.reps.push_back(rr);
    }
    const double reps = static_cast<double>(config.replicates);
    cell.mean_final_green /= reps;
    cell.mean_changed /= reps;
    cell.mean_steps /= reps;
    // majority label; ties break toward the smaller enum value
    std::size_t best = 0;
    for (std::size_t k = 1; k < counts.size(); ++k)
      if (counts[k] > counts[best]) best = k;
    cell.majority = static_cast<EmpiricalLabel>(best);
  } catch (const std::exception& e) {
    cell.reps.clear();
    cell.error = e.what();
  }
}

void add_overlays(SweepGrid& grid) {
  const SweepConfig& c = grid.config;
  grid.lines = analytic_overlays(c.rho);
  std::vector<double> xs;
  xs.reserve(c.grid);
  for (std::int64_t j = 0; j < c.grid; ++j) xs.push_back(Rational(2 * j + 1, 2 * c.grid).to_double());
  grid.domination_curve = domination_boundary(c.rho, xs);
}

void add_agreement(SweepGrid& grid) {
  const std::int64_t g = grid.config.grid;
  for (std::int64_t i = 0; i < g; ++i) {
    for (std::int64_t j = 0; j < g; ++j) {
      const CellResult& cell = grid.cells[i * g + j];
      if (!cell.error.empty() || !is_definitive(cell.predicted.outcome)) continue;
      ++grid.definitive_cells;
      if (labels_compatible(cell.predicted.outcome, cell.majority)) {
        ++grid.agreeing_cells;
        continue;
      }
      const double x = cell.tau_r.to_double();
      const double y = cell.tau_g.to_double();
      double dist = 2.0;
      for (const OverlayLine& line : grid.lines)
        dist = std::min(dist, std::abs((line.vertical ? x : y) - line.position));
      for (const auto& [cx, cy] : grid.domination_curve)
        dist = std::min(dist, std::hypot(x - cx, y - cy));
      grid.disagreements.push_back({i, j, cell.majority, cell.predicted.outcome, dist});
    }
  }
}

std::string termination_text(const Termination& t) {
  switch (t.kind) {
    case TerminationKind::Finished: return "finished";
    case TerminationKind::StepCapReached: return "cap";
    case TerminationKind::CycleDetected: return "cycle:" + std::to_string(t.cycle_period);
  }
  return "?";
}

}  // namespace

SweepGrid run_sweep(const SweepConfig& config) {
  if (config.grid < 1 || config.grid >= (1 << 20))
    throw std::invalid_argument("sweep: grid must be in [1, 2^20)");
  if (config.replicates < 1 || config.replicates >= (1 << 20))
    throw std::invalid_argument("sweep: replicates must be in [1, 2^20)");
  if (!(config.delta > 0.0 && config.delta < 0.5))
    throw std::invalid_argument("sweep: delta must be in (0, 1/2)");

  SweepGrid out;
  out.config = config;
  const std::int64_t total = config.grid * config.grid;
  out.cells.resize(total);

  std::int64_t threads = config.threads;
  if (threads <= 0) threads = static_cast<std::int64_t>(std::thread::hardware_concurrency());
  threads = std::clamp<std::int64_t>(threads, 1, total);

  std::atomic<std::int64_t> next{0};
  const auto worker = [&]() {
    for (;;) {
      const std::int64_t idx = next.fetch_add(1, std::memory_order_relaxed);
      if (idx >= total) return;
      run_cell(config, idx / config.grid, idx % config.grid, out.cells[idx]);
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::int64_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  add_overlays(out);
  add_agreement(out);
  return out;
}

std::string sweep_csv(const SweepGrid& grid) {
  std::string out =
      "tau_r,tau_g,rep,seed,outcome,final_green_frac,changed_frac,steps,termination,predicted\n";
  const std::int64_t g = grid.config.grid;
  for (std::int64_t i = 0; i < g; ++i) {
    for (std::int64_t j = 0; j < g; ++j) {
      const CellResult& cell = grid.cells[i * g + j];
      const std::string prefix =
          format_double(cell.tau_r.to_double()) + ',' + format_double(cell.tau_g.to_double());
      if (!cell.error.empty()) {
        out += prefix + ",0,0,error,0,0,0,error," + outcome_name(cell.predicted.outcome) + '\n';
        continue;
      }
      for (std::size_t rep = 0; rep < cell.reps.size(); ++rep) {
        const ReplicateResult& rr = cell.reps[rep];
        out += prefix + ',' + std::to_string(rep) + ',' + std::to_string(rr.seed) + ',';
        out += empirical_label_name(rr.label);
        out += ',' + format_double(rr.final_green_frac) + ',' + format_double(rr.changed_frac);
        out += ',' + std::to_string(rr.steps) + ',' + termination_text(rr.termination);
        out += ',';
        out += outcome_name(cell.predicted.outcome);
        out += '\n';
      }
    }
  }
  return out;
}

std::string sweep_summary(const SweepGrid& grid) {
  const SweepConfig& c = grid.config;
  std::string out = "sweep summary\n";
  out += "rho " + format_double(c.rho) + "\n";
  out += "w " + std::to_string(c.w) + "\n";
  out += "n " + std::to_string(c.n) + "\n";
  out += "dynamic " + dynamic_name(c.dynamic) + "\n";
  out += "grid " + std::to_string(c.grid) + "\n";
  out += "replicates " + std::to_string(c.replicates) + "\n";
  out += "base_seed " + std::to_string(c.base_seed) + "\n";
  out += "delta " + format_double(c.delta) + "\n";

  std::array<std::int64_t, 7> majority_counts{};
  std::int64_t failed = 0;
  for (const CellResult& cell : grid.cells) {
    if (!cell.error.empty()) {
      ++failed;
      continue;
    }
    ++majority_counts[static_cast<std::size_t>(cell.majority)];
  }
  for (std::size_t k = 0; k < majority_counts.size(); ++k) {
    out += "cells_";
    out += empirical_label_name(static_cast<EmpiricalLabel>(k));
    out += ' ' + std::to_string(majority_counts[k]) + "\n";
  }
  if (failed > 0) out += "cells_failed " + std::to_string(failed) + "\n";

  out += "definitive_cells " + std::to_string(grid.definitive_cells) + "\n";
  out += "agreeing_cells " + std::to_string(grid.agreeing_cells) + "\n";
  out += "agreement " + format_double(grid.agreement()) + "\n";
  for (const auto& d : grid.disagreements) {
    out += "disagreement tau_r " + format_double(grid.cells[d.i * c.grid + d.j].tau_r.to_double());
    out += " tau_g " + format_double(grid.cells[d.i * c.grid + d.j].tau_g.to_double());
    out += " majority ";
    out += empirical_label_name(d.majority);
    out += " predicted ";
    out += outcome_name(d.predicted);
    out += " boundary_distance " + format_double(d.boundary_distance) + "\n";
  }
  for (const OverlayLine& line : grid.lines) {
    out += "overlay ";
    out += line.vertical ? "vertical " : "horizontal ";
    out += line.name + ' ' + format_double(line.position) + "\n";
  }
  for (const auto& [x, y] : grid.domination_curve)
    out += "domination_point " + format_double(x) + ' ' + format_double(y) + "\n";
  return out;
}

}  // namespace schelling
