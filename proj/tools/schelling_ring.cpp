// Command-line front end: simulate single runs, compute thresholds, classify
// scenarios, probe initial-configuration probabilities, sweep tolerance
// grids, and render SVG figures.
//
// Exit codes: 0 success, 1 usage error, 2 runtime failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "schelling/classify.hpp"
#include "schelling/dynamics.hpp"
#include "schelling/format.hpp"
#include "schelling/harmony.hpp"
#include "schelling/probe.hpp"
#include "schelling/render.hpp"
#include "schelling/ring.hpp"
#include "schelling/serialize.hpp"
#include "schelling/structure.hpp"
#include "schelling/sweep.hpp"
#include "schelling/thresholds.hpp"

namespace {

using namespace schelling;

// Tolerances come in as strings so boundary values stay exact: either a
// decimal ("0.35", up to 9 fractional digits) or a fraction ("7/20").
Rational tolerance_arg(const std::string& text) {
  if (text.find('/') != std::string::npos) return checked_tolerance(Rational::parse(text));
  return parse_tolerance(text);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

struct ScenarioArgs {
  double rho = 0.5;
  std::string tau_g;
  std::string tau_r;

  Scenario build() const { return Scenario(rho, tolerance_arg(tau_g), tolerance_arg(tau_r)); }
};

void add_scenario_flags(CLI::App* cmd, ScenarioArgs& args) {
  cmd->add_option("--rho", args.rho, "initial green density, in (0,1)")->required();
  cmd->add_option("--tau-g", args.tau_g, "green tolerance (decimal or p/q)")->required();
  cmd->add_option("--tau-r", args.tau_r, "red tolerance (decimal or p/q)")->required();
}

void print_census(std::ostream& out, const Census& c) {
  out << "happy_green " << c.happy_green << "\nunhappy_green " << c.unhappy_green
      << "\nhopeful_green " << c.hopeful_green << "\nhappy_red " << c.happy_red
      << "\nunhappy_red " << c.unhappy_red << "\nhopeful_red " << c.hopeful_red
      << "\nstably_green_intervals " << c.stably_green_intervals << "\nstably_red_intervals "
      << c.stably_red_intervals << "\ngreen_intractable_intervals "
      << c.green_intractable_intervals << "\nred_intractable_intervals "
      << c.red_intractable_intervals << "\n";
}

const char* termination_word(const Termination& t) {
  switch (t.kind) {
    case TerminationKind::Finished: return "finished";
    case TerminationKind::StepCapReached: return "cap";
    case TerminationKind::CycleDetected: return "cycle";
  }
  return "?";
}

int run_simulate(const ScenarioArgs& sargs, std::int64_t n, std::int64_t w,
                 const std::string& dynamic_text, std::uint64_t seed, std::int64_t max_steps,
                 const std::string& events, bool harmony, const std::string& out_path) {
  const Scenario scenario = sargs.build();
  const Dynamic dynamic = parse_dynamic(dynamic_text);
  if (harmony && dynamic.kind != DynamicKind::Selective)
    throw CLI::ValidationError("--harmony", "harmony monitoring applies to --dynamic selective only");

  RunOptions options;
  options.max_steps = max_steps;
  options.log_events = events == "on";
  options.harmony_monitor = harmony;

  Rng rng(seed);
  Ring ring = Ring::random(scenario, n, w, rng);
  std::optional<Rational> chi;
  std::optional<Rational> harmony_start;
  if (harmony) {
    chi = harmony_chi(scenario, w);
    if (chi) harmony_start = harmony_index(ring, *chi);
  }
  RunRecord record = run_dynamic(ring, dynamic, rng, options);
  record.seed = seed;

  std::cout << "simulate report\n";
  std::cout << "n " << n << "\nw " << w << "\nrho " << format_double(scenario.rho) << "\ntau_g "
            << scenario.tau_g.str() << "\ntau_r " << scenario.tau_r.str() << "\ndynamic "
            << dynamic_name(dynamic) << "\nseed " << seed << "\n";
  std::cout << "steps " << record.steps << "\ntermination " << termination_word(record.termination);
  if (record.termination.kind == TerminationKind::CycleDetected)
    std::cout << " period " << record.termination.cycle_period;
  std::cout << "\n";
  std::cout << "initial_green " << record.initial_green << "\nfinal_green " << record.final_green
            << "\nchanged_nodes " << record.changed_nodes << "\n";
  std::cout << "final_green_fraction " << format_double(record.final_green_fraction())
            << "\nchanged_fraction " << format_double(record.changed_fraction()) << "\n";
  print_census(std::cout, census(ring));
  if (harmony && chi) {
    std::cout << "harmony_weight " << chi->str() << "\n";
    std::cout << "harmony_start " << harmony_start->str() << "\n";
    std::cout << "harmony_end " << harmony_index(ring, *chi).str() << "\n";
  }
  if (!out_path.empty()) write_output(out_path, record_to_text(record));
  return 0;
}

int run_thresholds(double rho) {
  const ThresholdSet t = compute_thresholds(rho);
  std::cout << "thresholds report\n";
  std::cout << "rho " << format_double(t.rho) << "\n";
  std::cout << "kappa_g " << format_double(t.kappa_g) << "\n";
  std::cout << "kappa_r " << format_double(t.kappa_r) << "\n";
  std::cout << "mu_g " << format_double(t.mu_g) << "\n";
  std::cout << "mu_r " << format_double(t.mu_r) << "\n";
  return 0;
}

int run_classify(const ScenarioArgs& sargs, const std::string& dynamic_text, double band,
                 std::int64_t w) {
  const Scenario scenario = sargs.build();
  const Dynamic dynamic = parse_dynamic(dynamic_text);
  const double tg = scenario.tau_g.to_double();
  const double tr = scenario.tau_r.to_double();
  const ThresholdSet t = compute_thresholds(scenario.rho);
  const DominationResult dom = domination(scenario.rho, tg, tr);
  const Prediction p = classify(scenario.rho, tg, tr, dynamic.kind, band);

  std::cout << "classify report\n";
  std::cout << "rho " << format_double(scenario.rho) << "\ntau_g " << scenario.tau_g.str()
            << "\ntau_r " << scenario.tau_r.str() << "\ndynamic " << dynamic_name(dynamic) << "\n";
  std::cout << "kappa_g " << format_double(t.kappa_g) << "\nkappa_r " << format_double(t.kappa_r)
            << "\nmu_g " << format_double(t.mu_g) << "\nmu_r " << format_double(t.mu_r) << "\n";
  std::cout << "domination ";
  switch (dom.label) {
    case Domination::RedDominating: std::cout << "red"; break;
    case Domination::GreenDominating: std::cout << "green"; break;
    case Domination::Boundary: std::cout << "boundary"; break;
  }
  std::cout << " h " << format_double(dom.h_value) << " target " << format_double(dom.target);
  if (dom.line_extended) std::cout << " line-extended";
  std::cout << "\n";
  if (w > 0) {
    std::cout << "potential_all_green " << stochastic_potential(scenario.tau_r, w) << "\n";
    std::cout << "potential_all_red " << stochastic_potential(scenario.tau_g, w) << "\n";
  }
  std::cout << "outcome " << outcome_name(p.outcome) << "\n";
  std::cout << "rule " << p.rule << "\n";
  return 0;
}

int run_probe(const ScenarioArgs& sargs, std::int64_t w, std::int64_t mc_samples,
              std::uint64_t seed) {
  const Scenario scenario = sargs.build();
  const ProbeReport rep = probe(scenario, w);
  std::cout << "probe report\n";
  std::cout << "rho " << format_double(scenario.rho) << "\ntau_g " << scenario.tau_g.str()
            << "\ntau_r " << scenario.tau_r.str() << "\nw " << w << "\n";
  const auto row = [](const char* name, std::int64_t cut, double value) {
    std::cout << name << " cutoff " << cut << " value " << format_double(value) << "\n";
  };
  row("unhappy_green", rep.cut_unhappy_green, rep.unhappy_green);
  row("unhappy_red", rep.cut_unhappy_red, rep.unhappy_red);
  row("flip_ready_green", rep.cut_flip_ready_green, rep.flip_ready_green);
  row("flip_ready_red", rep.cut_flip_ready_red, rep.flip_ready_red);
  row("stable_green", rep.cut_stable_green, rep.stable_green);
  row("stable_red", rep.cut_stable_red, rep.stable_red);
  row("intractable_green", rep.cut_intractable_green, rep.intractable_green);
  row("intractable_red", rep.cut_intractable_red, rep.intractable_red);
  if (mc_samples > 0) {
    const ProbeSample mc = probe_monte_carlo(scenario, w, mc_samples, seed);
    std::cout << "monte_carlo_samples " << mc.samples << " green_samples " << mc.green_samples
              << "\n";
    const auto mrow = [](const char* name, double value) {
      std::cout << "mc_" << name << " " << format_double(value) << "\n";
    };
    mrow("unhappy_green", mc.unhappy_green);
    mrow("unhappy_red", mc.unhappy_red);
    mrow("flip_ready_green", mc.flip_ready_green);
    mrow("flip_ready_red", mc.flip_ready_red);
    mrow("stable_green", mc.stable_green);
    mrow("stable_red", mc.stable_red);
    mrow("intractable_green", mc.intractable_green);
    mrow("intractable_red", mc.intractable_red);
  }
  return 0;
}

int run_sweep_cmd(double rho, std::int64_t w, std::int64_t n, const std::string& dynamic_text,
                  std::int64_t grid, std::int64_t reps, std::uint64_t base_seed,
                  std::int64_t max_steps, double delta, std::int64_t threads,
                  const std::string& out_prefix, bool svg) {
  SweepConfig config;
  config.rho = rho;
  config.w = w;
  config.n = n;
  config.dynamic = parse_dynamic(dynamic_text);
  config.grid = grid;
  config.replicates = reps;
  config.base_seed = base_seed;
  config.max_steps = max_steps;
  config.delta = delta;
  config.threads = threads;

  const SweepGrid result = run_sweep(config);
  const std::string summary = sweep_summary(result);
  write_output(out_prefix + ".csv", sweep_csv(result));
  write_output(out_prefix + ".txt", summary);
  if (svg) write_output(out_prefix + ".svg", render_landscape(landscape_from_grid(result)));
  std::cout << summary;
  return 0;
}

int run_lambda() {
  const CriticalDensity c = critical_density();
  std::cout << "critical density report\n";
  std::cout << "rho " << format_double(c.rho) << "\n";
  std::cout << "kappa_g " << format_double(c.kappa_g_at) << "\n";
  std::cout << "kappa_r " << format_double(c.kappa_r_at) << "\n";
  std::cout << "dual_residual " << format_double(c.dual_residual) << "\n";
  return 0;
}

int run_render(const std::string& csv_path, const std::string& record_path,
               std::optional<double> rho, const std::string& annotation,
               const std::string& out_path) {
  std::string svg;
  if (!csv_path.empty()) {
    svg = render_landscape(landscape_from_csv(read_file(csv_path), rho, annotation));
  } else {
    svg = render_ring(record_from_text(read_file(record_path)));
  }
  write_output(out_path, svg);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"1-D threshold segregation ring: simulation and analysis"};
  app.require_subcommand(1);
  app.set_config("--config", "", "read option defaults from a key=value file");

  // simulate
  auto* sim = app.add_subcommand("simulate", "run one dynamic to completion or cap");
  ScenarioArgs sim_scn;
  add_scenario_flags(sim, sim_scn);
  std::int64_t sim_n = 0, sim_w = 0, sim_max_steps = -1;
  std::uint64_t sim_seed = 1;
  std::string sim_dynamic = "selective", sim_events = "on", sim_out;
  bool sim_harmony = false;
  sim->add_option("-n,--nodes", sim_n, "ring size")->required();
  sim->add_option("-w,--window", sim_w, "neighbourhood half-width")->required();
  sim->add_option("--dynamic", sim_dynamic, "selective|incremental|synchronous|perturbed:EPS");
  sim->add_option("--seed", sim_seed, "RNG seed");
  sim->add_option("--max-steps", sim_max_steps, "step cap (-1: 50n)");
  sim->add_option("--events", sim_events, "event logging")->check(CLI::IsMember({"on", "off"}));
  sim->add_flag("--harmony", sim_harmony, "monitor the monotone harmony score (selective only)");
  sim->add_option("--out", sim_out, "write the run record here ('-' for stdout)");

  // thresholds
  auto* thr = app.add_subcommand("thresholds", "kappa/mu thresholds for a density");
  double thr_rho = 0.5;
  thr->add_option("--rho", thr_rho, "initial green density, in (0,1)")->required();

  // classify
  auto* cls = app.add_subcommand("classify", "predict the outcome of a scenario");
  ScenarioArgs cls_scn;
  add_scenario_flags(cls, cls_scn);
  std::string cls_dynamic = "selective";
  double cls_band = 1e-6;
  std::int64_t cls_w = 0;
  cls->add_option("--dynamic", cls_dynamic, "selective|incremental|synchronous|perturbed:EPS");
  cls->add_option("--band", cls_band, "threshold comparison band");
  cls->add_option("-w,--window", cls_w, "also report monochromatic-state potentials for this w");

  // probe
  auto* prb = app.add_subcommand("probe", "initial-configuration probabilities");
  ScenarioArgs prb_scn;
  add_scenario_flags(prb, prb_scn);
  std::int64_t prb_w = 0, prb_mc = 0;
  std::uint64_t prb_seed = 1;
  prb->add_option("-w,--window", prb_w, "neighbourhood half-width")->required();
  prb->add_option("--mc", prb_mc, "Monte-Carlo cross-check samples (0: off)");
  prb->add_option("--seed", prb_seed, "RNG seed for the cross-check");

  // sweep
  auto* swp = app.add_subcommand("sweep", "tolerance-grid Monte Carlo landscape");
  double swp_rho = 0.5, swp_delta = 0.05;
  std::int64_t swp_w = 30, swp_n = 50000, swp_grid = 32, swp_reps = 3, swp_max_steps = -1,
               swp_threads = 0;
  std::uint64_t swp_seed = 1;
  std::string swp_dynamic = "selective", swp_out;
  bool swp_svg = false;
  swp->add_option("--rho", swp_rho, "initial green density, in (0,1)")->required();
  swp->add_option("-w,--window", swp_w, "neighbourhood half-width");
  swp->add_option("-n,--nodes", swp_n, "ring size");
  swp->add_option("--dynamic", swp_dynamic, "selective|incremental|synchronous|perturbed:EPS");
  swp->add_option("--grid", swp_grid, "cells per axis");
  swp->add_option("--reps", swp_reps, "replicates per cell");
  swp->add_option("--seed", swp_seed, "base seed");
  swp->add_option("--max-steps", swp_max_steps, "step cap per run (-1: 50n)");
  swp->add_option("--delta", swp_delta, "outcome band");
  swp->add_option("--threads", swp_threads, "worker threads (0: hardware)");
  swp->add_option("--out", swp_out, "output prefix (.csv/.txt appended)")->required();
  swp->add_flag("--svg", swp_svg, "also render the landscape map");

  // lambda
  auto* lam = app.add_subcommand("lambda",
                                 "density where the domination boundary meets the static corner");

  // render
  auto* ren = app.add_subcommand("render", "draw an SVG from a sweep CSV or a run record");
  std::string ren_csv, ren_record, ren_annotation, ren_out;
  double ren_rho = -1.0;
  auto* csv_opt = ren->add_option("--csv", ren_csv, "sweep CSV to draw as a landscape map");
  auto* rec_opt = ren->add_option("--record", ren_record, "run record to draw as a radial diagram");
  ren->add_option("--rho", ren_rho, "density for analytic overlays (landscape only)");
  ren->add_option("--annotation", ren_annotation, "caption text (landscape only)");
  ren->add_option("--out", ren_out, "output SVG path ('-' for stdout)")->required();
  csv_opt->excludes(rec_opt);
  rec_opt->excludes(csv_opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (sim->parsed())
      return run_simulate(sim_scn, sim_n, sim_w, sim_dynamic, sim_seed, sim_max_steps, sim_events,
                          sim_harmony, sim_out);
    if (thr->parsed()) return run_thresholds(thr_rho);
    if (cls->parsed()) return run_classify(cls_scn, cls_dynamic, cls_band, cls_w);
    if (prb->parsed()) return run_probe(prb_scn, prb_w, prb_mc, prb_seed);
    if (swp->parsed())
      return run_sweep_cmd(swp_rho, swp_w, swp_n, swp_dynamic, swp_grid, swp_reps, swp_seed,
                           swp_max_steps, swp_delta, swp_threads, swp_out, swp_svg);
    if (lam->parsed()) return run_lambda();
    if (ren->parsed()) {
      if (ren_csv.empty() && ren_record.empty())
        throw CLI::RequiredError("render: one of --csv or --record");
      return run_render(ren_csv, ren_record,
                        ren_rho >= 0.0 ? std::optional<double>(ren_rho) : std::nullopt,
                        ren_annotation, ren_out);
    }
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
