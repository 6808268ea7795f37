#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "schelling/dynamics.hpp"
#include "schelling/sweep.hpp"

namespace schelling {

// Inputs for the landscape map: one majority label per grid cell, plus the
// analytic overlays.  Built either straight from a SweepGrid or by re-reading
// a sweep CSV (majorities are then recomputed from the per-replicate rows).
struct LandscapeCell {
  double tau_r = 0.0;
  double tau_g = 0.0;
  EmpiricalLabel majority = EmpiricalLabel::Mixed;
};

struct LandscapeData {
  std::int64_t grid = 1;  // cells per axis; cell edge is 1/grid
  std::vector<LandscapeCell> cells;
  std::vector<OverlayLine> lines;
  std::vector<std::pair<double, double>> domination_curve;  // (tau_r, tau_g)
  std::string annotation;  // free-form caption, e.g. "rho=0.42 w=30 n=50000"
};

LandscapeData landscape_from_grid(const SweepGrid& grid);

// Parses the sweep CSV schema (tau_r,tau_g,rep,seed,outcome,...), recomputes
// per-cell majorities, and infers the grid resolution from the distinct
// tau_r values.  Overlays are recomputed when rho is given; without it the
// map is drawn bare.  Throws std::invalid_argument on malformed input.
LandscapeData landscape_from_csv(const std::string& csv, std::optional<double> rho,
                                 const std::string& annotation = "");

// Tolerance-square map: tau_r horizontal, tau_g vertical, one filled square
// per cell (Mixed cells hatched), overlay lines dashed, domination boundary
// solid, legend and annotation at the right.  Output is a self-contained SVG
// string, byte-identical for identical input.
std::string render_landscape(const LandscapeData& data);

// Radial evolution diagram: the initial colouring as the innermost annulus,
// a thin band marking the initially unhappy nodes outside it, one tick per
// change event at radius growing linearly with its time, and the final
// colouring as the outermost annulus.  Requires a record with event logging;
// rings with n > 10000 are drawn at bucket granularity (majority colour per
// bucket), exact below that.
std::string render_ring(const RunRecord& record);

}  // namespace schelling
