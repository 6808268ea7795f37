#include "schelling/render.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "schelling/format.hpp"
#include "schelling/ring.hpp"

namespace schelling {

namespace {

// Pixel coordinates rounded to 1/100 keep the files small and byte-stable.
std::string px(double v) { return format_double(std::round(v * 100.0) / 100.0); }

const char* fill_for(EmpiricalLabel label) {
  switch (label) {
    case EmpiricalLabel::GreenTotal: return "#1b7837";
    case EmpiricalLabel::GreenAE: return "#a6dba0";
    case EmpiricalLabel::RedTotal: return "#b2182b";
    case EmpiricalLabel::RedAE: return "#f4a582";
    case EmpiricalLabel::Static: return "#bfbfbf";
    case EmpiricalLabel::Unfinished: return "#7b3294";
    case EmpiricalLabel::Mixed: return "url(#hatch)";
  }
  return "#ffffff";
}

EmpiricalLabel label_from_name(const std::string& name) {
  for (int k = 0; k < 7; ++k) {
    const auto label = static_cast<EmpiricalLabel>(k);
    if (name == empirical_label_name(label)) return label;
  }
  throw std::invalid_argument("unknown outcome label '" + name + "'");
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

void append_text(std::string& svg, double x, double y, const std::string& body, int size,
                 const std::string& fill, const std::string& extra = "") {
  svg += "<text x=\"" + px(x) + "\" y=\"" + px(y) + "\" font-size=\"" + std::to_string(size) +
         "\" font-family=\"sans-serif\" fill=\"" + fill + "\"" + extra + ">" + body + "</text>\n";
}

}  // namespace

LandscapeData landscape_from_grid(const SweepGrid& grid) {
  LandscapeData data;
  data.grid = grid.config.grid;
  data.cells.reserve(grid.cells.size());
  for (const CellResult& cell : grid.cells) {
    if (!cell.error.empty()) continue;
    data.cells.push_back({cell.tau_r.to_double(), cell.tau_g.to_double(), cell.majority});
  }
  data.lines = grid.lines;
  data.domination_curve = grid.domination_curve;
  const SweepConfig& c = grid.config;
  data.annotation = "rho=" + format_double(c.rho) + " w=" + std::to_string(c.w) +
                    " n=" + std::to_string(c.n) + " dynamic=" + dynamic_name(c.dynamic) +
                    " grid=" + std::to_string(c.grid) + " reps=" + std::to_string(c.replicates) +
                    " delta=" + format_double(c.delta);
  return data;
}

LandscapeData landscape_from_csv(const std::string& csv, std::optional<double> rho,
                                 const std::string& annotation) {
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "tau_r,tau_g,rep,seed,outcome,final_green_frac,changed_frac,steps,termination,predicted")
    throw std::invalid_argument("unexpected CSV header '" + line + "'");

  // (tau_r, tau_g) -> per-label replicate counts, in first-seen order
  std::map<std::pair<double, double>, std::size_t> index;
  std::vector<std::pair<double, double>> order;
  std::vector<std::array<std::int64_t, 7>> counts;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> cols = split(line, ',');
    if (cols.size() != 10)
      throw std::invalid_argument("CSV line " + std::to_string(lineno) + ": expected 10 columns");
    if (cols[4] == "error") continue;
    const std::pair<double, double> key{parse_double(cols[0]), parse_double(cols[1])};
    const EmpiricalLabel label = label_from_name(cols[4]);
    auto [it, fresh] = index.try_emplace(key, counts.size());
    if (fresh) {
      order.push_back(key);
      counts.push_back({});
    }
    ++counts[it->second][static_cast<std::size_t>(label)];
  }

  LandscapeData data;
  data.annotation = annotation;
  std::map<double, int> distinct_r, distinct_g;
  for (const auto& [tr, tg] : order) {
    ++distinct_r[tr];
    ++distinct_g[tg];
  }
  data.grid = std::max<std::int64_t>(
      1, std::max<std::int64_t>(distinct_r.size(), distinct_g.size()));
  for (std::size_t c = 0; c < order.size(); ++c) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < 7; ++k)
      if (counts[c][k] > counts[c][best]) best = k;
    data.cells.push_back({order[c].first, order[c].second, static_cast<EmpiricalLabel>(best)});
  }
  if (rho) {
    data.lines = analytic_overlays(*rho);
    std::vector<double> xs;
    for (int k = 0; k < 128; ++k) xs.push_back((2.0 * k + 1.0) / 256.0);
    data.domination_curve = domination_boundary(*rho, xs);
  }
  return data;
}

std::string render_landscape(const LandscapeData& data) {
  const double left = 70, top = 46, size = 640;
  const double right = left + size, bottom = top + size;
  const double cell = size / static_cast<double>(data.grid);
  const auto X = [&](double tau_r) { return left + tau_r * size; };
  const auto Y = [&](double tau_g) { return top + (1.0 - tau_g) * size; };

  std::string svg =
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"980\" height=\"760\" "
      "viewBox=\"0 0 980 760\">\n"
      "<defs><pattern id=\"hatch\" patternUnits=\"userSpaceOnUse\" width=\"6\" height=\"6\">"
      "<rect width=\"6\" height=\"6\" fill=\"#ffffff\"/>"
      "<path d=\"M0,6 L6,0\" stroke=\"#888888\" stroke-width=\"1\"/></pattern></defs>\n"
      "<rect width=\"980\" height=\"760\" fill=\"#ffffff\"/>\n";

  for (const LandscapeCell& c : data.cells) {
    svg += "<rect x=\"" + px(X(c.tau_r) - cell / 2) + "\" y=\"" + px(Y(c.tau_g) - cell / 2) +
           "\" width=\"" + px(cell) + "\" height=\"" + px(cell) + "\" fill=\"";
    svg += fill_for(c.majority);
    svg += "\"/>\n";
  }

  for (const OverlayLine& line : data.lines) {
    std::string d;
    if (line.vertical) {
      const double x = X(line.position);
      d = "M" + px(x) + "," + px(top) + " L" + px(x) + "," + px(bottom);
    } else {
      const double y = Y(line.position);
      d = "M" + px(left) + "," + px(y) + " L" + px(right) + "," + px(y);
    }
    svg += "<path d=\"" + d +
           "\" stroke=\"#2166ac\" stroke-width=\"1.5\" stroke-dasharray=\"5,3\" fill=\"none\"/>\n";
    if (line.vertical)
      append_text(svg, X(line.position) + 2, top - 6, line.name, 11, "#2166ac");
    else
      append_text(svg, right + 4, Y(line.position) + 4, line.name, 11, "#2166ac");
  }

  if (!data.domination_curve.empty()) {
    std::string pts;
    for (const auto& [x, y] : data.domination_curve) {
      if (!pts.empty()) pts += ' ';
      pts += px(X(x)) + "," + px(Y(y));
    }
    svg += "<polyline points=\"" + pts +
           "\" stroke=\"#000000\" stroke-width=\"2.2\" fill=\"none\"/>\n";
  }

  svg += "<rect x=\"" + px(left) + "\" y=\"" + px(top) + "\" width=\"" + px(size) +
         "\" height=\"" + px(size) + "\" fill=\"none\" stroke=\"#333333\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double v = k / 4.0;
    const std::string lab = format_double(v);
    svg += "<line x1=\"" + px(X(v)) + "\" y1=\"" + px(bottom) + "\" x2=\"" + px(X(v)) +
           "\" y2=\"" + px(bottom + 5) + "\" stroke=\"#333333\"/>\n";
    append_text(svg, X(v) - 8, bottom + 19, lab, 12, "#333333");
    svg += "<line x1=\"" + px(left - 5) + "\" y1=\"" + px(Y(v)) + "\" x2=\"" + px(left) +
           "\" y2=\"" + px(Y(v)) + "\" stroke=\"#333333\"/>\n";
    append_text(svg, left - 34, Y(v) + 4, lab, 12, "#333333");
  }
  append_text(svg, left + size / 2 - 18, bottom + 38, "tau_r", 14, "#111111");
  append_text(svg, left - 52, top + size / 2, "tau_g", 14, "#111111",
              " transform=\"rotate(-90 " + px(left - 52) + " " + px(top + size / 2) + ")\"");

  double ly = top + 8;
  const double lx = right + 76;
  append_text(svg, lx, ly, "majority label", 13, "#111111");
  ly += 10;
  for (int k = 0; k < 7; ++k) {
    const auto label = static_cast<EmpiricalLabel>(k);
    svg += "<rect x=\"" + px(lx) + "\" y=\"" + px(ly) + "\" width=\"16\" height=\"16\" fill=\"";
    svg += fill_for(label);
    svg += "\" stroke=\"#555555\" stroke-width=\"0.5\"/>\n";
    append_text(svg, lx + 22, ly + 12, empirical_label_name(label), 12, "#111111");
    ly += 22;
  }
  ly += 8;
  svg += "<line x1=\"" + px(lx) + "\" y1=\"" + px(ly) + "\" x2=\"" + px(lx + 16) + "\" y2=\"" +
         px(ly) + "\" stroke=\"#2166ac\" stroke-width=\"1.5\" stroke-dasharray=\"5,3\"/>\n";
  append_text(svg, lx + 22, ly + 4, "threshold line", 12, "#111111");
  ly += 22;
  svg += "<line x1=\"" + px(lx) + "\" y1=\"" + px(ly) + "\" x2=\"" + px(lx + 16) + "\" y2=\"" +
         px(ly) + "\" stroke=\"#000000\" stroke-width=\"2.2\"/>\n";
  append_text(svg, lx + 22, ly + 4, "domination boundary", 12, "#111111");

  if (!data.annotation.empty()) append_text(svg, left, 24, data.annotation, 14, "#111111");
  svg += "</svg>\n";
  return svg;
}

namespace {

constexpr double kPi = 3.14159265358979323846;

struct RadialGeometry {
  double cx = 500, cy = 500;
  double angle(double pos, double n) const { return 2.0 * kPi * pos / n - kPi / 2.0; }
  std::pair<double, double> point(double r, double a) const {
    return {cx + r * std::cos(a), cy + r * std::sin(a)};
  }
};

// Annular sector as a closed path, splitting spans so that no single arc
// exceeds a quarter turn.
std::string sector_path(const RadialGeometry& geo, double r0, double r1, double a0, double a1) {
  const int segs = std::max(1, static_cast<int>(std::ceil((a1 - a0) / (kPi / 2.0))));
  const double step = (a1 - a0) / segs;
  auto [sx, sy] = geo.point(r1, a0);
  std::string d = "M" + px(sx) + "," + px(sy);
  for (int s = 1; s <= segs; ++s) {
    auto [x, y] = geo.point(r1, a0 + s * step);
    d += " A" + px(r1) + "," + px(r1) + " 0 0 1 " + px(x) + "," + px(y);
  }
  auto [ix, iy] = geo.point(r0, a1);
  d += " L" + px(ix) + "," + px(iy);
  for (int s = 1; s <= segs; ++s) {
    auto [x, y] = geo.point(r0, a1 - s * step);
    d += " A" + px(r0) + "," + px(r0) + " 0 0 0 " + px(x) + "," + px(y);
  }
  return d + " Z";
}

// Greedy run-length pass over per-bucket values; emits one sector per run.
template <typename Value, typename FillFor>
void append_bucket_arcs(std::string& svg, const RadialGeometry& geo, const std::vector<Value>& buckets,
                        double n, double factor, double r0, double r1, FillFor fill_for_value) {
  const std::int64_t m = static_cast<std::int64_t>(buckets.size());
  std::int64_t b = 0;
  while (b < m) {
    std::int64_t e = b;
    while (e < m && buckets[e] == buckets[b]) ++e;
    const std::string fill = fill_for_value(buckets[b]);
    if (!fill.empty()) {
      const double lo = std::min(static_cast<double>(b) * factor, n);
      const double hi = std::min(static_cast<double>(e) * factor, n);
      double a0 = geo.angle(lo, n);
      double a1 = geo.angle(hi, n);
      if (a1 - a0 >= 2.0 * kPi - 1e-12) {
        // full circle: two half sectors
        svg += "<path d=\"" + sector_path(geo, r0, r1, a0, a0 + kPi) + "\" fill=\"" + fill + "\"/>\n";
        svg += "<path d=\"" + sector_path(geo, r0, r1, a0 + kPi, a1) + "\" fill=\"" + fill + "\"/>\n";
      } else {
        svg += "<path d=\"" + sector_path(geo, r0, r1, a0, a1) + "\" fill=\"" + fill + "\"/>\n";
      }
    }
    b = e;
  }
}

std::vector<Color> bucket_colors(const std::vector<Color>& colors, std::int64_t factor) {
  if (factor <= 1) return colors;
  const std::int64_t n = static_cast<std::int64_t>(colors.size());
  std::vector<Color> out;
  out.reserve((n + factor - 1) / factor);
  for (std::int64_t b = 0; b < n; b += factor) {
    const std::int64_t e = std::min(n, b + factor);
    std::int64_t greens = 0;
    for (std::int64_t x = b; x < e; ++x) greens += colors[x] == Color::Green;
    out.push_back(2 * greens >= e - b ? Color::Green : Color::Red);
  }
  return out;
}

const char* kGreenFill = "#1b7837";
const char* kRedFill = "#b2182b";

}  // namespace

std::string render_ring(const RunRecord& record) {
  if (record.initial_colors.empty() || record.final_colors.empty())
    throw std::invalid_argument("render_ring: record has no event log (rerun with events on)");
  const std::int64_t n = record.n;
  const std::int64_t factor = (n + 9999) / 10000;  // buckets of this many nodes
  const double dn = static_cast<double>(n);
  const RadialGeometry geo;

  const auto color_fill = [](Color c) -> std::string {
    return c == Color::Green ? kGreenFill : kRedFill;
  };

  std::string svg =
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1000\" height=\"1000\" "
      "viewBox=\"0 0 1000 1000\">\n<rect width=\"1000\" height=\"1000\" fill=\"#ffffff\"/>\n";

  // innermost annulus: initial colours
  append_bucket_arcs(svg, geo, bucket_colors(record.initial_colors, factor), dn,
                     static_cast<double>(factor), 150, 195, color_fill);

  // band outside it: initially unhappy nodes (any unhappy node in a bucket
  // marks the whole bucket)
  {
    Ring initial(record.scenario, n, record.w, record.initial_colors);
    std::vector<std::uint8_t> unhappy;
    unhappy.reserve((n + factor - 1) / factor);
    for (std::int64_t b = 0; b < n; b += factor) {
      const std::int64_t e = std::min(n, b + factor);
      std::uint8_t flag = 0;
      for (std::int64_t x = b; x < e && !flag; ++x)
        flag = initial.status(x) != NodeStatus::Happy;
      unhappy.push_back(flag);
    }
    append_bucket_arcs(svg, geo, unhappy, dn, static_cast<double>(factor), 200, 212,
                       [](std::uint8_t f) -> std::string { return f ? "#111111" : ""; });
  }

  // change events: one radial tick each, radius linear in time
  const double ev_r0 = 225, ev_r1 = 385;
  const double t_max = std::max<std::int64_t>(record.steps, 1);
  for (const ChangeEvent& ev : record.events) {
    const double bucket_mid =
        std::min(dn, (static_cast<double>(ev.node / factor) + 0.5) * static_cast<double>(factor));
    const double a = geo.angle(factor > 1 ? bucket_mid : ev.node + 0.5, dn);
    const double r = ev_r0 + (ev_r1 - ev_r0) * (static_cast<double>(ev.time) / t_max);
    auto [x1, y1] = geo.point(r - 3, a);
    auto [x2, y2] = geo.point(r + 3, a);
    svg += "<line x1=\"" + px(x1) + "\" y1=\"" + px(y1) + "\" x2=\"" + px(x2) + "\" y2=\"" +
           px(y2) + "\" stroke=\"";
    svg += color_fill(ev.new_color);
    svg += "\" stroke-width=\"1.4\"/>\n";
  }

  // outermost annulus: final colours
  append_bucket_arcs(svg, geo, bucket_colors(record.final_colors, factor), dn,
                     static_cast<double>(factor), 395, 440, color_fill);

  const Scenario& s = record.scenario;
  append_text(svg, 20, 28,
              "n=" + std::to_string(n) + " w=" + std::to_string(record.w) +
                  " rho=" + format_double(s.rho) + " tau_g=" + s.tau_g.str() +
                  " tau_r=" + s.tau_r.str() + " dynamic=" + dynamic_name(record.dynamic) +
                  " seed=" + std::to_string(record.seed),
              15, "#111111");
  std::string term = "finished";
  if (record.termination.kind == TerminationKind::StepCapReached) term = "step cap";
  if (record.termination.kind == TerminationKind::CycleDetected)
    term = "cycle (period " + std::to_string(record.termination.cycle_period) + ")";
  append_text(svg, 20, 50,
              "steps=" + std::to_string(record.steps) + " termination=" + term + " final_green=" +
                  std::to_string(record.final_green) + " changed=" + std::to_string(record.changed_nodes) +
                  (factor > 1 ? " (drawn at 1:" + std::to_string(factor) + " bucket scale)" : ""),
              15, "#111111");

  append_text(svg, 20, 930, "inner: initial colours", 13, "#333333");
  append_text(svg, 20, 948, "black band: initially unhappy", 13, "#333333");
  append_text(svg, 20, 966, "ticks: colour changes, radius = time", 13, "#333333");
  append_text(svg, 20, 984, "outer: final colours", 13, "#333333");
  svg += "</svg>\n";
  return svg;
}

}  // namespace schelling
