#include "schelling/serialize.hpp"

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "schelling/format.hpp"
#include "schelling/rational.hpp"

namespace schelling {

namespace {

std::string rle_colors(const std::vector<Color>& colors) {
  std::string out;
  std::size_t i = 0;
  while (i < colors.size()) {
    std::size_t j = i;
    while (j < colors.size() && colors[j] == colors[i]) ++j;
    if (!out.empty()) out += ' ';
    out += colors[i] == Color::Green ? 'G' : 'R';
    out += std::to_string(j - i);
    i = j;
  }
  return out;
}

std::vector<Color> parse_rle_colors(const std::string& text, std::int64_t expected_n) {
  std::vector<Color> colors;
  std::istringstream in(text);
  std::string token;
  while (in >> token) {
    if (token.size() < 2 || (token[0] != 'G' && token[0] != 'R'))
      throw std::invalid_argument("bad colour run '" + token + "'");
    std::size_t used = 0;
    long long run = 0;
    try {
      run = std::stoll(token.substr(1), &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad colour run '" + token + "'");
    }
    if (used != token.size() - 1 || run <= 0)
      throw std::invalid_argument("bad colour run '" + token + "'");
    const Color c = token[0] == 'G' ? Color::Green : Color::Red;
    if (!colors.empty() && colors.back() == c)
      throw std::invalid_argument("colour runs must alternate at '" + token + "'");
    if (static_cast<std::int64_t>(colors.size()) + run > expected_n)
      throw std::invalid_argument("colour runs exceed n");
    colors.insert(colors.end(), run, c);
  }
  if (static_cast<std::int64_t>(colors.size()) != expected_n)
    throw std::invalid_argument("colour runs sum to " + std::to_string(colors.size()) +
                                ", expected " + std::to_string(expected_n));
  return colors;
}

// Reads "key value" lines in a fixed order; keeps error messages pointed at
// the exact line that broke.
class LineReader {
 public:
  explicit LineReader(const std::string& text) {
    std::string line;
    std::istringstream in(text);
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      lines_.push_back(line);
    }
  }

  bool done() const { return pos_ >= lines_.size(); }

  const std::string& next() {
    if (done()) throw std::invalid_argument("unexpected end of input");
    return lines_[pos_++];
  }

  const std::string& peek() const {
    if (done()) throw std::invalid_argument("unexpected end of input");
    return lines_[pos_];
  }

  // "key rest-of-line" -> rest-of-line
  std::string expect(const std::string& key) {
    const std::string& line = next();
    if (line.size() < key.size() + 2 || line.compare(0, key.size(), key) != 0 ||
        line[key.size()] != ' ')
      throw std::invalid_argument("expected '" + key + " ...', got '" + line + "'");
    return line.substr(key.size() + 1);
  }

  std::int64_t expect_int(const std::string& key) { return parse_int(expect(key), key); }

  static std::int64_t parse_int(const std::string& value, const std::string& what) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(value, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad integer for " + what + ": '" + value + "'");
    }
    if (used != value.size())
      throw std::invalid_argument("bad integer for " + what + ": '" + value + "'");
    return v;
  }

 private:
  std::vector<std::string> lines_;
  std::size_t pos_ = 0;
};

std::uint64_t parse_seed(const std::string& value) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(value, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad seed '" + value + "'");
  }
  if (used != value.size()) throw std::invalid_argument("bad seed '" + value + "'");
  return v;
}

void append_scenario(std::string& out, const Scenario& s, std::int64_t n, std::int64_t w,
                     std::uint64_t seed) {
  out += "n " + std::to_string(n) + "\n";
  out += "w " + std::to_string(w) + "\n";
  out += "seed " + std::to_string(seed) + "\n";
  out += "rho " + format_double(s.rho) + "\n";
  out += "tau_g " + s.tau_g.str() + "\n";
  out += "tau_r " + s.tau_r.str() + "\n";
}

struct ScenarioHeader {
  std::int64_t n;
  std::int64_t w;
  std::uint64_t seed;
  Scenario scenario;
};

ScenarioHeader read_scenario(LineReader& reader) {
  const std::int64_t n = reader.expect_int("n");
  const std::int64_t w = reader.expect_int("w");
  const std::uint64_t seed = parse_seed(reader.expect("seed"));
  const double rho = parse_double(reader.expect("rho"));
  const Rational tau_g = Rational::parse(reader.expect("tau_g"));
  const Rational tau_r = Rational::parse(reader.expect("tau_r"));
  return {n, w, seed, Scenario(rho, tau_g, tau_r)};
}

}  // namespace

std::string ring_to_text(const Ring& ring, std::uint64_t seed) {
  std::string out = "ring v1\n";
  append_scenario(out, ring.scenario(), ring.n(), ring.w(), seed);
  out += "colors " + rle_colors(ring.colors()) + "\n";
  out += "end\n";
  return out;
}

ParsedRing ring_from_text(const std::string& text) {
  LineReader reader(text);
  if (reader.next() != "ring v1") throw std::invalid_argument("missing 'ring v1' header");
  const ScenarioHeader h = read_scenario(reader);
  std::vector<Color> colors = parse_rle_colors(reader.expect("colors"), h.n);
  if (reader.next() != "end") throw std::invalid_argument("missing 'end'");
  return {h.seed, Ring(h.scenario, h.n, h.w, std::move(colors))};
}

std::string record_to_text(const RunRecord& record) {
  std::string out = "runrecord v1\n";
  append_scenario(out, record.scenario, record.n, record.w, record.seed);
  out += "dynamic " + dynamic_name(record.dynamic) + "\n";
  out += "max_steps " + std::to_string(record.max_steps) + "\n";
  out += "initial_green " + std::to_string(record.initial_green) + "\n";
  out += "final_green " + std::to_string(record.final_green) + "\n";
  out += "changed_nodes " + std::to_string(record.changed_nodes) + "\n";
  out += "steps " + std::to_string(record.steps) + "\n";
  switch (record.termination.kind) {
    case TerminationKind::Finished: out += "termination finished\n"; break;
    case TerminationKind::StepCapReached: out += "termination cap\n"; break;
    case TerminationKind::CycleDetected:
      out += "termination cycle:" + std::to_string(record.termination.cycle_period) + "\n";
      break;
  }
  if (!record.initial_colors.empty()) {
    out += "initial " + rle_colors(record.initial_colors) + "\n";
    out += "events " + std::to_string(record.events.size()) + "\n";
    for (const ChangeEvent& ev : record.events) {
      out += std::to_string(ev.time) + ' ' + std::to_string(ev.node) + ' ';
      out += ev.new_color == Color::Green ? "G\n" : "R\n";
    }
  }
  out += "end\n";
  return out;
}

RunRecord record_from_text(const std::string& text) {
  LineReader reader(text);
  if (reader.next() != "runrecord v1") throw std::invalid_argument("missing 'runrecord v1' header");
  const ScenarioHeader h = read_scenario(reader);

  RunRecord rec(h.scenario);
  rec.n = h.n;
  rec.w = h.w;
  rec.seed = h.seed;
  rec.dynamic = parse_dynamic(reader.expect("dynamic"));
  rec.max_steps = reader.expect_int("max_steps");
  rec.initial_green = reader.expect_int("initial_green");
  rec.final_green = reader.expect_int("final_green");
  rec.changed_nodes = reader.expect_int("changed_nodes");
  rec.steps = reader.expect_int("steps");

  const std::string term = reader.expect("termination");
  if (term == "finished") {
    rec.termination = {TerminationKind::Finished, 0};
  } else if (term == "cap") {
    rec.termination = {TerminationKind::StepCapReached, 0};
  } else if (term.rfind("cycle:", 0) == 0) {
    rec.termination = {TerminationKind::CycleDetected, LineReader::parse_int(term.substr(6), "cycle period")};
  } else {
    throw std::invalid_argument("bad termination '" + term + "'");
  }

  if (reader.peek().rfind("initial ", 0) == 0) {
    rec.initial_colors = parse_rle_colors(reader.expect("initial"), rec.n);
    const std::int64_t count = reader.expect_int("events");
    if (count < 0) throw std::invalid_argument("negative event count");
    rec.events.reserve(count);
    std::int64_t prev_time = 0;
    for (std::int64_t i = 0; i < count; ++i) {
      std::istringstream line(reader.next());
      ChangeEvent ev;
      std::string color;
      if (!(line >> ev.time >> ev.node >> color) || (color != "G" && color != "R"))
        throw std::invalid_argument("bad event line " + std::to_string(i + 1));
      std::string extra;
      if (line >> extra) throw std::invalid_argument("bad event line " + std::to_string(i + 1));
      if (ev.time < prev_time) throw std::invalid_argument("event times must be non-decreasing");
      if (ev.node < 0 || ev.node >= rec.n) throw std::invalid_argument("event node out of range");
      prev_time = ev.time;
      ev.new_color = color == "G" ? Color::Green : Color::Red;
      rec.events.push_back(ev);
    }
    rec.final_colors = replay(rec);
  }
  if (reader.next() != "end") throw std::invalid_argument("missing 'end'");
  return rec;
}

}  // namespace schelling
