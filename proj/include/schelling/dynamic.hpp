#pragma once

#include <stdexcept>
#include <string>

#include "schelling/format.hpp"

namespace schelling {

// Node-selection rules.
//   Selective:   a uniformly random hopeful node changes colour each step.
//   Incremental: a uniformly random unhappy node changes colour each step.
//   Synchronous: every unhappy node changes colour simultaneously.
//   PerturbedIncremental: with probability epsilon a uniformly random node is
//   forced to change; otherwise an incremental step (a step with nothing to
//   do still counts).
enum class DynamicKind { Selective, Incremental, Synchronous, PerturbedIncremental };

struct Dynamic {
  DynamicKind kind = DynamicKind::Selective;
  double epsilon = 0.0;  // only meaningful for PerturbedIncremental

  static Dynamic selective() { return {DynamicKind::Selective, 0.0}; }
  static Dynamic incremental() { return {DynamicKind::Incremental, 0.0}; }
  static Dynamic synchronous() { return {DynamicKind::Synchronous, 0.0}; }
  static Dynamic perturbed(double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0))
      throw std::invalid_argument("perturbed dynamic: epsilon must be in (0,1)");
    return {DynamicKind::PerturbedIncremental, epsilon};
  }
};

inline std::string dynamic_name(const Dynamic& d) {
  switch (d.kind) {
    case DynamicKind::Selective: return "selective";
    case DynamicKind::Incremental: return "incremental";
    case DynamicKind::Synchronous: return "synchronous";
    case DynamicKind::PerturbedIncremental:
      return "perturbed:" + format_double(d.epsilon);
  }
  return "?";
}

// Accepts "selective", "incremental", "synchronous", or "perturbed:EPS".
inline Dynamic parse_dynamic(const std::string& text) {
  if (text == "selective") return Dynamic::selective();
  if (text == "incremental") return Dynamic::incremental();
  if (text == "synchronous") return Dynamic::synchronous();
  const std::string prefix = "perturbed:";
  if (text.rfind(prefix, 0) == 0) {
    std::size_t used = 0;
    const std::string arg = text.substr(prefix.size());
    double eps = 0.0;
    try {
      eps = std::stod(arg, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad epsilon in dynamic '" + text + "'");
    }
    if (used != arg.size()) throw std::invalid_argument("bad epsilon in dynamic '" + text + "'");
    return Dynamic::perturbed(eps);
  }
  throw std::invalid_argument("unknown dynamic '" + text + "'");
}

}  // namespace schelling
