#pragma once

#include <string>

#include "schelling/dynamic.hpp"
#include "schelling/thresholds.hpp"

namespace schelling {

// Predicted long-run behaviour of a scenario, from the analytic phase map.
//
//   StaticAE            almost every node keeps its initial colour
//   GreenTakeoverAE     almost every node ends green (red symmetric)
//   GreenTotal          every node ends green (red symmetric)
//   OpenQ1 / OpenQ2     parameter wedges whose outcome is genuinely unknown
//   ConjecturedGreen/RedTotal, ConjecturedCoinFlip
//                       supported-but-unproven labels for the region where
//                       both tolerances exceed 1/2 under the incremental or
//                       synchronous rule
//   ThresholdCase       some deciding comparison sits within the numeric
//                       band of a boundary; no claim is made
enum class Outcome {
  StaticAE,
  GreenTakeoverAE,
  RedTakeoverAE,
  GreenTotal,
  RedTotal,
  OpenQ1,
  OpenQ2,
  ThresholdCase,
  ConjecturedGreenTotal,
  ConjecturedRedTotal,
  ConjecturedCoinFlip,
};

const char* outcome_name(Outcome o);

struct Prediction {
  Outcome outcome;
  std::string rule;  // human-readable statement of the rule that decided
};

// Walk the ordered rule list and return the first applicable prediction.
// Every comparison is three-valued with a +/- band (default 1e-6): a rule
// whose conditions are neither clearly met nor clearly failed yields
// ThresholdCase, except the two documented side-conditions, which
// conservatively yield their Open label when in doubt.  The perturbed
// dynamic is classified by its incremental skeleton.
Prediction classify(double rho, double tau_g, double tau_r, DynamicKind dynamic,
                    double band = 1e-6);

}  // namespace schelling
