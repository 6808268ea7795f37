#pragma once

#include <cstdint>
#include <optional>

#include "schelling/rational.hpp"
#include "schelling/ring.hpp"

namespace schelling {

// Weight given to green nodes in the harmony score.  Chosen so that every
// legal selective flip strictly increases the score, which bounds the number
// of selective steps and certifies termination.
//
// When tau_g + tau_r <= 1 the valid weights form the closed interval
// [tau_r/(1-tau_r), (1-tau_g)/tau_g]; otherwise, with q1 = 1/(2w+1), the open
// interval ((1-tau_g+q1)/(tau_g-q1), (tau_r-q1)/(1-tau_r+q1)), which may be
// empty — then no weight exists for this window size and nullopt is returned.
// The midpoint is used in either case, kept as an exact rational.
std::optional<Rational> harmony_chi(const Scenario& scenario, std::int64_t w);

// Exact harmony score bookkeeping.  The score is
//     S = sum_x A(x) * L(x)
// where A(x) = chi for green nodes and 1 for red, and L(x) is the fraction of
// N(x) sharing x's colour.  Internally the score is held as an integer
// multiple of 1/(q*(2w+1)) (chi = p/q), in 128-bit arithmetic, so increase
// checks are exact comparisons, never floating point.
class HarmonyMonitor {
 public:
  HarmonyMonitor(const Ring& ring, Rational chi);

  const Rational& chi() const { return chi_; }
  __int128 scaled_score() const { return score_; }
  __int128 scale() const { return scale_; }  // q * (2w+1)

  // Combined contribution of the 2w+1 nodes whose score changes when x flips
  // (exactly the members of N(x)).  Evaluate before and after the flip; the
  // difference is the exact scaled score change.
  __int128 window_contribution(const Ring& ring, std::int64_t x) const;

  void add(__int128 delta) { score_ += delta; }

 private:
  Rational chi_;
  __int128 scale_;
  __int128 score_;
};

// Current harmony score of a ring as an exact rational, computed from
// scratch in O(n).  Throws std::overflow_error if the reduced fraction no
// longer fits in 64 bits (possible only for enormous rings with large chi
// denominators).
Rational harmony_index(const Ring& ring, const Rational& chi);

}  // namespace schelling
