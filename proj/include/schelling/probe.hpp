#pragma once

#include <cstdint>

#include "schelling/scenario.hpp"

namespace schelling {

// Initial-configuration probabilities for one scenario at a given w, all
// exact binomial tails with integer cutoffs derived by exact rational
// floor/ceil (W = 2w+1 is the neighbourhood size):
//
//   unhappy_green   P[ b(2w, 1-rho) >= floor((1-tau_g) W) + 1 ]
//                   a green node's neighbourhood holds too few greens
//   flip_ready_red  P[ b(2w, rho)   >= ceil(tau_g W) - 1 ]
//                   a red node's position would satisfy a green one (for
//                   tau_g + tau_r > 1 this equals the hopeful probability)
//   stable_green    P[ b(w, rho)    >= ceil(tau_g W) - 1 ]
//                   [b, b+w] is a stable interval for a green node b
//   intractable_green
//                   P[ b(w+1, rho)  <= ceil((tau_g - 1/2) W) - 1 ]
//                   a length-(w+1) window is too green-poor ever to admit
//                   a green-leaning flip inside it
//
// plus the colour-swapped duals (rho -> 1-rho, tau_g -> tau_r).
struct ProbeReport {
  std::int64_t w = 0;

  // Cutoffs, clamped nowhere: they may fall outside [0, trials], in which
  // case the tail is 0 or 1.
  std::int64_t cut_unhappy_green = 0;      // trials 2w, p = 1-rho
  std::int64_t cut_unhappy_red = 0;        // trials 2w, p = rho
  std::int64_t cut_flip_ready_red = 0;     // trials 2w, p = rho
  std::int64_t cut_flip_ready_green = 0;   // trials 2w, p = 1-rho
  std::int64_t cut_stable_green = 0;       // trials w,  p = rho
  std::int64_t cut_stable_red = 0;         // trials w,  p = 1-rho
  std::int64_t cut_intractable_green = 0;  // trials w+1, p = rho
  std::int64_t cut_intractable_red = 0;    // trials w+1, p = 1-rho

  double unhappy_green = 0.0;
  double unhappy_red = 0.0;
  double flip_ready_green = 0.0;
  double flip_ready_red = 0.0;
  double stable_green = 0.0;
  double stable_red = 0.0;
  double intractable_green = 0.0;
  double intractable_red = 0.0;
};

ProbeReport probe(const Scenario& scenario, std::int64_t w);

// Empirical counterpart measured through the ring machinery itself: each
// sample draws a fresh random ring of size 2w+1 and evaluates the events at
// node 0 (status for the unhappy probabilities, an actual flip for the
// flip-ready ones, direct window counts for the interval ones).  Estimates
// land within Monte-Carlo error of the exact tails, which checks the cutoff
// arithmetic against the simulator rather than against itself.
struct ProbeSample {
  std::int64_t samples = 0;        // total rings drawn
  std::int64_t green_samples = 0;  // rings whose node 0 came up green

  double unhappy_green = 0.0;  // conditioned on node 0 green
  double unhappy_red = 0.0;    // conditioned on node 0 red
  double flip_ready_green = 0.0;
  double flip_ready_red = 0.0;
  double stable_green = 0.0;
  double stable_red = 0.0;
  double intractable_green = 0.0;  // unconditional
  double intractable_red = 0.0;
};

ProbeSample probe_monte_carlo(const Scenario& scenario, std::int64_t w, std::int64_t samples,
                              std::uint64_t seed);

}  // namespace schelling
