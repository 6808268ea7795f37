#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "schelling/dynamics.hpp"
#include "schelling/ring.hpp"

namespace schelling {

// Plain-text run-length format, stable across versions:
//
//   ring v1
//   n 31
//   w 2
//   seed 12345
//   rho 0.5
//   tau_g 3/10
//   tau_r 7/10
//   colors G5 R3 G1 R22
//   end
//
// `colors` lists runs walking forward from node 0 (letter G/R, then run
// length); runs must alternate and sum to n.  rho uses the shortest decimal
// that round-trips the double exactly.  The seed is provenance only (0 when
// unknown) — the colours are authoritative.
std::string ring_to_text(const Ring& ring, std::uint64_t seed = 0);

struct ParsedRing {
  std::uint64_t seed;
  Ring ring;
};

// Inverse of ring_to_text.  Throws std::invalid_argument naming the offending
// line on malformed input.
ParsedRing ring_from_text(const std::string& text);

// Structured-text run log:
//
//   runrecord v1
//   n 31
//   w 2
//   seed 12345
//   rho 0.5
//   tau_g 3/10
//   tau_r 7/10
//   dynamic selective
//   max_steps 1550
//   initial_green 14
//   final_green 31
//   changed_nodes 17
//   steps 40
//   termination finished
//   initial G5 R3 G1 R22
//   events 2
//   1 7 G
//   2 12 R
//   end
//
// `termination` is finished | cap | cycle:PERIOD.  `initial` (run-length,
// as in the ring format) and the `events` block are present only when the
// run logged events; each event line is "time node colour-letter" with times
// non-decreasing.  The final colouring is reproducible by replaying events
// over the initial colours, so it is not stored.
std::string record_to_text(const RunRecord& record);
RunRecord record_from_text(const std::string& text);

}  // namespace schelling
