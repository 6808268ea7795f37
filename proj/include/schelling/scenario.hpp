#pragma once

#include <cctype>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "schelling/rational.hpp"

namespace schelling {

// A tolerance is an exact rational strictly between 0 and 1 with denominator
// at most 10^9.  The denominator cap keeps every happiness comparison
// (denominator * count vs numerator * neighbourhood size) inside int64.
constexpr std::int64_t kMaxToleranceDen = 1000000000;

inline bool is_valid_tolerance(const Rational& r) {
  return r.num() > 0 && r.num() < r.den() && r.den() <= kMaxToleranceDen;
}

inline Rational checked_tolerance(const Rational& r) {
  if (!is_valid_tolerance(r))
    throw std::invalid_argument("tolerance must be in (0,1) with denominator <= 1e9, got " +
                                r.str());
  return r;
}

// Parse a decimal string like "0.38" or ".425" into an exact tolerance.
// At most 9 fractional digits, value strictly inside (0,1).  This is the only
// path from user text to a tolerance: no doubles involved, so "0.1" really is
// 1/10 and threshold comparisons land exactly where the digits say.
inline Rational parse_tolerance(const std::string& text) {
  const auto fail = [&text]() -> void {
    throw std::invalid_argument("malformed tolerance '" + text + "'");
  };
  std::size_t i = 0;
  if (i < text.size() && text[i] == '0') ++i;  // optional leading zero
  if (i >= text.size() || text[i] != '.') fail();
  ++i;
  if (i >= text.size()) fail();  // need at least one digit after the point
  std::int64_t num = 0;
  std::int64_t den = 1;
  int digits = 0;
  for (; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) fail();
    if (++digits > 9) throw std::invalid_argument("tolerance '" + text + "' has more than 9 fractional digits");
    num = num * 10 + (text[i] - '0');
    den *= 10;
  }
  if (num == 0) throw std::invalid_argument("tolerance '" + text + "' is not inside (0,1)");
  return Rational(num, den);  // reduces; num < den by construction
}

// Model parameters shared by every run: initial green density rho and the
// two happiness tolerances.  rho is a plain double (it only ever feeds the
// initial coin flips and the analytic formulas); the tolerances stay exact.
struct Scenario {
  double rho;
  Rational tau_g;
  Rational tau_r;

  Scenario(double rho_, Rational tau_g_, Rational tau_r_)
      : rho(rho_), tau_g(checked_tolerance(tau_g_)), tau_r(checked_tolerance(tau_r_)) {
    if (!(rho > 0.0 && rho < 1.0))
      throw std::invalid_argument("rho must be strictly inside (0,1)");
  }
};

}  // namespace schelling
