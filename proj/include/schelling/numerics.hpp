#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace schelling {

// --- Binomial tail probabilities --------------------------------------------

enum class TailDirection { AtLeast, AtMost, GreaterThan };

struct TailQuery {
  std::int64_t trials;   // N
  double p;              // success probability, in [0,1]
  std::int64_t cutoff;   // k
  TailDirection dir;
};

// P(X >= m) and P(X <= m) for X ~ Binomial(N, p).  Out-of-range cutoffs clamp
// to the trivial probability (these arise naturally when a tolerance pushes a
// count bound past the window size).  Computed by summing probability-mass
// terms outward from the largest one in log space with compensated summation;
// relative error stays comfortably below 1e-10 for N up to 1e6.
double binom_upper_tail(std::int64_t trials, double p, std::int64_t m);
double binom_lower_tail(std::int64_t trials, double p, std::int64_t m);

// Validated front end: cutoff must lie in [0, trials].
double binom_tail(const TailQuery& q);

// --- Analytic functions for the phase boundaries ----------------------------

// f(s) = (1/2 - s)^(1-2s) / (1-s)^(2(1-s)) on (0, 1/2], with the 0*log(0)
// limit giving f(1/2) = 2.  Strictly increasing; its level sets against
// 1/(2(1-rho)) and 1/(2 rho) define the static-region thresholds.
double eval_f(double s);

// g(x) = (x - 1/2)^(2x-1) / x^(2x) on (1/2, 1).  Satisfies g(x) = f(1-x).
double eval_g(double x);

// h(x,y) = exp([x ln x + (1-x)ln(1-x) - y ln y - (1-y)ln(1-y)] / (1-x-y)) on
// (0,1)^2.  Within 1e-6 of the line x+y=1 the removable singularity is
// replaced by its continuous extension (1-x)/x.  h(y,x) = 1/h(x,y).
double eval_h(double x, double y);

// Z(theta, rho) = 1 + theta^3 - 3 theta^2 + 3 theta^2 rho - 2 theta^3 rho.
double eval_Z(double theta, double rho);

// --- Root finding ------------------------------------------------------------

// Bisection on [lo, hi]: requires a sign change and finite evaluations,
// throws otherwise.  Stops when the bracket is narrower than tol (default
// 1e-12) or after 200 iterations, returning the bracket midpoint.
template <class F>
double bisect(F&& fn, double lo, double hi, double tol = 1e-12) {
  double flo = fn(lo);
  double fhi = fn(hi);
  if (!std::isfinite(flo) || !std::isfinite(fhi))
    throw std::domain_error("bisect: non-finite value at bracket endpoint");
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo < 0.0) == (fhi < 0.0))
    throw std::invalid_argument("bisect: no sign change over bracket");
  for (int iter = 0; iter < 200 && hi - lo > tol; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double fm = fn(mid);
    if (!std::isfinite(fm)) throw std::domain_error("bisect: non-finite value inside bracket");
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace schelling
