#include "schelling/numerics.hpp"

#include <algorithm>
#include <numbers>

namespace schelling {

namespace {

// x * log(y) with the convention 0 * log(0) = 0 (continuity limit).
double xlogy(double x, double y) { return x == 0.0 ? 0.0 : x * std::log(y); }

// log(m!) - [(m + 1/2) log m - m + log(2 pi)/2], the Stirling remainder.
double stirlerr(double m) {
  constexpr double S0 = 1.0 / 12.0, S1 = 1.0 / 360.0, S2 = 1.0 / 1260.0,
                   S3 = 1.0 / 1680.0, S4 = 1.0 / 1188.0;
  if (m < 16.0)
    return std::lgamma(m + 1.0) - (m + 0.5) * std::log(m) + m -
           0.5 * std::log(2.0 * std::numbers::pi);
  const double mm = m * m;
  return (S0 - (S1 - (S2 - (S3 - S4 / mm) / mm) / mm) / mm) / m;
}

// x log(x/M) + M - x, evaluated without cancellation when x is near M.
double bd0(double x, double M) {
  if (std::fabs(x - M) < 0.1 * (x + M)) {
    const double v = (x - M) / (x + M);
    double s = (x - M) * v;
    double ej = 2.0 * x * v;
    const double v2 = v * v;
    for (int j = 1;; ++j) {
      ej *= v2;
      const double s1 = s + ej / (2 * j + 1);
      if (s1 == s) return s1;
      s = s1;
    }
  }
  return x * std::log(x / M) + M - x;
}

// log C(n,k) p^k (1-p)^(n-k) in saddle-point form.  A direct lgamma
// difference loses ~n ulps to cancellation (1e-10 of log at n = 1e5); this
// form keeps the absolute error of the log near machine epsilon for any n.
double log_pmf(std::int64_t n64, double p, std::int64_t k64) {
  const double n = static_cast<double>(n64);
  const double k = static_cast<double>(k64);
  if (k64 == 0) return n * std::log1p(-p);
  if (k64 == n64) return n * std::log(p);
  const double lc = stirlerr(n) - stirlerr(k) - stirlerr(n - k) -
                    bd0(k, n * p) - bd0(n - k, n * (1.0 - p));
  return lc - 0.5 * std::log(2.0 * std::numbers::pi * k * ((n - k) / n));
}

class KahanSum {
 public:
  void add(double v) {
    const double y = v - c_;
    const double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  double value() const { return s_; }

 private:
  double s_ = 0.0;
  double c_ = 0.0;
};

// Terms decay monotonically moving away from the mode, so once a term drops
// below kNegligible * sum the leftover contribution is below 1e-16 relative
// even with a million remaining terms.
constexpr double kNegligible = 1e-22;

}  // namespace

double binom_upper_tail(std::int64_t trials, double p, std::int64_t m) {
  if (trials < 0) throw std::invalid_argument("binom tail: negative trial count");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("binom tail: p outside [0,1]");
  if (m <= 0) return 1.0;
  if (m > trials) return 0.0;
  if (p == 0.0) return 0.0;
  if (p == 1.0) return 1.0;

  const std::int64_t mode =
      static_cast<std::int64_t>(std::floor(static_cast<double>(trials + 1) * p));
  const std::int64_t j0 = std::clamp(mode, m, trials);

  KahanSum sum;
  sum.add(1.0);  // term at j0, relative to itself
  double t = 1.0;
  for (std::int64_t j = j0 - 1; j >= m; --j) {
    // pmf(j)/pmf(j+1) = (j+1)(1-p) / ((n-j) p)
    t *= (static_cast<double>(j + 1) * (1.0 - p)) /
         (static_cast<double>(trials - j) * p);
    sum.add(t);
    if (t < kNegligible * sum.value()) break;
  }
  t = 1.0;
  for (std::int64_t j = j0 + 1; j <= trials; ++j) {
    // pmf(j)/pmf(j-1) = (n-j+1) p / (j (1-p))
    t *= (static_cast<double>(trials - j + 1) * p) /
         (static_cast<double>(j) * (1.0 - p));
    sum.add(t);
    if (t < kNegligible * sum.value()) break;
  }
  return std::min(1.0, std::exp(log_pmf(trials, p, j0) + std::log(sum.value())));
}

double binom_lower_tail(std::int64_t trials, double p, std::int64_t m) {
  if (trials < 0) throw std::invalid_argument("binom tail: negative trial count");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("binom tail: p outside [0,1]");
  if (m < 0) return 0.0;
  if (m >= trials) return 1.0;
  if (p == 0.0) return 1.0;
  if (p == 1.0) return 0.0;

  const std::int64_t mode =
      static_cast<std::int64_t>(std::floor(static_cast<double>(trials + 1) * p));
  const std::int64_t j0 = std::clamp(mode, std::int64_t{0}, m);

  KahanSum sum;
  sum.add(1.0);
  double t = 1.0;
  for (std::int64_t j = j0 + 1; j <= m; ++j) {
    t *= (static_cast<double>(trials - j + 1) * p) /
         (static_cast<double>(j) * (1.0 - p));
    sum.add(t);
    if (t < kNegligible * sum.value()) break;
  }
  t = 1.0;
  for (std::int64_t j = j0 - 1; j >= 0; --j) {
    t *= (static_cast<double>(j + 1) * (1.0 - p)) /
         (static_cast<double>(trials - j) * p);
    sum.add(t);
    if (t < kNegligible * sum.value()) break;
  }
  return std::min(1.0, std::exp(log_pmf(trials, p, j0) + std::log(sum.value())));
}

double binom_tail(const TailQuery& q) {
  if (q.cutoff < 0 || q.cutoff > q.trials)
    throw std::invalid_argument("binom tail: cutoff outside [0, trials]");
  switch (q.dir) {
    case TailDirection::AtLeast:
      return binom_upper_tail(q.trials, q.p, q.cutoff);
    case TailDirection::AtMost:
      return binom_lower_tail(q.trials, q.p, q.cutoff);
    case TailDirection::GreaterThan:
      return binom_upper_tail(q.trials, q.p, q.cutoff + 1);
  }
  throw std::logic_error("binom tail: bad direction");
}

double eval_f(double s) {
  if (!(s > 0.0 && s <= 0.5)) throw std::domain_error("eval_f: s outside (0, 1/2]");
  return std::exp(xlogy(1.0 - 2.0 * s, 0.5 - s) - xlogy(2.0 * (1.0 - s), 1.0 - s));
}

double eval_g(double x) {
  if (!(x > 0.5 && x < 1.0)) throw std::domain_error("eval_g: x outside (1/2, 1)");
  return std::exp(xlogy(2.0 * x - 1.0, x - 0.5) - xlogy(2.0 * x, x));
}

double eval_h(double x, double y) {
  if (!(x > 0.0 && x < 1.0 && y > 0.0 && y < 1.0))
    throw std::domain_error("eval_h: arguments outside (0,1)");
  const double d = 1.0 - (x + y);
  if (std::fabs(d) < 1e-6) return (1.0 - x) / x;
  const auto entropy = [](double v) { return xlogy(v, v) + xlogy(1.0 - v, 1.0 - v); };
  return std::exp((entropy(x) - entropy(y)) / d);
}

double eval_Z(double theta, double rho) {
  const double t2 = theta * theta;
  const double t3 = t2 * theta;
  return 1.0 + t3 - 3.0 * t2 + 3.0 * t2 * rho - 2.0 * t3 * rho;
}

}  // namespace schelling
