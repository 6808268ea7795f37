#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace schelling {

// Exact rational number over int64.  Always stored reduced with a positive
// denominator, so equality is bitwise and comparisons never allocate.
// Intermediate products run through __int128; a result that cannot be
// reduced back into int64 throws std::overflow_error rather than wrapping.
class Rational {
 public:
  constexpr Rational() : num_(0), den_(1) {}

  Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const std::int64_t g = std::gcd(num, den);
    num_ = g ? num / g : num;
    den_ = g ? den / g : den;
  }

  static Rational from_int(std::int64_t v) { return Rational(v, 1); }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  // Largest integer <= num/den (floor division, exact for negatives too).
  std::int64_t floor() const {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
  }

  std::int64_t ceil() const {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ > 0) ++q;
    return q;
  }

  Rational operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    const __int128 n = i128(a.num_) * b.den_ + i128(b.num_) * a.den_;
    const __int128 d = i128(a.den_) * b.den_;
    return make_reduced(n, d);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    const __int128 n = i128(a.num_) * b.den_ - i128(b.num_) * a.den_;
    const __int128 d = i128(a.den_) * b.den_;
    return make_reduced(n, d);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return make_reduced(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
    return make_reduced(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  // "p/q", or just "p" when the denominator is 1.
  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  // Inverse of str(): accepts "p" or "p/q".
  static Rational parse(const std::string& text);

 private:
  using i128 = __int128;

  static Rational make_reduced(__int128 n, __int128 d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    const __int128 g = gcd128(n < 0 ? -n : n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    constexpr __int128 kMax = INT64_MAX;
    if (n > kMax || n < -kMax || d > kMax)
      throw std::overflow_error("Rational: result exceeds 64-bit range");
    Rational r;
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
  }

  static __int128 gcd128(__int128 a, __int128 b) {
    while (b != 0) {
      const __int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  std::int64_t num_;
  std::int64_t den_;
};

inline Rational Rational::parse(const std::string& text) {
  std::int64_t n = 0;
  std::int64_t d = 1;
  try {
    std::size_t used = 0;
    const auto slash = text.find('/');
    if (slash == std::string::npos) {
      n = std::stoll(text, &used);
      if (used != text.size()) throw std::invalid_argument("trailing characters");
    } else {
      n = std::stoll(text.substr(0, slash), &used);
      if (used != slash) throw std::invalid_argument("trailing characters");
      const std::string dpart = text.substr(slash + 1);
      d = std::stoll(dpart, &used);
      if (used != dpart.size()) throw std::invalid_argument("trailing characters");
    }
  } catch (const std::exception&) {
    throw std::invalid_argument("Rational: cannot parse '" + text + "'");
  }
  return Rational(n, d);  // zero denominator still surfaces as domain_error
}

}  // namespace schelling
