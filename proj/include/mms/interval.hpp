#pragma once

#include <functional>
#include <optional>

#include "mms/rational.hpp"

namespace mms {

// A closed interval [lo, hi] with exact rational endpoints that encloses a
// real number. Transcendental inputs come from MPFR with outward rounding;
// everything after that is exact.
class Interval {
 public:
  Interval() = default;
  explicit Interval(const Rational& point) : lo_(point), hi_(point) {}
  Interval(Rational lo, Rational hi);

  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  Rational width() const { return hi_ - lo_; }
  double approx() const;

  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  // Divisor must not contain zero.
  friend Interval operator/(const Interval& a, const Interval& b);

 private:
  Rational lo_ = 0;
  Rational hi_ = 0;
};

Interval pow(const Interval& base, unsigned exponent);

// Enclosures of ln(k) (k >= 1) and e at the given working precision in bits.
Interval ln_enclosure(unsigned long k, unsigned bits);
Interval e_enclosure(unsigned bits);

// -1 / 0 / +1 when the interval lies wholly below / contains / lies wholly
// above `value`. Zero means undecided at this precision.
int compare(const Interval& x, const Rational& value);

inline constexpr unsigned kMinPrecisionBits = 64;
inline constexpr unsigned kMaxPrecisionBits = 1 << 14;

// Re-evaluates `build` at increasing precision until the floor (ceil) of the
// enclosed real is determined. Empty if still ambiguous at kMaxPrecisionBits,
// which happens only when the real is an integer the enclosure cannot pin.
std::optional<BigInt> rigorous_floor(const std::function<Interval(unsigned)>& build);
std::optional<BigInt> rigorous_ceil(const std::function<Interval(unsigned)>& build);

// Sign of (real - value): -1, +1, or nullopt when undecided at max precision.
std::optional<int> rigorous_compare(const std::function<Interval(unsigned)>& build, const Rational& value);

// floor(n / (2 ln k)) and ceil(k / ln k), the integer parameters derived from
// natural logarithms in the two-range construction. k >= 2.
BigInt floor_n_over_two_ln_k(long n, unsigned long k);
BigInt ceil_k_over_ln_k(unsigned long k);

// Enclosure of k (4 e ln k)^k.
Interval thm2_threshold_enclosure(unsigned long k, unsigned bits);

// True iff n > k (4 e ln k)^k, decided rigorously.
bool exceeds_thm2_threshold(const BigInt& n, unsigned long k);

}  // namespace mms
