#include "mms/interval.hpp"

#include <mpfr.h>

#include <algorithm>
#include <stdexcept>

namespace mms {

namespace {

Rational to_rational(const mpfr_t x) {
  BigInt mant;
  const mpfr_exp_t exp = mpfr_get_z_2exp(mant.get_mpz_t(), x);
  Rational r(mant);
  if (exp >= 0) {
    mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(exp));
  } else {
    mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(-exp));
  }
  r.canonicalize();
  return r;
}

// RAII holder for an mpfr_t.
class Mpfr {
 public:
  explicit Mpfr(unsigned bits) { mpfr_init2(v_, static_cast<mpfr_prec_t>(bits)); }
  ~Mpfr() { mpfr_clear(v_); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
  mpfr_ptr get() { return v_; }

 private:
  mpfr_t v_;
};

Interval enclose(unsigned bits, int (*fn)(mpfr_ptr, unsigned long, mpfr_rnd_t), unsigned long arg) {
  Mpfr lo(bits), hi(bits);
  fn(lo.get(), arg, MPFR_RNDD);
  fn(hi.get(), arg, MPFR_RNDU);
  return Interval(to_rational(lo.get()), to_rational(hi.get()));
}

int log_ui(mpfr_ptr out, unsigned long k, mpfr_rnd_t rnd) { return mpfr_log_ui(out, k, rnd); }

int exp_ui(mpfr_ptr out, unsigned long x, mpfr_rnd_t rnd) {
  mpfr_set_ui(out, x, MPFR_RNDN);
  return mpfr_exp(out, out, rnd);
}

}  // namespace

Interval::Interval(Rational lo, Rational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_ > hi_) throw std::invalid_argument("interval with lo > hi");
}

double Interval::approx() const { return Rational((lo_ + hi_) / 2).get_d(); }

Interval operator+(const Interval& a, const Interval& b) { return Interval(a.lo_ + b.lo_, a.hi_ + b.hi_); }

Interval operator-(const Interval& a, const Interval& b) { return Interval(a.lo_ - b.hi_, a.hi_ - b.lo_); }

Interval operator*(const Interval& a, const Interval& b) {
  const Rational c[] = {a.lo_ * b.lo_, a.lo_ * b.hi_, a.hi_ * b.lo_, a.hi_ * b.hi_};
  return Interval(*std::min_element(std::begin(c), std::end(c)), *std::max_element(std::begin(c), std::end(c)));
}

Interval operator/(const Interval& a, const Interval& b) {
  if (sgn(b.lo_) <= 0 && sgn(b.hi_) >= 0) throw std::domain_error("interval division by an interval containing 0");
  return a * Interval(1 / b.hi_, 1 / b.lo_);
}

Interval pow(const Interval& base, unsigned exponent) {
  Interval r(Rational(1));
  for (unsigned i = 0; i < exponent; ++i) r = r * base;
  return r;
}

Interval ln_enclosure(unsigned long k, unsigned bits) {
  if (k == 0) throw std::domain_error("ln(0)");
  return enclose(bits, log_ui, k);
}

Interval e_enclosure(unsigned bits) { return enclose(bits, exp_ui, 1); }

int compare(const Interval& x, const Rational& value) {
  if (x.hi() < value) return -1;
  if (x.lo() > value) return 1;
  return 0;
}

std::optional<BigInt> rigorous_floor(const std::function<Interval(unsigned)>& build) {
  for (unsigned bits = kMinPrecisionBits; bits <= kMaxPrecisionBits; bits *= 2) {
    const Interval x = build(bits);
    const BigInt lo = floor_of(x.lo());
    if (lo == floor_of(x.hi())) return lo;
  }
  return std::nullopt;
}

std::optional<BigInt> rigorous_ceil(const std::function<Interval(unsigned)>& build) {
  for (unsigned bits = kMinPrecisionBits; bits <= kMaxPrecisionBits; bits *= 2) {
    const Interval x = build(bits);
    const BigInt lo = ceil_of(x.lo());
    if (lo == ceil_of(x.hi())) return lo;
  }
  return std::nullopt;
}

std::optional<int> rigorous_compare(const std::function<Interval(unsigned)>& build, const Rational& value) {
  for (unsigned bits = kMinPrecisionBits; bits <= kMaxPrecisionBits; bits *= 2) {
    if (int c = compare(build(bits), value); c != 0) return c;
  }
  return std::nullopt;
}

BigInt floor_n_over_two_ln_k(long n, unsigned long k) {
  if (k < 2) throw std::domain_error("floor(n / 2 ln k) needs k >= 2");
  auto r = rigorous_floor([&](unsigned bits) {
    return Interval(Rational(n)) / (Interval(Rational(2)) * ln_enclosure(k, bits));
  });
  // n / (2 ln k) is irrational for k >= 2, n != 0, so the floor is always decided.
  if (!r) throw std::runtime_error("floor(n / 2 ln k) undecided");
  return *r;
}

BigInt ceil_k_over_ln_k(unsigned long k) {
  if (k < 2) throw std::domain_error("ceil(k / ln k) needs k >= 2");
  auto r = rigorous_ceil([&](unsigned bits) {
    return Interval(Rational(static_cast<long>(k))) / ln_enclosure(k, bits);
  });
  if (!r) throw std::runtime_error("ceil(k / ln k) undecided");
  return *r;
}

Interval thm2_threshold_enclosure(unsigned long k, unsigned bits) {
  const Interval four_e_ln_k = Interval(Rational(4)) * e_enclosure(bits) * ln_enclosure(k, bits);
  return Interval(Rational(static_cast<long>(k))) * pow(four_e_ln_k, static_cast<unsigned>(k));
}

bool exceeds_thm2_threshold(const BigInt& n, unsigned long k) {
  if (k < 2) return false;
  auto c = rigorous_compare([&](unsigned bits) { return thm2_threshold_enclosure(k, bits); }, Rational(n));
  if (!c) throw std::runtime_error("threshold comparison undecided");
  // threshold < n  <=>  compare(threshold, n) == -1
  return *c < 0;
}

}  // namespace mms
