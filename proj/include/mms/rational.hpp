#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mms {

// Exact arithmetic is GMP-backed. mpq_class keeps every value in lowest
// terms with a positive denominator once canonicalized.
using BigInt = mpz_class;
using Rational = mpq_class;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Accepts "p", "p/q", "-p/q" with optional surrounding whitespace.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& value);
std::string to_string(const BigInt& value);

BigInt floor_of(const Rational& value);
BigInt ceil_of(const Rational& value);

// Exact integer power with a non-negative exponent.
Rational pow(const Rational& base, unsigned exponent);
BigInt pow(const BigInt& base, unsigned exponent);

inline BigInt big(std::int64_t v) { return BigInt(static_cast<long>(v)); }

}  // namespace mms
