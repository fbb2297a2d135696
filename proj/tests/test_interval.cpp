#include <gtest/gtest.h>

#include "mms/interval.hpp"

using namespace mms;

namespace {

// Decimal truncations of the constants, 30 digits.
Rational decimal(const char* digits, int scale) {
  return Rational(BigInt(digits), pow(BigInt(10), static_cast<unsigned>(scale)));
}

bool contains(const Interval& x, const Rational& v) { return x.lo() <= v && v <= x.hi(); }

}  // namespace

TEST(Interval, EnclosesKnownConstants) {
  const Rational e_lo = decimal("2718281828459045235360287471352", 30);
  const Rational ln2_lo = decimal("693147180559945309417232121458", 30);
  const Rational ln3_lo = decimal("1098612288668109691395245236922", 30);
  const Rational ulp = decimal("1", 30);
  for (unsigned bits : {64u, 128u, 512u}) {
    const auto e = e_enclosure(bits);
    EXPECT_TRUE(e.lo() <= e_lo + ulp && e_lo <= e.hi());
    EXPECT_TRUE(ln_enclosure(2, bits).lo() <= ln2_lo + ulp && ln2_lo <= ln_enclosure(2, bits).hi());
    EXPECT_TRUE(ln_enclosure(3, bits).lo() <= ln3_lo + ulp && ln3_lo <= ln_enclosure(3, bits).hi());
  }
  EXPECT_LT(e_enclosure(512).width(), e_enclosure(64).width());
  EXPECT_EQ(ln_enclosure(1, 64).lo(), 0);
  EXPECT_EQ(ln_enclosure(1, 64).hi(), 0);
}

TEST(Interval, ArithmeticEncloses) {
  const Interval a(Rational(1), Rational(2));
  const Interval b(Rational(-3), Rational(1, 2));
  EXPECT_TRUE(contains(a * b, Rational(-6)));
  EXPECT_TRUE(contains(a * b, Rational(1)));
  EXPECT_TRUE(contains(a - b, Rational(5)));
  EXPECT_EQ(pow(a, 3).hi(), 8);
  EXPECT_THROW(a / b, std::domain_error);
  EXPECT_THROW(Interval(Rational(2), Rational(1)), std::invalid_argument);
}

TEST(Interval, CompareDecidesOrDefers) {
  const Interval x(Rational(1), Rational(2));
  EXPECT_EQ(compare(x, Rational(3)), -1);
  EXPECT_EQ(compare(x, Rational(0)), 1);
  EXPECT_EQ(compare(x, Rational(3, 2)), 0);
}

TEST(Interval, DerivedIntegers) {
  // n / (2 ln 3) for n = 5200: 2366.6...
  EXPECT_EQ(floor_n_over_two_ln_k(5200, 3), 2366);
  // 3 / ln 3 = 2.73..., 10 / ln 10 = 4.34...
  EXPECT_EQ(ceil_k_over_ln_k(3), 3);
  EXPECT_EQ(ceil_k_over_ln_k(10), 5);
  const auto t3 = thm2_threshold_enclosure(3, 256);
  EXPECT_GT(t3.lo(), 5113);
  EXPECT_LT(t3.hi(), 5114);
  EXPECT_TRUE(exceeds_thm2_threshold(BigInt(5200), 3));
  EXPECT_FALSE(exceeds_thm2_threshold(BigInt(5113), 3));
  EXPECT_TRUE(exceeds_thm2_threshold(BigInt(5114), 3));
}

TEST(Interval, RigorousFloorOfIntegerValuedExpressionIsUndecided) {
  // An exact integer enclosed by shrinking intervals never separates from it.
  const auto f = rigorous_floor([](unsigned bits) {
    const Rational eps = Rational(1, pow(BigInt(2), bits));
    return Interval(Rational(3) - eps, Rational(3) + eps);
  });
  EXPECT_FALSE(f.has_value());
  const auto g = rigorous_floor([](unsigned bits) { return ln_enclosure(10, bits); });
  ASSERT_TRUE(g.has_value());
  EXPECT_EQ(*g, 2);
}
