#include <gtest/gtest.h>

#include <sstream>

#include "mms/config_io.hpp"
#include "mms/numerics.hpp"
#include "mms/random.hpp"
#include "mms/reproduce.hpp"

using namespace mms;

namespace {

// Naive oracle: every k-subset by nested recursion, plain Rational sums.
long naive_count(const std::vector<Rational>& v, int k, int start = 0, Rational partial = 0) {
  if (k == 0) return sgn(partial) >= 0 ? 1 : 0;
  long total = 0;
  for (std::size_t i = static_cast<std::size_t>(start); i < v.size(); ++i) {
    total += naive_count(v, k - 1, static_cast<int>(i) + 1, partial + v[i]);
  }
  return total;
}

}  // namespace

TEST(Rational, ParsesAndCanonicalizes) {
  EXPECT_EQ(parse_rational("6/4"), Rational(3, 2));
  EXPECT_EQ(parse_rational("-7"), Rational(-7));
  EXPECT_EQ(parse_rational(" 2/-4 "), Rational(-1, 2));
  EXPECT_EQ(to_string(parse_rational("10/4")), "5/2");
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_THROW(parse_rational("abc"), ParseError);
  EXPECT_THROW(parse_rational(""), ParseError);
  EXPECT_EQ(floor_of(Rational(-3, 2)), -2);
  EXPECT_EQ(ceil_of(Rational(-3, 2)), -1);
}

TEST(Binomial, MatchesPascalTriangle) {
  std::vector<std::vector<BigInt>> t(61);
  for (int n = 0; n <= 60; ++n) {
    t[n].assign(n + 1, BigInt(1));
    for (int k = 1; k < n; ++k) t[n][k] = t[n - 1][k - 1] + t[n - 1][k];
    for (int k = 0; k <= n; ++k) EXPECT_EQ(binomial(n, k), t[n][k]) << n << " " << k;
  }
  EXPECT_EQ(binomial(5, 7), 0);
  EXPECT_EQ(binomial(5, -1), 0);
  EXPECT_EQ(binomial(5199, 2), BigInt(13512201));
}

TEST(Configuration, SortsNonIncreasingAndCachesTotal) {
  Configuration c{1, -3, 2, 0};
  EXPECT_EQ(c.size(), 4);
  EXPECT_EQ(c[1], 2);
  EXPECT_EQ(c[4], -3);
  EXPECT_EQ(c.total_sum(), 0);
  EXPECT_EQ(c.negative_count(), 1);
  EXPECT_THROW(c.at(0), std::out_of_range);
  EXPECT_THROW(c.at(5), std::out_of_range);
}

TEST(KSubset, RejectsBadIndices) {
  EXPECT_NO_THROW(KSubset({1, 2, 5}));
  EXPECT_THROW(KSubset({2, 1}), std::invalid_argument);
  EXPECT_THROW(KSubset({0, 1}), std::invalid_argument);
  EXPECT_THROW(KSubset({3, 3}), std::invalid_argument);
}

TEST(SubsetFamily, RejectsDuplicates) {
  SubsetFamily f(5, 2);
  EXPECT_TRUE(f.insert(KSubset{1, 2}));
  EXPECT_FALSE(f.insert(KSubset{1, 2}));
  EXPECT_EQ(f.count(), 1);
}

TEST(CountKernel, SmallStar) {
  // (3, -1, -1, -1) at k = 2: exactly the three pairs through the top.
  Configuration c{3, -1, -1, -1};
  const auto r = count_nonneg_ksums(c, 2);
  EXPECT_EQ(r.count, 3);
  EXPECT_EQ(r.family.count(), 3);
  EXPECT_TRUE(r.family.contains(KSubset{1, 4}));
}

TEST(CountKernel, ParallelSerialAndNaiveAgree) {
  Rng rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + static_cast<int>(uniform_below(rng, 12));
    const int k = 1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n)));
    const auto config = random_configuration(rng, n);
    const auto par = count_nonneg_ksums(config, k, {.workers = 4});
    const auto ser = count_nonneg_ksums_serial(config, k);
    EXPECT_EQ(par.count, ser.count);
    EXPECT_EQ(par.family.members(), ser.family.members());
    EXPECT_EQ(par.count, naive_count({config.values().begin(), config.values().end()}, k));
    for (const auto& s : par.family.members()) EXPECT_GE(ksum(config, s), 0);
  }
}

TEST(CountKernel, LargeValuesUseBigIntegers) {
  std::vector<Rational> v(6, Rational(BigInt("100000000000000000000000")));
  v[5] = Rational(BigInt("-500000000000000000000001"));
  Configuration c(v);
  EXPECT_EQ(count_nonneg_ksums(c, 2).count, count_nonneg_ksums_serial(c, 2).count);
}

TEST(CountKernel, BudgetExceeded) {
  Configuration c(std::vector<Rational>(40, Rational(1)));
  EXPECT_THROW(count_nonneg_ksums(c, 10, {.budget = 1000}), BudgetExceeded);
  EXPECT_THROW(count_nonneg_ksums(c, 41), std::invalid_argument);
}

TEST(Dominance, DominatingSetHasLargerSum) {
  Rng rng(5);
  for (int trial = 0; trial < 2000; ++trial) {
    const int n = 6 + static_cast<int>(uniform_below(rng, 6));
    const int k = 1 + static_cast<int>(uniform_below(rng, 4));
    const auto config = random_configuration(rng, n);
    const KSubset a(sample_combination(rng, 1, n, k));
    const KSubset b(sample_combination(rng, 1, n, k));
    if (gale_dominates(a, b)) EXPECT_GE(ksum(config, a), ksum(config, b));
    if (gale_dominates(a, b) && gale_dominates(b, a)) EXPECT_EQ(a, b);
  }
  EXPECT_THROW(gale_dominates(KSubset{1}, KSubset{1, 2}), std::invalid_argument);
}

TEST(Central, MatchesDefinition) {
  Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 5 + static_cast<int>(uniform_below(rng, 5));
    const int k = 2 + static_cast<int>(uniform_below(rng, 2));
    const auto config = random_configuration(rng, n);
    for (int i = 1; i <= n; ++i) {
      bool all = true;
      auto idx = first_combination(k);
      do {
        if (std::find(idx.begin(), idx.end(), i) != idx.end()) all = all && sgn(ksum(config, KSubset(idx))) >= 0;
      } while (next_combination(idx, n));
      EXPECT_EQ(is_central(config, i, k), all);
    }
  }
}

TEST(ConfigIO, RoundTripsAndReportsLines) {
  Configuration c(std::vector<Rational>{Rational(3, 2), -1, 0, Rational(-1, 3)});
  std::stringstream ss;
  write_configuration(ss, c);
  EXPECT_EQ(read_configuration(ss), c);

  std::stringstream with_comments("# header\n3\n\n  -1/2  # trailing\n1\n");
  EXPECT_EQ(read_configuration(with_comments), Configuration(std::vector<Rational>{3, Rational(-1, 2), 1}));

  std::stringstream bad("1\n2\nthree\n");
  try {
    read_configuration(bad);
    FAIL() << "expected a parse error";
  } catch (const ConfigParseError& e) {
    EXPECT_EQ(e.line(), 3);
  }
  std::stringstream empty("# nothing\n");
  EXPECT_THROW(read_configuration(empty), ConfigParseError);
}

TEST(Random, DeterministicHelpers) {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(uniform_below(a, 17), uniform_below(b, 17));
  Rng r(1);
  for (int i = 0; i < 200; ++i) {
    auto s = sample_combination(r, 3, 12, 4);
    ASSERT_EQ(s.size(), 4u);
    EXPECT_TRUE(std::is_sorted(s.begin(), s.end()));
    EXPECT_GE(s.front(), 3);
    EXPECT_LE(s.back(), 12);
  }
}
