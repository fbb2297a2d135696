#include <gtest/gtest.h>

#include "mms/lp.hpp"
#include "mms/random.hpp"

using namespace mms;
using lp::Row;

namespace {

Row row(std::vector<long> coeffs, long rhs) {
  Row r;
  for (long c : coeffs) r.coeffs.emplace_back(c);
  r.rhs = rhs;
  return r;
}

}  // namespace

TEST(Simplex, FeasibleSystemGivesVerifiedPoint) {
  // x + y <= 4, -x <= -1, -y <= -1
  const std::vector<Row> rows{row({1, 1}, 4), row({-1, 0}, -1), row({0, -1}, -1)};
  const auto c = lp::decide(rows, 2);
  EXPECT_TRUE(c.feasible);
  EXPECT_TRUE(lp::verify(rows, 2, c));
  EXPECT_TRUE(lp::fourier_motzkin_feasible(rows, 2));
}

TEST(Simplex, InfeasibleSystemGivesFarkasCertificate) {
  // x <= 1 and -x <= -2
  const std::vector<Row> rows{row({1}, 1), row({-1}, -2)};
  const auto c = lp::decide(rows, 1);
  EXPECT_FALSE(c.feasible);
  EXPECT_TRUE(lp::verify(rows, 1, c));
  EXPECT_FALSE(lp::fourier_motzkin_feasible(rows, 1));
}

TEST(Simplex, TamperedCertificatesFailVerification) {
  const std::vector<Row> rows{row({1}, 1), row({-1}, -2)};
  auto c = lp::decide(rows, 1);
  ASSERT_FALSE(c.feasible);
  c.multipliers[0] = 0;
  EXPECT_FALSE(lp::verify(rows, 1, c));
  lp::Certificate bogus;
  bogus.feasible = true;
  bogus.point = {Rational(5)};
  EXPECT_FALSE(lp::verify(rows, 1, bogus));
}

TEST(Simplex, AgreesWithFourierMotzkinOnRandomSystems) {
  Rng rng(21);
  int feasible = 0, infeasible = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const int dims = 1 + static_cast<int>(uniform_below(rng, 4));
    const int m = 1 + static_cast<int>(uniform_below(rng, 7));
    std::vector<Row> rows;
    for (int i = 0; i < m; ++i) {
      Row r;
      for (int j = 0; j < dims; ++j) r.coeffs.emplace_back(static_cast<long>(uniform_below(rng, 7)) - 3);
      r.rhs = static_cast<long>(uniform_below(rng, 9)) - 4;
      rows.push_back(r);
    }
    const auto c = lp::decide(rows, dims);
    EXPECT_TRUE(lp::verify(rows, dims, c));
    EXPECT_EQ(c.feasible, lp::fourier_motzkin_feasible(rows, dims));
    (c.feasible ? feasible : infeasible)++;
  }
  EXPECT_GT(feasible, 20);
  EXPECT_GT(infeasible, 20);
}

TEST(Simplex, DegenerateAndEmpty) {
  EXPECT_TRUE(lp::decide({}, 2).feasible);
  // Repeated constraints, zero rows.
  const std::vector<Row> rows{row({1, 1}, 0), row({1, 1}, 0), row({0, 0}, 0), row({-1, -1}, 0)};
  const auto c = lp::decide(rows, 2);
  EXPECT_TRUE(c.feasible);
  EXPECT_TRUE(lp::verify(rows, 2, c));
  EXPECT_FALSE(lp::decide({row({0, 0}, -1)}, 2).feasible);
}
