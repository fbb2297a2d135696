#include <gtest/gtest.h>

#include "mms/constructions.hpp"

using namespace mms;

TEST(Constructions, StarAndMirrorMatchPredictions) {
  for (int n = 3; n <= 14; ++n) {
    for (int k = 1; k < n; ++k) {
      const auto star = star_config(n, k);
      EXPECT_EQ(star.config.total_sum(), 0);
      EXPECT_EQ(count_nonneg_ksums(star.config, k).count, star.predicted_count) << n << " " << k;
      const auto mirror = mirror_config(n, k);
      EXPECT_EQ(mirror.config.total_sum(), 0);
      EXPECT_EQ(count_nonneg_ksums(mirror.config, k).count, mirror.predicted_count) << n << " " << k;
    }
  }
}

TEST(Constructions, CounterexampleFamily) {
  for (int k = 2; k <= 6; ++k) {
    const auto c = mms_counterexample(k);
    EXPECT_EQ(c.n, 3 * k + 1);
    EXPECT_EQ(c.config.size(), 3 * k + 1);
    EXPECT_GE(c.config.total_sum(), 0);
    EXPECT_EQ(count_nonneg_ksums(c.config, k).count, binomial(3 * k - 2, k));
    EXPECT_EQ(c.predicted_count, binomial(3 * k - 2, k));
  }
  EXPECT_EQ(count_nonneg_ksums(mms_counterexample(3).config, 3).count, 35);
  EXPECT_EQ(count_nonneg_ksums(mms_counterexample(5).config, 5).count, 1287);
  EXPECT_THROW(mms_counterexample(1), std::invalid_argument);
}

TEST(Constructions, ClosedFormAgreesWithBinomials) {
  for (int k = 2; k <= 40; ++k) {
    EXPECT_EQ(counterexample_beats_target(k), counterexample_beats_target_closed_form(k)) << k;
  }
  EXPECT_FALSE(counterexample_beats_target(2));
  EXPECT_TRUE(counterexample_beats_target(3));
}

TEST(Constructions, NameParsing) {
  EXPECT_EQ(parse_construction_name("counterexample"), ConstructionName::mms_counterexample);
  EXPECT_EQ(parse_construction_name("star"), ConstructionName::star);
  EXPECT_THROW(parse_construction_name("moon"), std::invalid_argument);
  EXPECT_THROW(star_config(3, 4), std::invalid_argument);
}
