#include <gtest/gtest.h>

#include <set>

#include "mms/constructions.hpp"
#include "mms/reproduce.hpp"
#include "mms/witness.hpp"

using namespace mms;

namespace {

void expect_sound(const Configuration& config, const WitnessReport& r) {
  EXPECT_TRUE(r.certified);
  for (const auto& c : r.checks) EXPECT_TRUE(c.holds) << c.name;
  for (const auto& p : r.parts) {
    if (!p.family.is_explicit()) continue;
    EXPECT_EQ(p.family.count(), p.formula_count) << p.name;
    for (const auto& s : p.family.members()) EXPECT_GE(ksum(config, s), 0) << p.name;
  }
  for (const auto& s : r.samples) EXPECT_GE(ksum(config, s), 0);
}

}  // namespace

TEST(TopElementBound, BoundHoldsAndRejectsBadInput) {
  Rng rng(2);
  for (int t = 0; t < 200; ++t) {
    const int n = 4 + static_cast<int>(uniform_below(rng, 20));
    const auto config = random_configuration(rng, n);
    for (int j = 1; j < n; ++j) EXPECT_GE(config[1], eq2_bound(config, j));
  }
  EXPECT_THROW(eq2_bound(Configuration{1, 2, 3}, 3), std::out_of_range);
  EXPECT_THROW(eq2_bound(Configuration{1, -5, 3}, 1), std::invalid_argument);
}

TEST(Thm1, StarHitsCentralAtTop) {
  const auto star = star_config(40, 2);
  const auto r = extract_thm1(star.config, 2);
  EXPECT_EQ(r.branch, WitnessBranch::central_at_top);
  EXPECT_EQ(r.witnesses.count(), 39);
  EXPECT_TRUE(r.meets_target);
  EXPECT_TRUE(r.in_theorem_range);
  expect_sound(star.config, r);
}

TEST(Thm1, MirrorHitsFewNegatives) {
  const auto mirror = mirror_config(40, 2);
  const auto r = extract_thm1(mirror.config, 2);
  EXPECT_EQ(r.branch, WitnessBranch::few_negatives);
  EXPECT_EQ(r.witnesses.count(), binomial(39, 2));
  expect_sound(mirror.config, r);
}

TEST(Thm1, ManyNegativesUsesPartitionAndTopZone) {
  // Top element not central, at least 2k negatives.
  std::vector<Rational> v(33, Rational(1));
  for (int i = 25; i < 33; ++i) v[i] = Rational(-3);
  Configuration c(v);
  ASSERT_GE(c.total_sum(), 0);
  const auto r = extract_thm1(c, 2);
  EXPECT_EQ(r.branch, WitnessBranch::trim_and_partition_plus_top_zone);
  EXPECT_GE(r.witnesses.count(), 32);
  EXPECT_GT(r.trimmed_size, 0);
  expect_sound(c, r);
}

TEST(Thm1, AllBranchesAppearOnRandomInputs) {
  Rng rng(17);
  std::set<WitnessBranch> seen;
  for (int t = 0; t < 400; ++t) {
    const int k = 2 + static_cast<int>(uniform_below(rng, 2));
    const int n = 2 * k + 1 + static_cast<int>(uniform_below(rng, 30));
    const auto config = random_configuration(rng, n);
    const auto r = extract_thm1(config, k);
    seen.insert(r.branch);
    expect_sound(config, r);
  }
  EXPECT_EQ(seen.size(), 3u);
}

TEST(Thm1, CountedModeCertifiesBySampling) {
  Rng rng(6);
  for (int t = 0; t < 50; ++t) {
    const auto config = random_configuration(rng, 36);
    WitnessOptions o;
    o.mode = WitnessMode::counted;
    o.sample_size = 200;
    const auto r = extract_thm1(config, 3, o);
    EXPECT_FALSE(r.witnesses.is_explicit());
    EXPECT_EQ(r.samples.size(), 200u * r.parts.size());
    expect_sound(config, r);
  }
}

TEST(Thm1, GuaranteeAtKTwoInRange) {
  const auto s = thm1_k2_guarantee_suite(5, 32, 40, 20);
  EXPECT_EQ(s.below_target, 0);
  EXPECT_EQ(s.uncertified, 0);
}

TEST(Thm2, StarCentralAtFirstStage) {
  const auto star = star_config(24, 3);
  const auto r = extract_thm2(star.config, 3);
  EXPECT_EQ(r.branch, WitnessBranch::central_at_stage_i);
  EXPECT_EQ(r.witnesses.count(), binomial(23, 2));
  ASSERT_FALSE(r.trace.empty());
  EXPECT_TRUE(r.trace.front().central);
  expect_sound(star.config, r);
}

TEST(Thm2, StageTraceShape) {
  Rng rng(9);
  for (int t = 0; t < 100; ++t) {
    const auto config = random_configuration(rng, 40);
    WitnessReport r;
    try {
      r = extract_thm2(config, 3);
    } catch (const RangeInfeasible&) {
      continue;
    }
    for (std::size_t i = 0; i < r.trace.size(); ++i) {
      const auto& s = r.trace[i];
      EXPECT_EQ(s.stage_index, static_cast<int>(i) + 1);
      EXPECT_EQ(s.stage_set_size, 40 - static_cast<int>(i) * 3);
      EXPECT_EQ(s.removed_bottom, static_cast<int>(i) * 2);
      if (i + 1 < r.trace.size()) EXPECT_FALSE(s.central);
    }
    expect_sound(config, r);
  }
}

TEST(Thm2, SubstitutionFamilyIsNonNegative) {
  const auto star = star_config(30, 3);
  const auto f = substitution_family(star.config, 1, 3);
  EXPECT_EQ(f.count(), binomial(29, 2));
  for (const auto& s : f.members()) EXPECT_GE(ksum(star.config, s), 0);
  EXPECT_THROW(substitution_family(mirror_config(30, 3).config, 1, 3), std::invalid_argument);
}

TEST(Thm2, RejectsSmallN) { EXPECT_THROW(extract_thm2(star_config(11, 3).config, 3), std::invalid_argument); }

TEST(Violations, ParallelMatchesSerial) {
  Rng rng(13);
  for (int t = 0; t < 50; ++t) {
    const auto config = random_configuration(rng, 30);
    std::vector<KSubset> sets;
    for (int i = 0; i < 500; ++i) sets.emplace_back(sample_combination(rng, 1, 30, 4));
    EXPECT_EQ(count_violations(config, sets, 4), count_violations_serial(config, sets));
  }
}

TEST(Witness, ModeParsing) {
  EXPECT_EQ(parse_witness_mode("explicit"), WitnessMode::explicit_only);
  EXPECT_EQ(parse_witness_mode("counted"), WitnessMode::counted);
  EXPECT_THROW(parse_witness_mode("lazy"), std::invalid_argument);
  EXPECT_THROW(extract_thm1(Configuration{-1, -1, -1, -1, -1}, 2), std::invalid_argument);
}
