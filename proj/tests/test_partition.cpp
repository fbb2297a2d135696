#include <gtest/gtest.h>

#include <functional>

#include "mms/partition.hpp"
#include "mms/reproduce.hpp"

using namespace mms;

namespace {

// Backtracking oracle: greedily extend classes, undoing on dead ends. Only
// for tiny cases; used to confirm the class count, not the construction.
bool backtrack(int n, int k, std::vector<std::vector<std::uint32_t>>& classes, std::vector<bool>& used,
               const std::vector<std::uint32_t>& all, std::vector<std::uint32_t>& current, std::uint32_t covered,
               std::size_t target_classes) {
  const std::uint32_t full = (1u << n) - 1;
  if (covered == full) {
    classes.push_back(current);
    if (classes.size() == target_classes) return true;
    std::vector<std::uint32_t> next;
    if (backtrack(n, k, classes, used, all, next, 0, target_classes)) return true;
    classes.pop_back();
    return false;
  }
  int first_free = 0;
  while (covered >> first_free & 1u) ++first_free;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (used[i] || !(all[i] >> first_free & 1u) || (all[i] & covered)) continue;
    used[i] = true;
    current.push_back(all[i]);
    if (backtrack(n, k, classes, used, all, current, covered | all[i], target_classes)) return true;
    current.pop_back();
    used[i] = false;
  }
  return false;
}

std::size_t oracle_classes(int n, int k) {
  std::vector<std::uint32_t> all;
  for (std::uint32_t m = 0; m < (1u << n); ++m) {
    if (__builtin_popcount(m) == k) all.push_back(m);
  }
  const std::size_t target = all.size() * k / n;
  std::vector<std::vector<std::uint32_t>> classes;
  std::vector<bool> used(all.size(), false);
  std::vector<std::uint32_t> current;
  return backtrack(n, k, classes, used, all, current, 0, target) ? classes.size() : 0;
}

}  // namespace

TEST(Baranyai, ValidForManySizesAndSeeds) {
  const std::vector<std::pair<int, int>> cases{{4, 2}, {6, 2}, {10, 2}, {6, 3}, {9, 3}, {12, 3}, {15, 3},
                                               {8, 4}, {12, 4}, {10, 5}, {15, 5}, {12, 6}, {14, 7}, {5, 5}, {7, 1}};
  for (auto [n, k] : cases) {
    for (std::uint64_t seed : {0ull, 1ull, 99ull}) {
      const auto p = baranyai_partition(n, k, seed);
      const auto check = validate_partition(p);
      EXPECT_TRUE(check.ok) << n << " " << k << " " << seed << ": " << check.diagnostic;
      EXPECT_EQ(BigInt(static_cast<long>(p.classes.size())), binomial(n - 1, k - 1));
    }
  }
}

TEST(Baranyai, MatchesBacktrackingOracleCount) {
  for (auto [n, k] : std::vector<std::pair<int, int>>{{4, 2}, {6, 2}, {6, 3}, {8, 2}}) {
    EXPECT_EQ(oracle_classes(n, k), baranyai_partition(n, k).classes.size()) << n << " " << k;
  }
}

TEST(Baranyai, SeedsChangeTheConstruction) {
  const auto a = baranyai_partition(9, 3, 1);
  const auto b = baranyai_partition(9, 3, 2);
  bool differ = false;
  for (std::size_t i = 0; i < a.classes.size() && !differ; ++i) {
    differ = a.classes[i].blocks != b.classes[i].blocks;
  }
  EXPECT_TRUE(differ);
  const auto again = baranyai_partition(9, 3, 1);
  for (std::size_t i = 0; i < a.classes.size(); ++i) EXPECT_EQ(a.classes[i].blocks, again.classes[i].blocks);
}

TEST(Baranyai, RejectsBadInput) {
  EXPECT_THROW(baranyai_partition(7, 3), std::invalid_argument);
  EXPECT_THROW(baranyai_partition(0, 0), std::invalid_argument);
}

TEST(Validate, CatchesCorruption) {
  auto p = baranyai_partition(6, 3);
  ASSERT_TRUE(validate_partition(p).ok);
  auto missing = p;
  missing.classes.pop_back();
  EXPECT_FALSE(validate_partition(missing).ok);
  auto overlap = p;
  overlap.classes[0].blocks[1] = overlap.classes[0].blocks[0];
  EXPECT_FALSE(validate_partition(overlap).ok);
  auto duplicate = p;
  duplicate.classes[1] = duplicate.classes[0];
  EXPECT_FALSE(validate_partition(duplicate).ok);
}

TEST(PartitionWitnesses, AlwaysNonNegativeAndDistinct) {
  Rng rng(8);
  for (int trial = 0; trial < 300; ++trial) {
    const int k = 2 + static_cast<int>(uniform_below(rng, 3));
    const int n = k * (2 + static_cast<int>(uniform_below(rng, 3)));
    const auto config = random_configuration(rng, n);
    const auto family = partition_lower_bound_witnesses(config, k, trial);
    EXPECT_EQ(family.count(), binomial(n - 1, k - 1));
    for (const auto& s : family.members()) EXPECT_GE(ksum(config, s), 0);
  }
}

TEST(PartitionWitnesses, MaxBlockTieBreak) {
  Configuration zero(std::vector<Rational>(4, Rational(0)));
  ParallelClass pc{{KSubset{2, 4}, KSubset{1, 3}}};
  EXPECT_EQ(max_sum_block(zero, pc), (KSubset{1, 3}));
}

TEST(PartitionCache, ConcurrentCallsShareOneResult) {
  std::vector<std::shared_ptr<const BaranyaiPartition>> got(8);
#pragma omp parallel for num_threads(8)
  for (int i = 0; i < 8; ++i) got[i] = cached_partition(12, 4, 3);
  for (const auto& g : got) EXPECT_EQ(g, got[0]);
  EXPECT_TRUE(validate_partition(*got[0]).ok);
}

TEST(RandomParallelClass, IsAPartition) {
  Rng rng(4);
  for (int i = 0; i < 50; ++i) {
    const auto pc = random_parallel_class(3, 12, 4, rng);
    std::vector<int> seen;
    for (const auto& b : pc.blocks) seen.insert(seen.end(), b.indices().begin(), b.indices().end());
    std::sort(seen.begin(), seen.end());
    std::vector<int> want(12);
    std::iota(want.begin(), want.end(), 3);
    EXPECT_EQ(seen, want);
  }
}
