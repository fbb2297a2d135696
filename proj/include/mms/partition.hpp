#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "mms/numerics.hpp"
#include "mms/random.hpp"

namespace mms {

// Largest C(n, k) for which a partition is built explicitly.
inline constexpr std::int64_t kPartitionSizeLimit = 10'000;

// n/k pairwise disjoint k-sets covering [n].
struct ParallelClass {
  std::vector<KSubset> blocks;
};

// [n]^(k) split into C(n-1, k-1) parallel classes (requires k | n).
struct BaranyaiPartition {
  int n = 0;
  int k = 0;
  std::uint64_t seed = 0;
  std::vector<ParallelClass> classes;
};

// k = 2 uses the circle method. k >= 3 grows the classes one element at a
// time, choosing which partial block receives the next element via an
// integral max-flow (Baranyai's rounding argument). The seed permutes labels
// and edge order, so different seeds give different valid partitions.
BaranyaiPartition baranyai_partition(int n, int k, std::uint64_t seed = 0);

// Memoized baranyai_partition; safe to call from several threads.
std::shared_ptr<const BaranyaiPartition> cached_partition(int n, int k, std::uint64_t seed = 0);

struct PartitionCheck {
  bool ok = true;
  std::string diagnostic;  // first violated condition when !ok
  explicit operator bool() const { return ok; }
};

PartitionCheck validate_partition(const BaranyaiPartition& partition);

bool partition_within_limit(int n, int k);

// Maximum-sum block of a class; ties go to the lexicographically smallest.
const KSubset& max_sum_block(const Configuration& config, const ParallelClass& parallel_class);

// One non-negative block per parallel class: C(n-1, k-1) distinct witnesses.
SubsetFamily partition_lower_bound_witnesses(const Configuration& config, int k, std::uint64_t seed = 0);

// A uniformly random parallel class of [lo, lo+n-1] (random permutation cut
// into consecutive blocks).
ParallelClass random_parallel_class(int lo, int n, int k, Rng& rng);

}  // namespace mms
