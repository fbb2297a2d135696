#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mms/numerics.hpp"
#include "mms/random.hpp"

namespace mms {

using BinomialFn = std::function<BigInt(std::int64_t, std::int64_t)>;

struct CheckResult {
  std::string id;
  bool passed = false;
  std::string lhs;
  std::string rhs;
};

struct ReproduceOptions {
  std::uint64_t seed = 0;
  int workers = 0;
  BinomialFn binom = binomial;  // every target goes through this
  int soundness_trials = 1000;
};

struct ReproduceReport {
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;

  bool all_passed() const;
  std::vector<std::string> failing_ids() const;
  // Stable key order, no timestamps: identical runs give identical bytes.
  std::string to_json() const;
};

ReproduceReport reproduce_paper(const ReproduceOptions& options = {});

// Rational configuration of size n with non-negative total. Mixes uniform,
// star-like and mirror-like shapes so every extraction branch gets exercised.
Configuration random_configuration(Rng& rng, int n);

struct SoundnessSummary {
  std::int64_t configs = 0;
  std::int64_t witnesses = 0;     // explicit witnesses re-checked
  std::int64_t violations = 0;    // witnesses with a negative exact sum
  std::int64_t uncertified = 0;   // reports whose own certification failed
  std::int64_t skipped = 0;       // extractor declined (range infeasible)
};

// Random (n <= 40, k in {2,3,4}) configurations through extract_thm1,
// extract_thm2 (n >= 4k) and partition_lower_bound_witnesses (k | n), every
// explicit witness summed again with plain Rational arithmetic.
SoundnessSummary witness_soundness_suite(std::uint64_t seed, int trials, int workers = 0);

struct GuaranteeSummary {
  std::int64_t configs = 0;
  std::int64_t below_target = 0;
  std::int64_t uncertified = 0;
};

// extract_thm1 at k = 2 for every n in [n_lo, n_hi]: certified witness count
// must reach n - 1.
GuaranteeSummary thm1_k2_guarantee_suite(std::uint64_t seed, int n_lo, int n_hi, int per_n, int workers = 0,
                                         const BinomialFn& binom = binomial);

// Minimum number of non-negative pair sums over integer configurations in
// [-box, box]^n with non-negative total.
std::int64_t brute_force_min_pairs(int n, int box);

}  // namespace mms
