#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mms/lp.hpp"
#include "mms/numerics.hpp"

namespace mms {

// Largest ground set [n]^(k) the exact solver accepts by default, and the
// hard representation limit.
inline constexpr int kExactSolverCap = 120;
inline constexpr int kExactSolverMaxUniverse = 256;

// An up-set of [n]^(k) under gale_dominates, given by its generators.
struct FilterFamily {
  int n = 0;
  int k = 0;
  std::vector<KSubset> minimal_elements;  // members dominating no other member
  SubsetFamily implied_members{1, 1};
  BigInt size;
};

// Builds the up-closure of `generators` (which need not be an antichain).
FilterFamily up_closure(int n, int k, const std::vector<KSubset>& generators);

struct FeasibilityCertificate {
  lp::Certificate certificate;
  std::vector<lp::Row> rows;
  std::optional<Configuration> witness_config;  // when feasible
  bool verified = false;
};

// Is there x_1 >= ... >= x_n with total >= 0, every member sum >= 0 and every
// non-member sum < 0? The system is positively homogeneous, so "< 0" may be
// normalized to "<= -1": any strict solution scales to one. Only generators
// and maximal non-members need rows; the rest follow by dominance.
FeasibilityCertificate lp_feasible(const FilterFamily& filter);

// The constraint rows used by lp_feasible.
std::vector<lp::Row> filter_constraints(const FilterFamily& filter);

struct SolverOptions {
  std::int64_t budget = 1'000'000;  // filters generated
  int cap = kExactSolverCap;
  int workers = 0;
};

struct SolverResult {
  int n = 0;
  int k = 0;
  BigInt A_value;
  FilterFamily optimal_family;
  std::optional<Configuration> optimal_config;
  std::int64_t nodes_explored = 0;
  std::int64_t lp_solved = 0;
  std::int64_t certificates_reused = 0;
  BigInt lower_cut;
  bool exact = false;  // false: budget ran out, A_value is an upper bound only
};

// Minimum of |F| over realizable filters F, searched level by level in
// increasing size so the first realizable level is optimal.
SolverResult exact_A(int n, int k, const SolverOptions& options = {});

enum class SearchStrategy { grid, anneal };

SearchStrategy parse_search_strategy(const std::string& text);

struct SearchOptions {
  int box = 0;           // grid: values in [-box, box]; 0 picks a default from n
  int iterations = 20'000;
  std::int64_t budget = kDefaultEnumerationBudget;
  int workers = 0;
};

struct SearchResult {
  BigInt count;
  Configuration config;
};

// Heuristic minimization of the non-negative k-sum count over configurations
// with non-negative total. The count is an upper bound on A(n, k).
SearchResult search_upper_bound(int n, int k, SearchStrategy strategy, std::uint64_t seed,
                                const SearchOptions& options = {});

// Non-negative k-sums of a configuration with at most three distinct values,
// counted from multiplicities.
BigInt count_nonneg_ksums_multiset(const std::vector<std::pair<Rational, int>>& value_counts, int k);

// Large-n stress inputs for the staged extractor: the best of a seeded family
// of three-level configurations at keeping stage maxima non-central.
struct AdversarialResult {
  Configuration config;
  int noncentral_stages = 0;
};
AdversarialResult adversarial_thm2_config(int n, int k, std::uint64_t seed, int candidates = 64);

// Number of leading stages (of floor(n/2k)) whose maximum is not central.
int leading_noncentral_stages(const Configuration& config, int k);

enum class Verdict { equality, counterexample, undecided };

std::string to_string(Verdict verdict);

struct SweepRow {
  int n = 0;
  int k = 0;
  BigInt target;
  BigInt lower;
  BigInt upper;
  std::optional<BigInt> exact_value;
  Verdict verdict = Verdict::undecided;
  std::string method;
  std::optional<Configuration> witness_config;
};

struct SweepOptions {
  SolverOptions solver;
  SearchOptions search;
  std::uint64_t seed = 0;
};

std::vector<SweepRow> verify_conjecture_range(int n_lo, int n_hi, int k, const SweepOptions& options = {});

}  // namespace mms
