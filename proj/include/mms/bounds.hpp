#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mms/interval.hpp"
#include "mms/rational.hpp"

namespace mms {

// Exact verdict on one inequality lhs (relation) rhs.
struct BoundReport {
  std::string name;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::string relation = ">=";  // ">=" or ">"
  Rational lhs;
  Rational rhs;
  Rational margin;  // lhs - rhs
  bool holds = false;
  bool precondition_ok = true;
  bool cross_checked = false;  // an independent evaluation of lhs agreed
  std::string note;
  std::vector<BoundReport> steps;
};

// (p - q)^m >= p^m - m p^(m-1) q, under the first-term-dominates condition
// p > m q. A violated precondition is reported, not raised.
BoundReport unimodal_gap_lb(const Rational& p, const Rational& q, int m);

// (n - 3k)^(k-1) + (n/k - k)^(k-1) >= n^(k-1) with n/k kept rational, plus
// the chained lower bound and its equivalence with n >= 3k^(k+1) + k^3.
BoundReport thm1_threshold_check(const BigInt& n, int k);

// (p+1)(n - k(p+1))^(k-1) > n^(k-1), with the regime-specific sufficient
// conditions for p < n/k^2 and n/k^2 <= p.
BoundReport thm2_stage_check(const BigInt& n, int k, int p);

// 2 C(n-k-1, k-1) > C(n-1, k-1).
BoundReport thm2_p1_binomial_check(long n, int k);

// (p+1) C(n-kp-1, k-1) > C(n-1, k-1).
BoundReport stage_binomial_check(long n, int k, int p);

// C(n-2k, k) > C(n-1, k-1): the few-negatives branch beats the target.
BoundReport few_negatives_check(long n, int k);

// C(floor(n/2k), a) C(floor(n / 2 ln k), k - a) >= C(n-1, k-1) for the
// two-range family (a = ceil(k / ln k) clamped to [1, k-1]).
BoundReport two_range_count_check(long n, int k);

// Number of p in [1, floor(n/2k)] where thm2_stage_check fails. Parallel
// kernel and serial reference.
long thm2_stage_failures(const BigInt& n, int k, int workers = 0);
long thm2_stage_failures_serial(const BigInt& n, int k);

struct FBoundValues {
  int k = 0;
  BigInt old_bound;       // (k-1)(k^k + k^2) + k
  Interval new_bound;     // k (4 e ln k)^k, rigorous enclosure
  double new_bound_float = 0;  // approximate, for display only
  int comparison = 0;     // sign(new - old); 0 if undecided
};

FBoundValues f_bound_values(int k);

// Smallest k in [3, k_max] where the new bound is rigorously below the old.
std::optional<int> f_bound_crossover(int k_max);

struct PropagationResult {
  std::set<int> closure;
  std::optional<int> coprime_seed;
  // Under "A(n,k) = target for every n >= f(k)".
  std::optional<long> f_upper_ge_reading;
  // Under "A(n,k) = target for every n > n0".
  std::optional<long> f_upper_gt_reading;
};

// Closure of `verified` under n -> n + k and n -> c n, truncated at n_max.
PropagationResult propagate_equality(const std::set<int>& verified, int k, int n_max);

// The full inequality chain for one theorem at (k, n).
std::vector<BoundReport> thm1_suite(int k, const BigInt& n);
std::vector<BoundReport> thm2_suite(int k, long n, int workers = 0);

}  // namespace mms
