#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <set>
#include <span>
#include <stdexcept>
#include <vector>

#include "mms/rational.hpp"

namespace mms {

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::int64_t kDefaultEnumerationBudget = 10'000'000;

// C(n, k); zero when k < 0 or k > n.
BigInt binomial(std::int64_t n, std::int64_t k);

// A finite multiset of rationals, held sorted non-increasing. Positions are
// 1-based to match the usual [n] = {1, ..., n} labelling.
class Configuration {
 public:
  explicit Configuration(std::vector<Rational> values);
  Configuration(std::initializer_list<long> values);

  static Configuration from_integers(std::span<const std::int64_t> values);

  int size() const { return static_cast<int>(values_.size()); }
  const Rational& at(int index) const;  // 1-based, bounds-checked
  const Rational& operator[](int index) const { return values_[static_cast<std::size_t>(index - 1)]; }
  std::span<const Rational> values() const { return values_; }
  const Rational& total_sum() const { return total_; }
  int negative_count() const;

  friend bool operator==(const Configuration&, const Configuration&) = default;

 private:
  std::vector<Rational> values_;
  Rational total_;
};

class KSubset {
 public:
  KSubset() = default;
  explicit KSubset(std::vector<int> indices);
  KSubset(std::initializer_list<int> indices) : KSubset(std::vector<int>(indices)) {}

  int k() const { return static_cast<int>(indices_.size()); }
  std::span<const int> indices() const { return indices_; }
  int operator[](int position) const { return indices_[static_cast<std::size_t>(position)]; }
  int front() const { return indices_.front(); }
  int back() const { return indices_.back(); }
  bool contains(int index) const;

  auto operator<=>(const KSubset&) const = default;
  bool operator==(const KSubset&) const = default;

 private:
  std::vector<int> indices_;
};

// A uniform family of k-subsets of [n]. Either explicit (members enumerated,
// count == members.size()) or counted (only the exact cardinality is known).
class SubsetFamily {
 public:
  SubsetFamily(int n, int k);
  static SubsetFamily counted(int n, int k, BigInt count);

  int n() const { return n_; }
  int k() const { return k_; }
  bool is_explicit() const { return explicit_; }
  const BigInt& count() const { return count_; }
  std::size_t size() const { return members_.size(); }
  const std::set<KSubset>& members() const { return members_; }

  // Returns false (and leaves the family unchanged) on a duplicate.
  bool insert(KSubset subset);
  bool contains(const KSubset& subset) const { return members_.contains(subset); }

  // Union with a family over the same (n, k). Counted families add counts,
  // so callers must only merge counted families known to be disjoint.
  void absorb(const SubsetFamily& other);

 private:
  int n_;
  int k_;
  bool explicit_ = true;
  BigInt count_ = 0;
  std::set<KSubset> members_;
};

Rational ksum(const Configuration& config, const KSubset& subset);

struct CountResult {
  BigInt count;
  SubsetFamily family;
};

struct CountOptions {
  std::int64_t budget = kDefaultEnumerationBudget;
  int workers = 0;  // 0: OpenMP default
  bool collect_family = true;
};

// Parallel kernel: values are scaled to a common integer denominator and the
// enumeration is split across workers by smallest index.
CountResult count_nonneg_ksums(const Configuration& config, int k, const CountOptions& options = {});

// Serial reference: plain lexicographic enumeration with Rational sums.
CountResult count_nonneg_ksums_serial(const Configuration& config, int k, const CountOptions& options = {});

// True iff a[i] <= b[i] at every position, i.e. a's sum dominates b's in any
// sorted configuration.
bool gale_dominates(const KSubset& a, const KSubset& b);

// True iff every k-sum through `index` is non-negative.
bool is_central(const Configuration& config, int index, int k);

// Lexicographic k-combination stepping over [1, n]; returns false after the
// last combination.
bool next_combination(std::vector<int>& indices, int n);
std::vector<int> first_combination(int k, int offset = 1);

// Integer image of a configuration under multiplication by the lcm of the
// denominators. Signs of every sub-sum are preserved.
struct ScaledValues {
  std::vector<BigInt> values;
  std::vector<std::int64_t> small;  // filled iff fits_int64
  bool fits_int64 = false;
};
ScaledValues scale_to_integers(const Configuration& config, int k);

}  // namespace mms
