#include "mms/numerics.hpp"

#include <omp.h>

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <string>

namespace mms {

BigInt binomial(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0 || k > n) return 0;
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

// ---------------------------------------------------------------- Configuration

Configuration::Configuration(std::vector<Rational> values) : values_(std::move(values)) {
  if (values_.empty()) throw std::invalid_argument("configuration must have at least one value");
  for (auto& v : values_) v.canonicalize();
  std::stable_sort(values_.begin(), values_.end(), [](const Rational& a, const Rational& b) { return a > b; });
  total_ = 0;
  for (const auto& v : values_) total_ += v;
}

Configuration::Configuration(std::initializer_list<long> values)
    : Configuration([&] {
        std::vector<Rational> v;
        v.reserve(values.size());
        for (long x : values) v.emplace_back(x);
        return v;
      }()) {}

Configuration Configuration::from_integers(std::span<const std::int64_t> values) {
  std::vector<Rational> v;
  v.reserve(values.size());
  for (auto x : values) v.emplace_back(big(x));
  return Configuration(std::move(v));
}

const Rational& Configuration::at(int index) const {
  if (index < 1 || index > size()) {
    throw std::out_of_range("index " + std::to_string(index) + " outside [1, " + std::to_string(size()) + "]");
  }
  return values_[static_cast<std::size_t>(index - 1)];
}

int Configuration::negative_count() const {
  return static_cast<int>(std::count_if(values_.begin(), values_.end(), [](const Rational& v) { return sgn(v) < 0; }));
}

// ---------------------------------------------------------------- KSubset

KSubset::KSubset(std::vector<int> indices) : indices_(std::move(indices)) {
  if (indices_.empty()) throw std::invalid_argument("k-subset must be non-empty");
  if (indices_.front() < 1) throw std::invalid_argument("k-subset indices start at 1");
  for (std::size_t i = 1; i < indices_.size(); ++i) {
    if (indices_[i] <= indices_[i - 1]) throw std::invalid_argument("k-subset indices must be strictly increasing");
  }
}

bool KSubset::contains(int index) const { return std::binary_search(indices_.begin(), indices_.end(), index); }

// ---------------------------------------------------------------- SubsetFamily

SubsetFamily::SubsetFamily(int n, int k) : n_(n), k_(k) {
  if (n < 1 || k < 1 || k > n) throw std::invalid_argument("subset family needs 1 <= k <= n");
}

SubsetFamily SubsetFamily::counted(int n, int k, BigInt count) {
  SubsetFamily f(n, k);
  f.explicit_ = false;
  f.count_ = std::move(count);
  return f;
}

bool SubsetFamily::insert(KSubset subset) {
  if (!explicit_) throw std::logic_error("cannot insert into a counted family");
  if (subset.k() != k_) throw std::invalid_argument("k-subset has the wrong size for this family");
  if (subset.back() > n_) throw std::out_of_range("k-subset index exceeds n");
  if (!members_.insert(std::move(subset)).second) return false;
  count_ += 1;
  return true;
}

void SubsetFamily::absorb(const SubsetFamily& other) {
  if (other.n_ != n_ || other.k_ != k_) throw std::invalid_argument("families over different (n, k)");
  if (explicit_ && other.explicit_) {
    for (const auto& s : other.members_) insert(s);
    return;
  }
  explicit_ = false;
  members_.clear();
  count_ += other.count_;
}

// ---------------------------------------------------------------- sums and counting

Rational ksum(const Configuration& config, const KSubset& subset) {
  Rational s = 0;
  for (int i : subset.indices()) s += config.at(i);
  return s;
}

std::vector<int> first_combination(int k, int offset) {
  std::vector<int> v(static_cast<std::size_t>(k));
  std::iota(v.begin(), v.end(), offset);
  return v;
}

bool next_combination(std::vector<int>& indices, int n) {
  const int k = static_cast<int>(indices.size());
  int i = k - 1;
  while (i >= 0 && indices[static_cast<std::size_t>(i)] == n - k + 1 + i) --i;
  if (i < 0) return false;
  ++indices[static_cast<std::size_t>(i)];
  for (int j = i + 1; j < k; ++j) indices[static_cast<std::size_t>(j)] = indices[static_cast<std::size_t>(j - 1)] + 1;
  return true;
}

ScaledValues scale_to_integers(const Configuration& config, int k) {
  BigInt lcm = 1;
  for (const auto& v : config.values()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den_mpz_t());
  ScaledValues out;
  out.values.reserve(static_cast<std::size_t>(config.size()));
  BigInt max_abs = 0;
  for (const auto& v : config.values()) {
    BigInt scaled = v.get_num() * (lcm / v.get_den());
    if (abs(scaled) > max_abs) max_abs = abs(scaled);
    out.values.push_back(std::move(scaled));
  }
  // Any k-sum stays below 2^62 in magnitude.
  const BigInt limit = BigInt(1) << 62;
  out.fits_int64 = max_abs * std::max(k, 1) < limit;
  if (out.fits_int64) {
    out.small.reserve(out.values.size());
    for (const auto& v : out.values) out.small.push_back(v.get_si());
  }
  return out;
}

namespace {

void check_count_args(const Configuration& config, int k, const CountOptions& options) {
  if (k < 1 || k > config.size()) throw std::invalid_argument("count_nonneg_ksums needs 1 <= k <= n");
  if (binomial(config.size(), k) > big(options.budget)) {
    throw BudgetExceeded("C(" + std::to_string(config.size()) + ", " + std::to_string(k) +
                         ") exceeds the enumeration budget of " + std::to_string(options.budget));
  }
}

// Visits every (k-1)-combination of [first+1, n] appended to `first`.
template <typename Visit>
void for_each_with_first(int first, int k, int n, Visit&& visit) {
  std::vector<int> idx(static_cast<std::size_t>(k));
  idx[0] = first;
  if (k == 1) {
    visit(idx);
    return;
  }
  std::vector<int> tail = first_combination(k - 1, first + 1);
  do {
    std::copy(tail.begin(), tail.end(), idx.begin() + 1);
    visit(idx);
  } while (next_combination(tail, n) && tail.front() > first);
}

template <typename Value>
struct KernelSlot {
  std::uint64_t count = 0;
  std::vector<KSubset> members;
};

template <typename Value, typename IsNonneg>
CountResult run_parallel_kernel(const std::vector<Value>& values, int n, int k, const CountOptions& options,
                                IsNonneg&& is_nonneg) {
  const int firsts = n - k + 1;
  std::vector<KernelSlot<Value>> slots(static_cast<std::size_t>(firsts));
  const int workers = options.workers > 0 ? options.workers : omp_get_max_threads();

#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
  for (int f = 1; f <= firsts; ++f) {
    auto& slot = slots[static_cast<std::size_t>(f - 1)];
    for_each_with_first(f, k, n, [&](const std::vector<int>& idx) {
      Value s = 0;
      for (int i : idx) s += values[static_cast<std::size_t>(i - 1)];
      if (is_nonneg(s)) {
        ++slot.count;
        if (options.collect_family) slot.members.emplace_back(idx);
      }
    });
  }

  CountResult result{0, SubsetFamily(n, k)};
  for (auto& slot : slots) {
    result.count += BigInt(static_cast<unsigned long>(slot.count));
    for (auto& m : slot.members) result.family.insert(std::move(m));
  }
  if (!options.collect_family) result.family = SubsetFamily::counted(n, k, result.count);
  return result;
}

}  // namespace

CountResult count_nonneg_ksums(const Configuration& config, int k, const CountOptions& options) {
  check_count_args(config, k, options);
  const auto scaled = scale_to_integers(config, k);
  if (scaled.fits_int64) {
    return run_parallel_kernel(scaled.small, config.size(), k, options, [](std::int64_t s) { return s >= 0; });
  }
  return run_parallel_kernel(scaled.values, config.size(), k, options, [](const BigInt& s) { return sgn(s) >= 0; });
}

CountResult count_nonneg_ksums_serial(const Configuration& config, int k, const CountOptions& options) {
  check_count_args(config, k, options);
  const int n = config.size();
  CountResult result{0, SubsetFamily(n, k)};
  auto idx = first_combination(k);
  do {
    KSubset s(idx);
    if (sgn(ksum(config, s)) >= 0) {
      result.count += 1;
      if (options.collect_family) result.family.insert(std::move(s));
    }
  } while (next_combination(idx, n));
  if (!options.collect_family) result.family = SubsetFamily::counted(n, k, result.count);
  return result;
}

bool gale_dominates(const KSubset& a, const KSubset& b) {
  if (a.k() != b.k()) throw std::invalid_argument("gale_dominates: subsets of different sizes");
  for (int i = 0; i < a.k(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

bool is_central(const Configuration& config, int index, int k) {
  const int n = config.size();
  if (index < 1 || index > n) throw std::out_of_range("is_central: index outside [1, n]");
  if (k < 1 || k > n) throw std::invalid_argument("is_central needs 1 <= k <= n");
  Rational s = config[index];
  int taken = 0;
  for (int j = n; j >= 1 && taken < k - 1; --j) {
    if (j == index) continue;
    s += config[j];
    ++taken;
  }
  return sgn(s) >= 0;
}

}  // namespace mms
