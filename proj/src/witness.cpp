#include "mms/witness.hpp"

#include <omp.h>

#include <algorithm>

#include "mms/interval.hpp"
#include "mms/partition.hpp"
#include "mms/random.hpp"

namespace mms {

std::string to_string(WitnessBranch branch) {
  switch (branch) {
    case WitnessBranch::central_at_top: return "central_at_top";
    case WitnessBranch::few_negatives: return "few_negatives";
    case WitnessBranch::trim_and_partition_plus_top_zone: return "trim_and_partition_plus_top_zone";
    case WitnessBranch::central_at_stage_i: return "central_at_stage_i";
    case WitnessBranch::two_range_family: return "two_range_family";
  }
  return "?";
}

WitnessMode parse_witness_mode(const std::string& text) {
  if (text == "auto" || text == "automatic") return WitnessMode::automatic;
  if (text == "explicit") return WitnessMode::explicit_only;
  if (text == "counted") return WitnessMode::counted;
  throw std::invalid_argument("unknown witness mode '" + text + "'");
}

namespace {

constexpr std::int64_t kExplicitHardCap = 10'000'000;

// All k-sets made of `take_a` indices from [lo_a, hi_a] and `take_b` from
// [lo_b, hi_b], with the first range entirely below the second.
struct ProductSpec {
  int lo_a, hi_a, take_a;
  int lo_b, hi_b, take_b;

  BigInt count() const { return binomial(hi_a - lo_a + 1, take_a) * binomial(std::max(hi_b - lo_b + 1, 0), take_b); }

  // Largest indices in each range: every other member dominates it.
  std::optional<KSubset> least_member() const {
    if (count() == 0) return std::nullopt;
    std::vector<int> idx;
    for (int i = hi_a - take_a + 1; i <= hi_a; ++i) idx.push_back(i);
    for (int i = hi_b - take_b + 1; i <= hi_b; ++i) idx.push_back(i);
    return KSubset(std::move(idx));
  }

  KSubset sample(Rng& rng) const {
    auto idx = sample_combination(rng, lo_a, hi_a, take_a);
    if (take_b > 0) {
      auto tail = sample_combination(rng, lo_b, hi_b, take_b);
      idx.insert(idx.end(), tail.begin(), tail.end());
    }
    return KSubset(std::move(idx));
  }

  void enumerate_into(SubsetFamily& family) const {
    if (count() == 0) return;
    auto a = first_combination(take_a, lo_a);
    do {
      std::vector<int> b;
      if (take_b > 0) b = first_combination(take_b, lo_b);
      do {
        std::vector<int> idx = a;
        idx.insert(idx.end(), b.begin(), b.end());
        family.insert(KSubset(std::move(idx)));
      } while (take_b > 0 && next_combination_in(b, hi_b));
    } while (next_combination_in(a, hi_a));
  }

 private:
  static bool next_combination_in(std::vector<int>& v, int hi) { return next_combination(v, hi); }
};

bool want_explicit(const WitnessOptions& options, const BigInt& count) {
  switch (options.mode) {
    case WitnessMode::counted: return false;
    case WitnessMode::explicit_only:
      if (count > big(kExplicitHardCap)) {
        throw BudgetExceeded("explicit witness family of size " + count.get_str() + " exceeds the hard cap");
      }
      return true;
    case WitnessMode::automatic: return count <= big(options.explicit_limit);
  }
  return false;
}

WitnessPart make_product_part(std::string name, int n, int k, const ProductSpec& spec, const WitnessOptions& options) {
  const BigInt count = spec.count();
  WitnessPart part{std::move(name), SubsetFamily(n, k), count, spec.least_member()};
  if (want_explicit(options, count)) {
    spec.enumerate_into(part.family);
  } else {
    part.family = SubsetFamily::counted(n, k, count);
  }
  return part;
}

JustificationCheck check_ge(std::string name, Rational lhs, Rational rhs) {
  const bool holds = lhs >= rhs;
  return {std::move(name), std::move(lhs), std::move(rhs), holds};
}

Rational range_sum(const Configuration& config, int lo, int hi) {
  Rational s = 0;
  for (int i = lo; i <= hi; ++i) s += config[i];
  return s;
}

void require_nonnegative_total(const Configuration& config) {
  if (sgn(config.total_sum()) < 0) throw std::invalid_argument("configuration total sum is negative");
}

// Certifies explicit parts member by member and counted parts by their least
// member plus a seeded uniform sample. Assembles the union family.
void certify_and_finish(const Configuration& config, WitnessReport& report, const WitnessOptions& options,
                        const std::vector<std::optional<ProductSpec>>& samplers,
                        const std::optional<std::pair<int, int>>& partition_sampler_range) {
  Rng rng(options.seed);
  bool ok = std::all_of(report.checks.begin(), report.checks.end(), [](const auto& c) { return c.holds; });
  bool all_explicit = true;
  BigInt total = 0;
  SubsetFamily combined(report.n, report.k);

  for (std::size_t p = 0; p < report.parts.size(); ++p) {
    auto& part = report.parts[p];
    if (part.least_member) ok = ok && sgn(ksum(config, *part.least_member)) >= 0;
    if (part.family.is_explicit()) {
      if (part.family.count() != part.formula_count) ok = false;
      std::vector<KSubset> members(part.family.members().begin(), part.family.members().end());
      ok = ok && count_violations(config, members, options.workers) == 0;
      report.certified_members += static_cast<std::int64_t>(members.size());
      if (all_explicit) combined.absorb(part.family);
    } else {
      all_explicit = false;
      std::vector<KSubset> drawn;
      if (samplers[p]) {
        for (int s = 0; s < options.sample_size; ++s) drawn.push_back(samplers[p]->sample(rng));
      } else if (partition_sampler_range) {
        // Max-sum block of a random parallel class of the trimmed set.
        const auto [lo, size] = *partition_sampler_range;
        for (int s = 0; s < options.sample_size; ++s) {
          drawn.push_back(max_sum_block(config, random_parallel_class(lo, size, report.k, rng)));
        }
      }
      ok = ok && count_violations(config, drawn, options.workers) == 0;
      report.certified_members += static_cast<std::int64_t>(drawn.size());
      report.samples.insert(report.samples.end(), drawn.begin(), drawn.end());
    }
    total += part.formula_count;
  }

  report.witnesses = all_explicit ? std::move(combined) : SubsetFamily::counted(report.n, report.k, total);
  report.certified = ok;
  report.meets_target = report.witnesses.count() >= report.target;
  report.below_guarantee = !report.meets_target;
}

}  // namespace

Rational eq2_bound(const Configuration& config, int j) {
  const int n = config.size();
  if (j < 1 || j > n - 1) throw std::out_of_range("eq2_bound needs 1 <= j <= n-1");
  require_nonnegative_total(config);
  const Rational& top = config[1];
  const Rational& pivot = config[j + 1];
  if (!(j * top + (n - j) * pivot >= config.total_sum())) {
    throw std::logic_error("j x_1 + (n-j) x_{j+1} < total on a sorted configuration");
  }
  Rational bound = -pivot * Rational(n - j, j);
  bound.canonicalize();
  if (!(top >= bound)) throw std::logic_error("x_1 below its averaging bound");
  return bound;
}

bool in_thm1_range(int n, int k) {
  const BigInt threshold = 3 * pow(BigInt(k), static_cast<unsigned>(k + 1)) + pow(BigInt(k), 3);
  return BigInt(n) >= threshold;
}

WitnessReport extract_thm1(const Configuration& config, int k, const WitnessOptions& options) {
  const int n = config.size();
  require_nonnegative_total(config);
  if (k < 1 || n < 2 * k + 1) throw std::invalid_argument("extract_thm1 needs n >= 2k+1");

  WitnessReport report;
  report.theorem = 1;
  report.n = n;
  report.k = k;
  report.target = binomial(n - 1, k - 1);
  report.in_theorem_range = in_thm1_range(n, k);
  std::vector<std::optional<ProductSpec>> samplers;
  std::optional<std::pair<int, int>> partition_range;

  const bool top_central = is_central(config, 1, k);
  report.trace.push_back({1, 1, 0, top_central, n});

  if (top_central) {
    report.branch = WitnessBranch::central_at_top;
    const ProductSpec spec{1, 1, 1, 2, n, k - 1};
    report.parts.push_back(make_product_part("through_top", n, k, spec, options));
    samplers.emplace_back(spec);
    report.guaranteed_count = spec.count();
  } else if (const int negatives = config.negative_count(); negatives < 2 * k) {
    report.branch = WitnessBranch::few_negatives;
    const int nonneg = n - negatives;
    const ProductSpec spec{1, nonneg, k, nonneg + 1, nonneg, 0};
    report.parts.push_back(make_product_part("non_negative_entries", n, k, spec, options));
    samplers.emplace_back(spec);
    report.guaranteed_count = spec.count();
  } else {
    report.branch = WitnessBranch::trim_and_partition_plus_top_zone;
    // x_1 plus the k-1 smallest is negative, so the rest sums to > 0. Then
    // drop n mod k more of the smallest (negative, since >= 2k are).
    const int extra = n % k;
    const int m = n - k - extra;
    const int last_kept = m + 1;
    report.trimmed_size = m;
    report.checks.push_back(check_ge("top_plus_bottom_negative", Rational(0),
                                     config[1] + range_sum(config, n - k + 2, n)));
    if (extra > 0) {
      report.checks.push_back(check_ge("extra_trimmed_nonpositive", Rational(0), config[last_kept + 1]));
    }
    report.checks.push_back(check_ge("trimmed_sum_nonnegative", range_sum(config, 2, last_kept), Rational(0)));
    if (!report.checks.back().holds) {
      throw std::logic_error("trimming left a negative partial sum; refusing to emit witnesses");
    }

    // Partition part, avoiding index 1.
    const BigInt partition_count = binomial(m - 1, k - 1);
    WitnessPart partition_part{"partition_of_trimmed", SubsetFamily(n, k), partition_count, std::nullopt};
    const bool explicit_partition =
        options.mode != WitnessMode::counted && partition_within_limit(m, k) &&
        (options.mode == WitnessMode::explicit_only || partition_count <= big(options.explicit_limit));
    if (explicit_partition) {
      std::vector<Rational> trimmed(config.values().begin() + 1, config.values().begin() + last_kept);
      const auto local = partition_lower_bound_witnesses(Configuration(std::move(trimmed)), k, options.partition_seed);
      for (const auto& w : local.members()) {
        std::vector<int> idx(w.indices().begin(), w.indices().end());
        for (int& i : idx) i += 1;
        partition_part.family.insert(KSubset(std::move(idx)));
      }
    } else {
      partition_part.family = SubsetFamily::counted(n, k, partition_count);
      partition_range = std::make_pair(2, m);
    }
    report.parts.push_back(std::move(partition_part));
    samplers.emplace_back(std::nullopt);

    // Top zone: x_1 with any k-1 of the floor(n/k) next largest.
    const int j = n / k;
    report.top_zone_size = j;
    const Rational bound = eq2_bound(config, j);
    report.checks.push_back(check_ge("top_bound_at_floor_n_over_k", config[1], bound));
    report.checks.push_back(check_ge("top_zone_coverage", config[1] + (k - 1) * config[j + 1], Rational(0)));
    const ProductSpec zone{1, 1, 1, 2, j + 1, k - 1};
    report.parts.push_back(make_product_part("top_zone", n, k, zone, options));
    samplers.emplace_back(zone);
    report.guaranteed_count = partition_count + zone.count();
  }

  certify_and_finish(config, report, options, samplers, partition_range);
  return report;
}

SubsetFamily substitution_family(const Configuration& config, int stage, int k, std::int64_t explicit_limit) {
  const int n = config.size();
  const int hi = n - (stage - 1) * (k - 1);
  if (stage < 1 || hi - stage + 1 < k) throw std::invalid_argument("stage out of range");
  const Rational top_with_bottom = config[stage] + range_sum(config, hi - k + 2, hi);
  if (sgn(top_with_bottom) < 0) throw std::invalid_argument("stage maximum is not central in its stage set");
  const ProductSpec spec{1, stage, 1, stage + 1, hi, k - 1};
  if (spec.count() > big(explicit_limit)) throw BudgetExceeded("substitution family exceeds the explicit limit");
  SubsetFamily family(n, k);
  spec.enumerate_into(family);
  return family;
}

WitnessReport extract_thm2(const Configuration& config, int k, const WitnessOptions& options) {
  const int n = config.size();
  require_nonnegative_total(config);
  if (k < 1 || n < 4 * k) throw std::invalid_argument("extract_thm2 needs n >= 4k");

  WitnessReport report;
  report.theorem = 2;
  report.n = n;
  report.k = k;
  report.target = binomial(n - 1, k - 1);
  report.in_theorem_range = k == 1 || exceeds_thm2_threshold(BigInt(n), static_cast<unsigned long>(k));
  const int stages = n / (2 * k);
  report.stages = stages;
  std::vector<std::optional<ProductSpec>> samplers;

  for (int i = 1; i <= stages; ++i) {
    const int hi = n - (i - 1) * (k - 1);
    const bool central = sgn(config[i] + range_sum(config, hi - k + 2, hi)) >= 0;
    report.trace.push_back({i, i, (i - 1) * (k - 1), central, hi - i + 1});
    if (!central) continue;

    report.branch = WitnessBranch::central_at_stage_i;
    report.checks.push_back(check_ge("stage_sum_nonnegative", range_sum(config, i, hi), Rational(0)));
    const ProductSpec spec{1, i, 1, i + 1, hi, k - 1};
    report.parts.push_back(make_product_part("substitution_stage_" + std::to_string(i), n, k, spec, options));
    samplers.emplace_back(spec);
    report.guaranteed_count = spec.count();
    certify_and_finish(config, report, options, samplers, std::nullopt);
    return report;
  }

  report.branch = WitnessBranch::two_range_family;
  const int last = stages;
  const int stage_hi = n - (last - 1) * (k - 1);
  const int stage_size = stage_hi - last + 1;
  int large = k;
  int medium = 0;
  if (k >= 3) {
    large = static_cast<int>(std::clamp<long>(ceil_k_over_ln_k(static_cast<unsigned long>(k)).get_si(), 1, k - 1));
    medium = static_cast<int>(floor_n_over_two_ln_k(n, static_cast<unsigned long>(k)).get_si());
    if (last + medium > stage_hi) {
      throw RangeInfeasible("medium range (" + std::to_string(last) + ", " + std::to_string(last + medium) +
                            "] runs past the surviving stage set ending at " + std::to_string(stage_hi));
    }
  } else if (k == 2) {
    medium = static_cast<int>(floor_n_over_two_ln_k(n, 2).get_si());
  }
  report.checks.push_back(check_ge("stage_sum_nonnegative", range_sum(config, last, stage_hi), Rational(0)));
  if (large < k) {
    // Averaging inside the last stage set with j = medium.
    const Rational& top = config[last];
    const Rational& pivot = config[last + medium];
    report.checks.push_back(
        check_ge("top_bound_inside_last_stage", medium * top + (stage_size - medium) * pivot, range_sum(config, last, stage_hi)));
    // Grow the large share until a large-heavy k-set provably covers the
    // medium share.
    while (large < k && sgn(large * top + (k - large) * pivot) < 0) ++large;
    report.checks.push_back(check_ge("two_range_coverage", large * top + (k - large) * pivot, Rational(0)));
  } else {
    report.checks.push_back(check_ge("last_stage_top_nonnegative", config[last], Rational(0)));
  }
  report.large_count = large;
  report.medium_range = medium;
  const ProductSpec spec{1, last, large, last + 1, last + medium, k - large};
  report.parts.push_back(make_product_part("two_range", n, k, spec, options));
  samplers.emplace_back(spec);
  report.guaranteed_count = spec.count();
  certify_and_finish(config, report, options, samplers, std::nullopt);
  return report;
}

std::int64_t count_violations(const Configuration& config, const std::vector<KSubset>& members, int workers) {
  if (members.empty()) return 0;
  const int k = members.front().k();
  const auto scaled = scale_to_integers(config, k);
  const int threads = workers > 0 ? workers : omp_get_max_threads();
  const auto count = static_cast<std::int64_t>(members.size());
  std::int64_t bad = 0;
  if (scaled.fits_int64) {
#pragma omp parallel for reduction(+ : bad) num_threads(threads)
    for (std::int64_t m = 0; m < count; ++m) {
      std::int64_t s = 0;
      for (int i : members[static_cast<std::size_t>(m)].indices()) s += scaled.small.at(static_cast<std::size_t>(i - 1));
      if (s < 0) ++bad;
    }
  } else {
#pragma omp parallel for reduction(+ : bad) num_threads(threads)
    for (std::int64_t m = 0; m < count; ++m) {
      BigInt s = 0;
      for (int i : members[static_cast<std::size_t>(m)].indices()) s += scaled.values.at(static_cast<std::size_t>(i - 1));
      if (sgn(s) < 0) ++bad;
    }
  }
  return bad;
}

std::int64_t count_violations_serial(const Configuration& config, const std::vector<KSubset>& members) {
  std::int64_t bad = 0;
  for (const auto& m : members) {
    if (sgn(ksum(config, m)) < 0) ++bad;
  }
  return bad;
}

}  // namespace mms
