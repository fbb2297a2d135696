#include "mms/solver.hpp"

#include <omp.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include "mms/constructions.hpp"
#include "mms/partition.hpp"
#include "mms/random.hpp"

namespace mms {

namespace {

// Membership bitmap over the lexicographically ordered universe [n]^(k).
struct Bits {
  std::array<std::uint64_t, kExactSolverMaxUniverse / 64> words{};

  bool test(int i) const { return words[static_cast<std::size_t>(i >> 6)] >> (i & 63) & 1; }
  void set(int i) { words[static_cast<std::size_t>(i >> 6)] |= std::uint64_t{1} << (i & 63); }
  bool intersects(const Bits& o) const {
    for (std::size_t w = 0; w < words.size(); ++w) {
      if (words[w] & o.words[w]) return true;
    }
    return false;
  }
  bool subset_of(const Bits& o) const {
    for (std::size_t w = 0; w < words.size(); ++w) {
      if (words[w] & ~o.words[w]) return false;
    }
    return true;
  }
  auto operator<=>(const Bits&) const = default;
};

struct BitsHash {
  std::size_t operator()(const Bits& b) const {
    std::uint64_t h = 1469598103934665603ull;
    for (auto w : b.words) h = (h ^ w) * 1099511628211ull;
    return static_cast<std::size_t>(h);
  }
};

struct Universe {
  int n;
  int k;
  std::vector<KSubset> subsets;
  std::vector<Bits> dominators;  // strictly dominating elements
  std::vector<Bits> dominated;   // strictly dominated elements

  Universe(int n_, int k_) : n(n_), k(k_) {
    auto idx = first_combination(k);
    do subsets.emplace_back(idx);
    while (next_combination(idx, n));
    const auto u = subsets.size();
    if (u > static_cast<std::size_t>(kExactSolverMaxUniverse)) throw std::invalid_argument("universe too large");
    dominators.resize(u);
    dominated.resize(u);
    for (std::size_t a = 0; a < u; ++a) {
      for (std::size_t b = 0; b < u; ++b) {
        if (a != b && gale_dominates(subsets[a], subsets[b])) {
          dominators[b].set(static_cast<int>(a));
          dominated[a].set(static_cast<int>(b));
        }
      }
    }
  }

  int size() const { return static_cast<int>(subsets.size()); }

  std::vector<int> generators(const Bits& s) const {
    std::vector<int> out;
    for (int i = 0; i < size(); ++i) {
      if (s.test(i) && !dominated[static_cast<std::size_t>(i)].intersects(s)) out.push_back(i);
    }
    return out;
  }

  std::vector<int> maximal_non_members(const Bits& s) const {
    std::vector<int> out;
    for (int i = 0; i < size(); ++i) {
      if (!s.test(i) && dominators[static_cast<std::size_t>(i)].subset_of(s)) out.push_back(i);
    }
    return out;
  }

  FilterFamily to_filter(const Bits& s) const {
    FilterFamily f;
    f.n = n;
    f.k = k;
    f.implied_members = SubsetFamily(n, k);
    for (int i = 0; i < size(); ++i) {
      if (s.test(i)) f.implied_members.insert(subsets[static_cast<std::size_t>(i)]);
    }
    for (int g : generators(s)) f.minimal_elements.push_back(subsets[static_cast<std::size_t>(g)]);
    f.size = f.implied_members.count();
    return f;
  }
};

lp::Row subset_row(int n, const KSubset& s, int sign, Rational rhs) {
  lp::Row row{std::vector<Rational>(static_cast<std::size_t>(n), Rational(0)), std::move(rhs)};
  for (int i : s.indices()) row.coeffs[static_cast<std::size_t>(i - 1)] = sign;
  return row;
}

// Ordering rows, then total >= 0, then generators, then maximal non-members.
std::vector<lp::Row> build_rows(int n, const std::vector<KSubset>& generators, const std::vector<KSubset>& non_members) {
  std::vector<lp::Row> rows;
  for (int i = 1; i < n; ++i) {
    lp::Row r{std::vector<Rational>(static_cast<std::size_t>(n), Rational(0)), Rational(0)};
    r.coeffs[static_cast<std::size_t>(i)] = 1;
    r.coeffs[static_cast<std::size_t>(i - 1)] = -1;
    rows.push_back(std::move(r));
  }
  rows.push_back({std::vector<Rational>(static_cast<std::size_t>(n), Rational(-1)), Rational(0)});
  for (const auto& g : generators) rows.push_back(subset_row(n, g, -1, Rational(0)));
  for (const auto& b : non_members) rows.push_back(subset_row(n, b, 1, Rational(-1)));
  return rows;
}

Configuration integer_config(const std::vector<Rational>& point) {
  BigInt lcm = 1;
  for (const auto& v : point) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den_mpz_t());
  std::vector<Rational> scaled;
  for (const auto& v : point) scaled.emplace_back(v * lcm);
  return Configuration(std::move(scaled));
}

std::vector<KSubset> pick(const Universe& u, const std::vector<int>& ids) {
  std::vector<KSubset> out;
  for (int i : ids) out.push_back(u.subsets[static_cast<std::size_t>(i)]);
  return out;
}

struct LevelOutcome {
  bool reused = false;
  bool feasible = false;
  std::optional<lp::Certificate> certificate;
  Bits support_members;
  Bits support_non_members;
};

}  // namespace

FilterFamily up_closure(int n, int k, const std::vector<KSubset>& generators) {
  FilterFamily f;
  f.n = n;
  f.k = k;
  f.implied_members = SubsetFamily(n, k);
  auto idx = first_combination(k);
  do {
    KSubset s(idx);
    for (const auto& g : generators) {
      if (gale_dominates(s, g)) {
        f.implied_members.insert(s);
        break;
      }
    }
  } while (next_combination(idx, n));
  for (const auto& m : f.implied_members.members()) {
    bool minimal = true;
    for (const auto& other : f.implied_members.members()) {
      if (other != m && gale_dominates(m, other)) {
        minimal = false;
        break;
      }
    }
    if (minimal) f.minimal_elements.push_back(m);
  }
  f.size = f.implied_members.count();
  return f;
}

std::vector<lp::Row> filter_constraints(const FilterFamily& filter) {
  std::vector<KSubset> non_members;
  auto idx = first_combination(filter.k);
  do {
    KSubset s(idx);
    if (filter.implied_members.contains(s)) continue;
    bool maximal = true;
    auto jdx = first_combination(filter.k);
    do {
      KSubset t(jdx);
      if (t != s && !filter.implied_members.contains(t) && gale_dominates(t, s)) {
        maximal = false;
        break;
      }
    } while (next_combination(jdx, filter.n));
    if (maximal) non_members.push_back(std::move(s));
  } while (next_combination(idx, filter.n));
  return build_rows(filter.n, filter.minimal_elements, non_members);
}

FeasibilityCertificate lp_feasible(const FilterFamily& filter) {
  FeasibilityCertificate out;
  out.rows = filter_constraints(filter);
  out.certificate = lp::decide(out.rows, filter.n);
  out.verified = lp::verify(out.rows, filter.n, out.certificate);
  if (out.certificate.feasible) out.witness_config = integer_config(out.certificate.point);
  return out;
}

SolverResult exact_A(int n, int k, const SolverOptions& options) {
  if (k < 1 || n < k) throw std::invalid_argument("exact_A needs 1 <= k <= n");
  const BigInt universe_size = binomial(n, k);
  if (universe_size > options.cap || universe_size > kExactSolverMaxUniverse) {
    throw BudgetExceeded("C(" + std::to_string(n) + ", " + std::to_string(k) + ") exceeds the exact solver cap");
  }
  const Universe u(n, k);
  const int workers = options.workers > 0 ? options.workers : omp_get_max_threads();

  SolverResult result;
  result.n = n;
  result.k = k;
  result.lower_cut = n % k == 0 ? binomial(n - 1, k - 1) : BigInt(1);

  // Supports (members, non-members) of infeasibility certificates found so far.
  std::vector<std::pair<Bits, Bits>> killers;
  std::vector<Bits> level;
  Bits top;
  top.set(0);  // {1, ..., k} dominates everything
  level.push_back(top);
  result.nodes_explored = 1;

  for (int size = 1; size <= u.size(); ++size) {
    if (BigInt(size) >= result.lower_cut) {
      std::vector<LevelOutcome> outcomes(level.size());
      const auto count = static_cast<std::int64_t>(level.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
      for (std::int64_t i = 0; i < count; ++i) {
        const Bits& s = level[static_cast<std::size_t>(i)];
        auto& out = outcomes[static_cast<std::size_t>(i)];
        for (const auto& [members, non_members] : killers) {
          if (members.subset_of(s) && !non_members.intersects(s)) {
            out.reused = true;
            break;
          }
        }
        if (out.reused) continue;
        const auto gens = u.generators(s);
        const auto maxes = u.maximal_non_members(s);
        const auto rows = build_rows(n, pick(u, gens), pick(u, maxes));
        auto cert = lp::decide(rows, n);
        if (!lp::verify(rows, n, cert)) throw std::logic_error("LP certificate failed exact verification");
        out.feasible = cert.feasible;
        if (!cert.feasible) {
          const std::size_t offset = static_cast<std::size_t>(n);
          for (std::size_t g = 0; g < gens.size(); ++g) {
            if (sgn(cert.multipliers[offset + g]) > 0) out.support_members.set(gens[g]);
          }
          for (std::size_t b = 0; b < maxes.size(); ++b) {
            if (sgn(cert.multipliers[offset + gens.size() + b]) > 0) out.support_non_members.set(maxes[b]);
          }
        }
        out.certificate = std::move(cert);
      }
      for (std::size_t i = 0; i < level.size(); ++i) {
        const auto& out = outcomes[i];
        if (out.reused) {
          ++result.certificates_reused;
          continue;
        }
        ++result.lp_solved;
        if (!out.feasible) killers.emplace_back(out.support_members, out.support_non_members);
      }
      for (std::size_t i = 0; i < level.size(); ++i) {
        if (!outcomes[i].feasible) continue;
        result.A_value = size;
        result.optimal_family = u.to_filter(level[i]);
        result.optimal_config = integer_config(outcomes[i].certificate->point);
        result.exact = true;
        return result;
      }
    }

    std::unordered_set<Bits, BitsHash> next_set;
    for (const auto& s : level) {
      for (int e = 0; e < u.size(); ++e) {
        if (!s.test(e) && u.dominators[static_cast<std::size_t>(e)].subset_of(s)) {
          Bits t = s;
          t.set(e);
          next_set.insert(t);
        }
      }
    }
    level.assign(next_set.begin(), next_set.end());
    std::sort(level.begin(), level.end());
    result.nodes_explored += static_cast<std::int64_t>(level.size());
    if (result.nodes_explored > options.budget) break;
  }

  // Budget exhausted: report the best heuristic configuration instead.
  auto fallback = search_upper_bound(n, k, SearchStrategy::grid, 0);
  result.A_value = fallback.count;
  const auto family = count_nonneg_ksums(fallback.config, k).family;
  result.optimal_family =
      up_closure(n, k, std::vector<KSubset>(family.members().begin(), family.members().end()));
  result.optimal_config = fallback.config;
  result.exact = false;
  return result;
}

SearchStrategy parse_search_strategy(const std::string& text) {
  if (text == "grid") return SearchStrategy::grid;
  if (text == "anneal") return SearchStrategy::anneal;
  throw std::invalid_argument("unknown search strategy '" + text + "'");
}

BigInt count_nonneg_ksums_multiset(const std::vector<std::pair<Rational, int>>& value_counts, int k) {
  // Enumerate how many of the k picks come from each value class.
  BigInt total = 0;
  std::vector<int> take(value_counts.size(), 0);
  auto recurse = [&](auto&& self, std::size_t pos, int remaining, Rational sum, BigInt ways) -> void {
    if (pos == value_counts.size()) {
      if (remaining == 0 && sgn(sum) >= 0) total += ways;
      return;
    }
    const auto& [value, mult] = value_counts[pos];
    for (int t = 0; t <= std::min(remaining, mult); ++t) {
      self(self, pos + 1, remaining - t, sum + value * t, ways * binomial(mult, t));
    }
  };
  recurse(recurse, 0, k, Rational(0), BigInt(1));
  return total;
}

namespace {

SearchResult grid_search(int n, int k, const SearchOptions& options) {
  if (n > 62) throw BudgetExceeded("grid search is limited to n <= 62");
  const int box = options.box > 0 ? options.box : std::clamp(n, 6, 30);
  std::vector<std::vector<std::uint64_t>> c(static_cast<std::size_t>(n) + 1,
                                            std::vector<std::uint64_t>(static_cast<std::size_t>(n) + 1, 0));
  for (int a = 0; a <= n; ++a) {
    c[static_cast<std::size_t>(a)][0] = 1;
    for (int b = 1; b <= a; ++b) {
      c[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
          c[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(b - 1)] +
          (b <= a - 1 ? c[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(b)] : 0);
    }
  }
  auto binom = [&](int a, int b) -> std::uint64_t {
    if (b < 0 || b > a) return 0;
    return c[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
  };

  std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
  std::array<int, 3> best_values{};
  std::array<int, 3> best_mults{};
  int best_levels = 0;

  auto consider = [&](int levels, const std::array<int, 3>& v, const std::array<int, 3>& m) {
    long long total = 0;
    for (int i = 0; i < levels; ++i) total += static_cast<long long>(v[static_cast<std::size_t>(i)]) * m[static_cast<std::size_t>(i)];
    if (total < 0) return;
    std::uint64_t count = 0;
    for (int a = 0; a <= std::min(k, m[0]); ++a) {
      for (int b = 0; b <= std::min(k - a, m[1]); ++b) {
        const int rest = k - a - b;
        if (rest > m[2]) continue;
        const long long s = static_cast<long long>(a) * v[0] + static_cast<long long>(b) * v[1] +
                            static_cast<long long>(rest) * v[2];
        if (s < 0) continue;
        count += binom(m[0], a) * binom(m[1], b) * binom(m[2], rest);
      }
    }
    if (count < best) {
      best = count;
      best_values = v;
      best_mults = m;
      best_levels = levels;
    }
  };

  // One level: all values equal and non-negative.
  consider(1, {1, 0, 0}, {n, 0, 0});
  for (int v1 = 1; v1 <= box; ++v1) {
    for (int v2 = -box; v2 < v1; ++v2) {
      if (std::gcd(v1, std::abs(v2)) != 1) continue;
      for (int m1 = 1; m1 < n; ++m1) consider(2, {v1, v2, 0}, {m1, n - m1, 0});
    }
  }
  for (int v1 = 1; v1 <= box; ++v1) {
    for (int v2 = -box; v2 < v1; ++v2) {
      for (int v3 = -box; v3 < v2; ++v3) {
        if (std::gcd(std::gcd(v1, std::abs(v2)), std::abs(v3)) != 1) continue;
        for (int m1 = 1; m1 <= n - 2; ++m1) {
          for (int m2 = 1; m1 + m2 <= n - 1; ++m2) consider(3, {v1, v2, v3}, {m1, m2, n - m1 - m2});
        }
      }
    }
  }

  std::vector<Rational> values;
  for (int i = 0; i < best_levels; ++i) {
    for (int r = 0; r < best_mults[static_cast<std::size_t>(i)]; ++r) values.emplace_back(best_values[static_cast<std::size_t>(i)]);
  }
  Configuration config(std::move(values));
  return {BigInt(static_cast<unsigned long>(best)), std::move(config)};
}

double unit_double(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

SearchResult anneal_search(int n, int k, std::uint64_t seed, const SearchOptions& options) {
  Rng rng(seed);
  const int box = options.box > 0 ? options.box : std::clamp(2 * n, 6, 60);
  std::vector<std::int64_t> x(static_cast<std::size_t>(n));
  for (auto& v : x) v = static_cast<std::int64_t>(uniform_below(rng, 2 * static_cast<std::uint64_t>(box) + 1)) - box;
  auto total = [&] { return std::accumulate(x.begin(), x.end(), std::int64_t{0}); };
  while (total() < 0) {
    auto it = std::min_element(x.begin(), x.end());
    *it = std::min<std::int64_t>(*it + (-total()), box);
  }
  CountOptions count_options{options.budget, options.workers, false};
  auto evaluate = [&] { return count_nonneg_ksums(Configuration::from_integers(x), k, count_options).count; };

  BigInt current = evaluate();
  BigInt best = current;
  auto best_x = x;
  const double t0 = std::max(1.0, binomial(n - 1, k - 1).get_d() / 10.0);
  for (int it = 0; it < options.iterations; ++it) {
    const double temperature = t0 * std::pow(0.001, static_cast<double>(it) / std::max(1, options.iterations));
    const auto i = static_cast<std::size_t>(uniform_below(rng, static_cast<std::uint64_t>(n)));
    const std::int64_t old = x[i];
    const std::int64_t delta = static_cast<std::int64_t>(uniform_below(rng, 2 * static_cast<std::uint64_t>(box))) - box;
    x[i] = std::clamp<std::int64_t>(old + (delta >= 0 ? delta + 1 : delta), -box, box);
    if (total() < 0) {
      x[i] = old;
      continue;
    }
    const BigInt candidate = evaluate();
    const double diff = BigInt(candidate - current).get_d();
    if (diff <= 0 || unit_double(rng) < std::exp(-diff / temperature)) {
      current = candidate;
      if (current < best) {
        best = current;
        best_x = x;
      }
    } else {
      x[i] = old;
    }
  }
  return {best, Configuration::from_integers(best_x)};
}

}  // namespace

SearchResult search_upper_bound(int n, int k, SearchStrategy strategy, std::uint64_t seed, const SearchOptions& options) {
  if (k < 1 || n < k) throw std::invalid_argument("search_upper_bound needs 1 <= k <= n");
  if (BigInt(n) * binomial(n, k) > big(options.budget)) {
    throw BudgetExceeded("n C(n, k) exceeds the enumeration budget");
  }
  SearchResult r = strategy == SearchStrategy::grid ? grid_search(n, k, options) : anneal_search(n, k, seed, options);
  // Recount exactly by enumeration.
  const auto exact = count_nonneg_ksums(r.config, k, {options.budget, options.workers, false}).count;
  if (exact != r.count) throw std::logic_error("search count disagrees with exact enumeration");
  return r;
}

int leading_noncentral_stages(const Configuration& config, int k) {
  const int n = config.size();
  const int stages = n / (2 * k);
  for (int i = 1; i <= stages; ++i) {
    const int hi = n - (i - 1) * (k - 1);
    Rational s = config[i];
    for (int t = hi - k + 2; t <= hi; ++t) s += config[t];
    if (sgn(s) >= 0) return i - 1;
  }
  return stages;
}

AdversarialResult adversarial_thm2_config(int n, int k, std::uint64_t seed, int candidates) {
  if (k < 2 || n < 4 * k) throw std::invalid_argument("adversarial_thm2_config needs k >= 2, n >= 4k");
  Rng rng(seed);
  const int stages = n / (2 * k);
  const int min_negatives = std::min(n - 1, stages * (k - 1) + (k - 1));
  std::optional<AdversarialResult> best;
  for (int c = 0; c < candidates; ++c) {
    // Positives at 1 (or 1 + small jitter), an optional zero layer, and
    // negatives at -q with 1/(k-1) < q so a stage top plus k-1 of them is < 0.
    int negatives = min_negatives;
    int zeros = 0;
    if (c > 0) {
      negatives += static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(std::max(1, n / 2 - min_negatives + 1))));
      zeros = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(std::max(1, n / 20))));
    }
    negatives = std::min(negatives, n - 1);
    zeros = std::min(zeros, n - negatives - 1);
    const int positives = n - negatives - zeros;
    const Rational q_max(positives, negatives);
    const Rational q_min(1, k - 1);
    Rational q = q_max;
    if (c > 0 && q_max > q_min) {
      const auto steps = static_cast<long>(uniform_below(rng, 1000) + 1);
      q = q_min + (q_max - q_min) * Rational(steps, 1000);
    }
    q.canonicalize();
    std::vector<Rational> values;
    for (int i = 0; i < positives; ++i) values.emplace_back(1);
    for (int i = 0; i < zeros; ++i) values.emplace_back(0);
    for (int i = 0; i < negatives; ++i) values.push_back(-q);
    Configuration config(std::move(values));
    if (sgn(config.total_sum()) < 0) continue;
    const int score = leading_noncentral_stages(config, k);
    if (!best || score > best->noncentral_stages) best = AdversarialResult{std::move(config), score};
  }
  if (!best) throw std::logic_error("no adversarial candidate had a non-negative total");
  return *best;
}

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::equality: return "equality";
    case Verdict::counterexample: return "counterexample";
    case Verdict::undecided: return "undecided";
  }
  return "?";
}

std::vector<SweepRow> verify_conjecture_range(int n_lo, int n_hi, int k, const SweepOptions& options) {
  std::vector<SweepRow> rows;
  for (int n = std::max(n_lo, k); n <= n_hi; ++n) {
    SweepRow row;
    row.n = n;
    row.k = k;
    row.target = binomial(n - 1, k - 1);
    row.lower = 1;
    row.upper = star_config(n, k).predicted_count;
    if (n % k == 0 && partition_within_limit(n, k)) {
      // Every configuration has a non-negative block in each parallel class.
      const auto partition = cached_partition(n, k, options.seed);
      if (!validate_partition(*partition)) throw std::logic_error("constructed partition failed validation");
      row.lower = BigInt(static_cast<unsigned long>(partition->classes.size()));
      row.method = "partition_lower+star_upper";
    } else if (binomial(n, k) <= options.solver.cap) {
      auto solved = exact_A(n, k, options.solver);
      row.upper = std::min(row.upper, solved.A_value);
      if (solved.exact) {
        row.lower = solved.A_value;
        row.exact_value = solved.A_value;
      }
      row.witness_config = solved.optimal_config;
      row.method = solved.exact ? "exact_solver" : "solver_upper_bound";
    } else if (BigInt(n) * binomial(n, k) <= big(options.search.budget) && n <= 62) {
      auto found = search_upper_bound(n, k, SearchStrategy::grid, options.seed, options.search);
      if (found.count < row.upper) {
        row.upper = found.count;
        row.witness_config = found.config;
      }
      row.method = "grid_search_upper";
    } else {
      row.method = "star_upper_only";
    }
    if (row.lower == row.upper && row.upper == row.target) {
      row.verdict = Verdict::equality;
      if (!row.exact_value) row.exact_value = row.target;
    } else if (row.upper < row.target) {
      row.verdict = Verdict::counterexample;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace mms
