#include "mms/bounds.hpp"

#include <omp.h>

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "mms/numerics.hpp"

namespace mms {

namespace {

BoundReport make_report(std::string name, std::string relation, Rational lhs, Rational rhs) {
  BoundReport r;
  r.name = std::move(name);
  r.relation = std::move(relation);
  r.margin = lhs - rhs;
  r.holds = r.relation == ">" ? lhs > rhs : lhs >= rhs;
  r.lhs = std::move(lhs);
  r.rhs = std::move(rhs);
  return r;
}

// (a - b)^m through the binomial expansion, an evaluation path independent of
// repeated multiplication.
Rational expanded_power(const Rational& a, const Rational& b, int m) {
  Rational total = 0;
  for (int i = 0; i <= m; ++i) {
    Rational term = Rational(binomial(m, i)) * pow(a, static_cast<unsigned>(m - i)) * pow(b, static_cast<unsigned>(i));
    total += i % 2 == 0 ? term : Rational(-term);
  }
  return total;
}

// k^e for a possibly negative exponent.
Rational int_pow(long base, int exponent) {
  const Rational b(base);
  if (exponent >= 0) return pow(b, static_cast<unsigned>(exponent));
  return 1 / pow(b, static_cast<unsigned>(-exponent));
}

std::string str(long v) { return std::to_string(v); }

}  // namespace

BoundReport unimodal_gap_lb(const Rational& p, const Rational& q, int m) {
  if (m < 1) throw std::invalid_argument("unimodal_gap_lb needs m >= 1");
  const auto mu = static_cast<unsigned>(m);
  Rational lhs = pow(Rational(p - q), mu);
  Rational rhs = pow(p, mu) - m * pow(p, mu - 1) * q;
  auto r = make_report("unimodal_gap_lb", ">=", lhs, rhs);
  r.parameters = {{"p", to_string(p)}, {"q", to_string(q)}, {"m", str(m)}};
  r.precondition_ok = sgn(p) > 0 && sgn(q) > 0 && pow(p, mu) > m * pow(p, mu - 1) * q;
  if (!r.precondition_ok) r.note = "first term does not exceed the second";
  r.cross_checked = expanded_power(p, q, m) == lhs;
  return r;
}

BoundReport thm1_threshold_check(const BigInt& n_int, int k) {
  if (k < 2 || n_int < 2) throw std::invalid_argument("thm1_threshold_check needs n, k >= 2");
  const Rational n(n_int);
  const auto m = static_cast<unsigned>(k - 1);
  const Rational n_over_k = n / k;
  const Rational a = n - 3 * k;
  const Rational b = n_over_k - k;

  Rational lhs = pow(a, m) + pow(b, m);
  Rational rhs = pow(n, m);
  auto r = make_report("thm1_threshold", ">=", lhs, rhs);
  r.parameters = {{"n", n_int.get_str()}, {"k", str(k)}};
  r.cross_checked = expanded_power(n, Rational(3 * k), k - 1) + expanded_power(n_over_k, Rational(k), k - 1) == lhs;

  // First-term / second-term estimates for each power.
  auto u1 = unimodal_gap_lb(n, Rational(3 * k), k - 1);
  u1.name = "unimodal_first_power";
  u1.note = "needs n > 3k(k-1)";
  auto u2 = unimodal_gap_lb(n_over_k, Rational(k), k - 1);
  u2.name = "unimodal_second_power";
  u2.note = "needs n > k^2(k-1)";
  // Coefficient relaxations (k-1) 3k <= 3k^2 and (k-1) k (n/k)^(k-2) <= n^(k-2)/k^(k-4).
  auto relax1 = make_report("relax_first", ">=", Rational(3 * k * k) * pow(n, m - 1),
                            Rational((k - 1) * 3 * k) * pow(n, m - 1));
  auto relax2 = make_report("relax_second", ">=", pow(n, m - 1) * int_pow(k, -(k - 4)),
                            Rational((k - 1) * k) * pow(n_over_k, m - 1));
  const Rational chain = pow(n, m) - 3 * k * k * pow(n, m - 1) + pow(n, m) * int_pow(k, -(k - 1)) -
                         pow(n, m - 1) * int_pow(k, -(k - 4));
  auto chained = make_report("chained_lower_bound", ">=", chain, pow(n, m));
  const BigInt threshold = 3 * pow(BigInt(k), static_cast<unsigned>(k + 1)) + pow(BigInt(k), 3);
  auto equivalence = make_report("chain_equivalent_to_threshold", ">=", Rational(n_int), Rational(threshold));
  equivalence.cross_checked = equivalence.holds == chained.holds;
  equivalence.note = "chained bound holds iff n >= 3k^(k+1) + k^3";
  // When the threshold is met, the displayed inequality follows from the chain.
  auto implied = make_report("raw_at_least_chain", ">=", lhs, chain);
  r.steps = {u1, u2, relax1, relax2, chained, equivalence, implied};
  return r;
}

BoundReport thm2_stage_check(const BigInt& n_int, int k, int p) {
  if (k < 2) throw std::invalid_argument("thm2_stage_check needs k >= 2");
  const BigInt stages = n_int / (2 * k);
  if (p < 1 || BigInt(p) > stages) throw std::out_of_range("p outside [1, floor(n/2k)]");
  const Rational n(n_int);
  const auto m = static_cast<unsigned>(k - 1);
  const Rational base = n - k * (p + 1);
  Rational lhs = (p + 1) * pow(base, m);
  auto r = make_report("thm2_stage", ">", lhs, pow(n, m));
  r.parameters = {{"n", n_int.get_str()}, {"k", str(k)}, {"p", str(p)}};
  r.cross_checked = (p + 1) * expanded_power(n, Rational(k * (p + 1)), k - 1) == lhs;

  if (n_int.fits_slong_p()) r.steps.push_back(stage_binomial_check(n_int.get_si(), k, p));

  if (BigInt(p) * k * k < n_int) {
    r.note = "regime p < n/k^2";
    auto pre = make_report("first_term_dominates", ">", pow(n, m), Rational((k - 1) * k * (p + 1)) * pow(n, m - 1));
    auto estimate = make_report("first_second_term_estimate", ">=", lhs,
                                (p + 1) * pow(n, m) - Rational((p + 1) * (p + 1)) * k * (k - 1) * pow(n, m - 1));
    auto condition = make_report("ratio_condition", ">", n / (k * (k - 1)), Rational(p + 2) + Rational(1, p));
    // RHS of the estimate exceeds n^(k-1) exactly when the ratio condition holds.
    auto estimate_beats =
        make_report("estimate_exceeds_target", ">", estimate.rhs, pow(n, m));
    estimate_beats.cross_checked = estimate_beats.holds == condition.holds;
    auto sufficient = make_report("sufficient_n_gt_3k2(k-1)", ">", n, Rational(3 * k * k * (k - 1)));
    r.steps.insert(r.steps.end(), {pre, estimate, condition, estimate_beats, sufficient});
  } else {
    r.note = "regime n/k^2 <= p";
    const Rational floor_bound = pow(n, m + 1) / (pow(Rational(2), m) * k * k);
    auto estimate = make_report("regime2_estimate", ">", lhs, floor_bound);
    auto beats = make_report("regime2_bound_exceeds_target", ">", floor_bound, pow(n, m));
    auto sufficient = make_report("sufficient_n_gt_2^(k-1)k^2", ">", n, pow(Rational(2), m) * k * k);
    beats.cross_checked = beats.holds == sufficient.holds;
    r.steps.insert(r.steps.end(), {estimate, beats, sufficient});
  }
  return r;
}

BoundReport stage_binomial_check(long n, int k, int p) {
  auto r = make_report("stage_binomial", ">", Rational((p + 1) * binomial(n - static_cast<long>(k) * p - 1, k - 1)),
                       Rational(binomial(n - 1, k - 1)));
  r.parameters = {{"n", str(n)}, {"k", str(k)}, {"p", str(p)}};
  return r;
}

BoundReport thm2_p1_binomial_check(long n, int k) {
  auto r = stage_binomial_check(n, k, 1);
  r.name = "thm2_p1_binomial";
  // Independent route: C(m, k-1) from the falling factorial.
  auto falling = [&](long top) {
    BigInt num = 1;
    for (int i = 0; i < k - 1; ++i) num *= BigInt(top - i);
    BigInt den = 1;
    for (int i = 2; i <= k - 1; ++i) den *= i;
    Rational out(num, den);
    out.canonicalize();
    return out;
  };
  r.cross_checked = 2 * falling(n - k - 1) == r.lhs && falling(n - 1) == r.rhs;
  return r;
}

BoundReport few_negatives_check(long n, int k) {
  auto r = make_report("few_negatives_beats_target", ">", Rational(binomial(n - 2 * k, k)),
                       Rational(binomial(n - 1, k - 1)));
  r.parameters = {{"n", str(n)}, {"k", str(k)}};
  return r;
}

BoundReport two_range_count_check(long n, int k) {
  if (k < 2) throw std::invalid_argument("two_range_count_check needs k >= 2");
  const long stages = n / (2L * k);
  const long medium = floor_n_over_two_ln_k(n, static_cast<unsigned long>(k)).get_si();
  long large = k;
  if (k >= 3) large = std::clamp<long>(ceil_k_over_ln_k(static_cast<unsigned long>(k)).get_si(), 1, k - 1);
  auto r = make_report("two_range_count", ">=", Rational(binomial(stages, large) * binomial(medium, k - large)),
                       Rational(binomial(n - 1, k - 1)));
  r.parameters = {{"n", str(n)}, {"k", str(k)}, {"a", str(large)}, {"j", str(medium)}, {"T", str(stages)}};
  return r;
}

long thm2_stage_failures(const BigInt& n, int k, int workers) {
  const long stages = BigInt(n / (2 * k)).get_si();
  const int threads = workers > 0 ? workers : omp_get_max_threads();
  long failures = 0;
#pragma omp parallel for schedule(dynamic, 16) reduction(+ : failures) num_threads(threads)
  for (long p = 1; p <= stages; ++p) {
    if (!thm2_stage_check(n, k, static_cast<int>(p)).holds) ++failures;
  }
  return failures;
}

long thm2_stage_failures_serial(const BigInt& n, int k) {
  const long stages = BigInt(n / (2 * k)).get_si();
  long failures = 0;
  for (long p = 1; p <= stages; ++p) {
    // Direct form only, without the report machinery.
    const BigInt lhs = (p + 1) * pow(BigInt(n - k * (p + 1)), static_cast<unsigned>(k - 1));
    if (!(lhs > pow(n, static_cast<unsigned>(k - 1)))) ++failures;
  }
  return failures;
}

FBoundValues f_bound_values(int k) {
  if (k < 3) throw std::invalid_argument("f_bound_values needs k >= 3");
  FBoundValues v;
  v.k = k;
  v.old_bound = (k - 1) * (pow(BigInt(k), static_cast<unsigned>(k)) + k * k) + k;
  for (unsigned bits = kMinPrecisionBits; bits <= kMaxPrecisionBits; bits *= 2) {
    v.new_bound = thm2_threshold_enclosure(static_cast<unsigned long>(k), bits);
    v.comparison = compare(v.new_bound, Rational(v.old_bound));
    const bool precise = v.new_bound.width() * 100 <= v.new_bound.lo();
    if (precise && v.comparison != 0) break;
  }
  v.new_bound_float = v.new_bound.approx();
  return v;
}

std::optional<int> f_bound_crossover(int k_max) {
  for (int k = 3; k <= k_max; ++k) {
    if (f_bound_values(k).comparison < 0) return k;
  }
  return std::nullopt;
}

PropagationResult propagate_equality(const std::set<int>& verified, int k, int n_max) {
  if (k < 1) throw std::invalid_argument("propagate_equality needs k >= 1");
  PropagationResult out;
  std::vector<int> work(verified.begin(), verified.end());
  while (!work.empty()) {
    const int n = work.back();
    work.pop_back();
    if (n < 1 || n > n_max || !out.closure.insert(n).second) continue;
    work.push_back(n + k);
    for (long c = 2; c * n <= n_max; ++c) work.push_back(static_cast<int>(c * n));
  }
  for (int n : out.closure) {
    if (std::gcd(n, k) == 1) {
      out.coprime_seed = n;
      out.f_upper_ge_reading = static_cast<long>(k - 1) * n;
      out.f_upper_gt_reading = static_cast<long>(k - 1) * n - 1;
      break;
    }
  }
  return out;
}

std::vector<BoundReport> thm1_suite(int k, const BigInt& n) {
  std::vector<BoundReport> out;
  out.push_back(thm1_threshold_check(n, k));
  const BigInt threshold = 3 * pow(BigInt(k), static_cast<unsigned>(k + 1)) + pow(BigInt(k), 3);
  auto range = make_report("n_at_least_threshold", ">=", Rational(n), Rational(threshold));
  out.push_back(range);
  if (n.fits_slong_p()) out.push_back(few_negatives_check(n.get_si(), k));
  return out;
}

std::vector<BoundReport> thm2_suite(int k, long n, int workers) {
  std::vector<BoundReport> out;
  const BigInt big_n(n);
  const long failures = thm2_stage_failures(big_n, k, workers);
  const long stages = n / (2L * k);
  auto sweep = make_report("all_stage_checks", ">=", Rational(stages - failures), Rational(stages));
  sweep.parameters = {{"n", str(n)}, {"k", str(k)}, {"stages", str(stages)}};
  sweep.cross_checked = thm2_stage_failures_serial(big_n, k) == failures;
  out.push_back(sweep);
  out.push_back(thm2_p1_binomial_check(n, k));
  out.push_back(two_range_count_check(n, k));
  auto range = make_report("n_exceeds_k(4e ln k)^k", ">=", Rational(exceeds_thm2_threshold(big_n, static_cast<unsigned long>(k)) ? 1 : 0),
                           Rational(1));
  range.parameters = {{"n", str(n)}, {"k", str(k)}};
  out.push_back(range);
  return out;
}

}  // namespace mms
