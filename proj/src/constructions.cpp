#include "mms/constructions.hpp"

#include <stdexcept>

namespace mms {

std::string to_string(ConstructionName name) {
  switch (name) {
    case ConstructionName::star: return "star";
    case ConstructionName::mirror: return "mirror";
    case ConstructionName::mms_counterexample: return "mms_counterexample";
  }
  return "?";
}

ConstructionName parse_construction_name(const std::string& text) {
  if (text == "star") return ConstructionName::star;
  if (text == "mirror") return ConstructionName::mirror;
  if (text == "counterexample" || text == "mms_counterexample") return ConstructionName::mms_counterexample;
  throw std::invalid_argument("unknown construction '" + text + "'");
}

namespace {

void require_nk(int n, int k) {
  if (k < 1 || n < k) throw std::invalid_argument("construction needs n >= k >= 1");
}

}  // namespace

NamedConstruction star_config(int n, int k) {
  require_nk(n, k);
  std::vector<Rational> v(static_cast<std::size_t>(n), Rational(-1));
  v[0] = n - 1;
  return {ConstructionName::star, n, k, Configuration(std::move(v)), binomial(n - 1, k - 1), "C(n-1,k-1)"};
}

NamedConstruction mirror_config(int n, int k) {
  require_nk(n, k);
  std::vector<Rational> v(static_cast<std::size_t>(n), Rational(1));
  v.back() = -(n - 1);
  return {ConstructionName::mirror, n, k, Configuration(std::move(v)), binomial(n - 1, k), "C(n-1,k)"};
}

NamedConstruction mms_counterexample(int k) {
  if (k < 2) throw std::invalid_argument("mms_counterexample needs k >= 2");
  const int n = 3 * k + 1;
  std::vector<Rational> v(static_cast<std::size_t>(3 * k - 2), Rational(3));
  for (int i = 0; i < 3; ++i) v.emplace_back(-(3 * k - 2));
  return {ConstructionName::mms_counterexample, n, k, Configuration(std::move(v)), binomial(n - 3, k), "C(n-3,k)"};
}

bool counterexample_beats_target(int k) {
  if (k < 2) throw std::invalid_argument("counterexample_beats_target needs k >= 2");
  const int n = 3 * k + 1;
  return binomial(n - 3, k) < binomial(n - 1, k - 1);
}

bool counterexample_beats_target_closed_form(int k) {
  if (k < 2) throw std::invalid_argument("counterexample_beats_target needs k >= 2");
  return BigInt(k - 1) * BigInt(k - 2) > 0;
}

}  // namespace mms
