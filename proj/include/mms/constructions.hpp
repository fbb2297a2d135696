#pragma once

#include <string>

#include "mms/numerics.hpp"

namespace mms {

enum class ConstructionName { star, mirror, mms_counterexample };

std::string to_string(ConstructionName name);
ConstructionName parse_construction_name(const std::string& text);

struct NamedConstruction {
  ConstructionName name;
  int n;
  int k;
  Configuration config;
  BigInt predicted_count;
  std::string prediction_formula;
};

// (n-1, -1, ..., -1): every k-set through the top element, C(n-1, k-1).
NamedConstruction star_config(int n, int k);

// (1, ..., 1, -(n-1)): every k-set avoiding the bottom element, C(n-1, k).
NamedConstruction mirror_config(int n, int k);

// n = 3k+1: 3k-2 copies of 3 and three copies of -(3k-2). Only the k-sets
// drawn entirely from the 3's survive, C(n-3, k).
NamedConstruction mms_counterexample(int k);

// C(n-3, k) < C(n-1, k-1) at n = 3k+1, decided with exact binomials.
bool counterexample_beats_target(int k);

// The closed form the binomial comparison reduces to: (k-1)(k-2) > 0.
bool counterexample_beats_target_closed_form(int k);

}  // namespace mms
