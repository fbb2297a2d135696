#pragma once

#include <optional>
#include <vector>

#include "mms/rational.hpp"

namespace mms::lp {

// coeffs . x <= rhs over free real variables x.
struct Row {
  std::vector<Rational> coeffs;
  Rational rhs;
};

struct Certificate {
  bool feasible = false;
  std::vector<Rational> point;        // feasible: satisfies every row
  std::vector<Rational> multipliers;  // infeasible: y >= 0, y^T G = 0, y^T h < 0
};

// Phase-one simplex over exact rationals with Bland's rule: a z >= 0 with
// A z = b, or nothing if none exists.
std::optional<std::vector<Rational>> nonnegative_solution(const std::vector<std::vector<Rational>>& a,
                                                          const std::vector<Rational>& b);

// Decides {x : G x <= h}. Exactly one of the primal point or the Farkas
// multipliers exists; both searches are run if the first fails.
Certificate decide(const std::vector<Row>& rows, int dims);

// Exact re-check of either certificate kind.
bool verify(const std::vector<Row>& rows, int dims, const Certificate& certificate);

// Independent decision by Fourier-Motzkin elimination (small dims only).
bool fourier_motzkin_feasible(const std::vector<Row>& rows, int dims);

}  // namespace mms::lp
