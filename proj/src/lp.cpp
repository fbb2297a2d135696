#include "mms/lp.hpp"

#include <set>
#include <stdexcept>

namespace mms::lp {

std::optional<std::vector<Rational>> nonnegative_solution(const std::vector<std::vector<Rational>>& a,
                                                          const std::vector<Rational>& b) {
  const std::size_t m = a.size();
  const std::size_t cols = m == 0 ? 0 : a.front().size();
  if (m == 0) return std::vector<Rational>(cols, Rational(0));
  // Tableau columns: originals, artificials, rhs. Final row: phase-one costs.
  const std::size_t width = cols + m + 1;
  const std::size_t rhs = cols + m;
  std::vector<std::vector<Rational>> t(m + 1, std::vector<Rational>(width, Rational(0)));
  std::vector<std::size_t> basis(m);
  auto& cost = t[m];
  for (std::size_t i = 0; i < m; ++i) {
    if (a[i].size() != cols) throw std::invalid_argument("ragged constraint matrix");
    const bool flip = sgn(b[i]) < 0;
    for (std::size_t j = 0; j < cols; ++j) t[i][j] = flip ? -a[i][j] : a[i][j];
    t[i][rhs] = flip ? -b[i] : b[i];
    t[i][cols + i] = 1;
    basis[i] = cols + i;
    for (std::size_t j = 0; j < cols; ++j) cost[j] -= t[i][j];
    cost[rhs] -= t[i][rhs];
  }

  for (;;) {
    // Bland: lowest-index improving column.
    std::size_t enter = width;
    for (std::size_t j = 0; j + 1 < width; ++j) {
      if (sgn(cost[j]) < 0) {
        enter = j;
        break;
      }
    }
    if (enter == width) break;
    std::size_t leave = m;
    Rational best_ratio;
    for (std::size_t i = 0; i < m; ++i) {
      if (sgn(t[i][enter]) <= 0) continue;
      Rational ratio = t[i][rhs] / t[i][enter];
      if (leave == m || ratio < best_ratio || (ratio == best_ratio && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = std::move(ratio);
      }
    }
    // Phase one is bounded below by zero, so an improving column always has a
    // positive entry.
    if (leave == m) throw std::logic_error("phase-one simplex reported unbounded");
    const Rational pivot = t[leave][enter];
    for (auto& v : t[leave]) v /= pivot;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == leave || sgn(t[i][enter]) == 0) continue;
      const Rational factor = t[i][enter];
      for (std::size_t j = 0; j < width; ++j) {
        if (sgn(t[leave][j]) != 0) t[i][j] -= factor * t[leave][j];
      }
    }
    basis[leave] = enter;
  }

  if (sgn(cost[rhs]) != 0) return std::nullopt;
  std::vector<Rational> z(cols, Rational(0));
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < cols) z[basis[i]] = t[i][rhs];
  }
  return z;
}

Certificate decide(const std::vector<Row>& rows, int dims) {
  const auto d = static_cast<std::size_t>(dims);
  const std::size_t m = rows.size();
  if (m == 0) return Certificate{true, std::vector<Rational>(d, Rational(0)), {}};
  // Primal: x = u - v, slacks s: G u - G v + s = h, all >= 0.
  {
    std::vector<std::vector<Rational>> a(m, std::vector<Rational>(2 * d + m, Rational(0)));
    std::vector<Rational> b(m);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        a[i][j] = rows[i].coeffs[j];
        a[i][d + j] = -rows[i].coeffs[j];
      }
      a[i][2 * d + i] = 1;
      b[i] = rows[i].rhs;
    }
    if (auto z = nonnegative_solution(a, b)) {
      Certificate c;
      c.feasible = true;
      c.point.resize(d);
      for (std::size_t j = 0; j < d; ++j) c.point[j] = (*z)[j] - (*z)[d + j];
      return c;
    }
  }
  // Farkas: y >= 0, G^T y = 0, h^T y = -1.
  std::vector<std::vector<Rational>> a(d + 1, std::vector<Rational>(m, Rational(0)));
  std::vector<Rational> b(d + 1, Rational(0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < d; ++j) a[j][i] = rows[i].coeffs[j];
    a[d][i] = rows[i].rhs;
  }
  b[d] = -1;
  auto y = nonnegative_solution(a, b);
  if (!y) throw std::logic_error("neither primal point nor Farkas multipliers found");
  Certificate c;
  c.feasible = false;
  c.multipliers = std::move(*y);
  return c;
}

bool verify(const std::vector<Row>& rows, int dims, const Certificate& certificate) {
  const auto d = static_cast<std::size_t>(dims);
  if (certificate.feasible) {
    if (certificate.point.size() != d) return false;
    for (const auto& row : rows) {
      Rational lhs = 0;
      for (std::size_t j = 0; j < d; ++j) lhs += row.coeffs[j] * certificate.point[j];
      if (lhs > row.rhs) return false;
    }
    return true;
  }
  if (certificate.multipliers.size() != rows.size()) return false;
  std::vector<Rational> combo(d, Rational(0));
  Rational bound = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& y = certificate.multipliers[i];
    if (sgn(y) < 0) return false;
    if (sgn(y) == 0) continue;
    for (std::size_t j = 0; j < d; ++j) combo[j] += y * rows[i].coeffs[j];
    bound += y * rows[i].rhs;
  }
  for (const auto& c : combo) {
    if (sgn(c) != 0) return false;
  }
  // 0 = y^T G x <= y^T h < 0.
  return sgn(bound) < 0;
}

namespace {

// Scale so the first non-zero coefficient has magnitude one; identical
// constraints then compare equal.
Row normalized(Row row) {
  for (const auto& c : row.coeffs) {
    if (sgn(c) != 0) {
      const Rational scale = abs(c);
      for (auto& v : row.coeffs) v /= scale;
      row.rhs /= scale;
      break;
    }
  }
  return row;
}

struct RowLess {
  bool operator()(const Row& a, const Row& b) const {
    for (std::size_t j = 0; j < a.coeffs.size(); ++j) {
      if (a.coeffs[j] != b.coeffs[j]) return a.coeffs[j] < b.coeffs[j];
    }
    return a.rhs < b.rhs;
  }
};

}  // namespace

bool fourier_motzkin_feasible(const std::vector<Row>& rows, int dims) {
  std::vector<Row> current;
  for (const auto& r : rows) current.push_back(normalized(r));
  for (int var = dims - 1; var >= 0; --var) {
    const auto v = static_cast<std::size_t>(var);
    std::vector<Row> pos, neg;
    std::set<Row, RowLess> next;
    for (auto& r : current) {
      const int s = sgn(r.coeffs[v]);
      if (s > 0) {
        pos.push_back(r);
      } else if (s < 0) {
        neg.push_back(r);
      } else {
        next.insert(r);
      }
    }
    for (const auto& p : pos) {
      for (const auto& q : neg) {
        // p_v x_v + ... <= p_h and q_v x_v + ... <= q_h with p_v > 0 > q_v.
        const Rational wp = -q.coeffs[v];
        const Rational wq = p.coeffs[v];
        Row combined{std::vector<Rational>(p.coeffs.size()), wp * p.rhs + wq * q.rhs};
        for (std::size_t j = 0; j < p.coeffs.size(); ++j) combined.coeffs[j] = wp * p.coeffs[j] + wq * q.coeffs[j];
        combined.coeffs[v] = 0;
        next.insert(normalized(std::move(combined)));
      }
    }
    current.assign(next.begin(), next.end());
    for (const auto& r : current) {
      bool zero = true;
      for (const auto& c : r.coeffs) zero = zero && sgn(c) == 0;
      if (zero && sgn(r.rhs) < 0) return false;
    }
  }
  for (const auto& r : current) {
    if (sgn(r.rhs) < 0) return false;
  }
  return true;
}

}  // namespace mms::lp
