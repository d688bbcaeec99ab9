#include "nildeg/algprops.hpp"

#include "nildeg/polyring.hpp"

namespace nildeg {

std::vector<std::size_t> row_reduce(std::vector<Row>& rows) {
  std::vector<std::size_t> pivots;
  if (rows.empty()) return pivots;
  const std::size_t ncols = rows.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c].is_zero()) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    FieldElement inv = rows[r][c].inverse();
    for (auto& x : rows[r]) x *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c].is_zero()) continue;
      FieldElement f = rows[i][c];
      for (std::size_t k = c; k < ncols; ++k) rows[i][k] -= f * rows[r][k];
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

std::size_t rank(std::vector<Row> rows) { return row_reduce(rows).size(); }

bool is_associative(const StructureVector& lambda) {
  const auto& l = lambda.coeffs();
  const Field& f = lambda.field();
  // (e_a e_b) e_c = e_a (e_b e_c), coordinate d
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d) {
          FieldElement lhs = f.zero(), rhs = f.zero();
          for (int i = 0; i < 3; ++i) {
            lhs += l[flat(a, b, i)] * l[flat(i, c, d)];
            rhs += l[flat(b, c, i)] * l[flat(a, i, d)];
          }
          if (lhs != rhs) return false;
        }
  return true;
}

bool is_commutative(const StructureVector& lambda) {
  const auto& l = lambda.coeffs();
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        if (l[flat(i, j, k)] != l[flat(j, i, k)]) return false;
  return true;
}

int nilpotency_class(const StructureVector& lambda) {
  if (lambda.is_zero()) return 0;
  const Field& f = lambda.field();
  std::vector<Row> level;
  for (int i = 1; i <= 3; ++i) {
    Vec3 e = basis_column(f, i);
    level.emplace_back(e.begin(), e.end());
  }
  for (int m = 1; m <= 4; ++m) {
    std::vector<Row> next;
    for (const Row& w : level) {
      Vec3 wv{w[0], w[1], w[2]};
      for (int j = 1; j <= 3; ++j) {
        Vec3 p = product(lambda, wv, basis_column(f, j));
        next.emplace_back(p.begin(), p.end());
      }
    }
    row_reduce(next);
    if (next.empty()) return m;
    level = std::move(next);
  }
  throw NotNilpotent(lambda.to_string());
}

bool in_m_star_star(const StructureVector& lambda) {
  const Field& f = lambda.field();
  VarList vars = make_vars({"x1", "x2", "x3"});
  std::array<MultiPoly, 3> x{MultiPoly::variable(f, vars, "x1"), MultiPoly::variable(f, vars, "x2"),
                             MultiPoly::variable(f, vars, "x3")};
  std::array<MultiPoly, 3> q{MultiPoly(f, vars), MultiPoly(f, vars), MultiPoly(f, vars)};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      MultiPoly xx = x[i] * x[j];
      for (int k = 0; k < 3; ++k) {
        const FieldElement& c = lambda.coeffs()[flat(i, j, k)];
        if (!c.is_zero()) q[k] += xx.scaled(c);
      }
    }
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (!is_identically_zero(x[i] * q[j] - x[j] * q[i])) return false;
  return true;
}

std::size_t derivation_dimension(const StructureVector& lambda) {
  const auto& l = lambda.coeffs();
  const Field& f = lambda.field();
  // Unknown d_rk (D e_k = sum_r d_rk e_r) at column 3r+k.
  std::vector<Row> eqs;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int r = 0; r < 3; ++r) {
        Row row(9, f.zero());
        for (int k = 0; k < 3; ++k) row[static_cast<std::size_t>(3 * r + k)] += l[flat(i, j, k)];
        for (int p = 0; p < 3; ++p) {
          row[static_cast<std::size_t>(3 * p + i)] -= l[flat(p, j, r)];
          row[static_cast<std::size_t>(3 * p + j)] -= l[flat(i, p, r)];
        }
        eqs.push_back(std::move(row));
      }
  return 9 - rank(std::move(eqs));
}

std::size_t square_dimension(const StructureVector& lambda) {
  const auto& l = lambda.coeffs();
  std::vector<Row> rows;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) rows.push_back({l[flat(i, j, 0)], l[flat(i, j, 1)], l[flat(i, j, 2)]});
  return rank(std::move(rows));
}

std::size_t annihilator_dimension(const StructureVector& lambda) {
  const auto& l = lambda.coeffs();
  std::vector<Row> rows;
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) {
      rows.push_back({l[flat(0, j, k)], l[flat(1, j, k)], l[flat(2, j, k)]});
      rows.push_back({l[flat(j, 0, k)], l[flat(j, 1, k)], l[flat(j, 2, k)]});
    }
  return 3 - rank(std::move(rows));
}

nlohmann::json InvariantProfile::to_json() const {
  return {{"associative", associative},
          {"nilpotency_class", nilpotency_class},
          {"commutative", commutative},
          {"in_m_star_star", in_m_star_star},
          {"derivation_dim", derivation_dim},
          {"square_dim", square_dim},
          {"annihilator_dim", annihilator_dim}};
}

InvariantProfile invariant_profile(const StructureVector& lambda) {
  InvariantProfile p;
  p.associative = is_associative(lambda);
  try {
    p.nilpotency_class = nilpotency_class(lambda);
  } catch (const NotNilpotent&) {
    p.nilpotency_class = -1;
  }
  p.commutative = is_commutative(lambda);
  p.in_m_star_star = in_m_star_star(lambda);
  p.derivation_dim = derivation_dimension(lambda);
  p.square_dim = square_dimension(lambda);
  p.annihilator_dim = annihilator_dimension(lambda);
  return p;
}

}  // namespace nildeg
