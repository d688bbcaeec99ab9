#include "nildeg/structspace.hpp"

#include <ostream>
#include <set>

namespace nildeg {

namespace {

void check_index(int i) {
  if (i < 1 || i > 3) throw Error("index out of range: " + std::to_string(i));
}

bool is_composite(const std::string& s) {
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i] == '+' || s[i] == '-') return true;
  }
  return s.find('/') != std::string::npos;
}

}  // namespace

Matrix identity_matrix(const Field& f) { return Matrix::identity(f.zero(), f.one()); }

Matrix zero_matrix(const Field& f) { return Matrix::filled(f.zero()); }

Matrix diagonal(const FieldElement& a, const FieldElement& b, const FieldElement& c) {
  Matrix m = zero_matrix(a.field());
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  return m;
}

Matrix embed_matrix(const Field& f, const Matrix& m) {
  return m.map([&](const FieldElement& x) { return f.embed(x); });
}

Field matrix_field(const Matrix& m) { return m(0, 0).field(); }

Matrix inverse(const Matrix& m) {
  FieldElement d = m.det();
  if (d.is_zero()) throw Error("matrix is not invertible");
  FieldElement di = d.inverse();
  return m.adjugate().map([&](const FieldElement& x) { return x * di; });
}

Matrix parse_matrix(const Field& f, const std::vector<std::vector<std::string>>& rows) {
  if (rows.size() != 3) throw ParseError("matrix needs 3 rows");
  Matrix m = zero_matrix(f);
  for (int i = 0; i < 3; ++i) {
    if (rows[static_cast<std::size_t>(i)].size() != 3) throw ParseError("matrix row needs 3 entries");
    for (int j = 0; j < 3; ++j) m(i, j) = f.parse(rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
  }
  return m;
}

std::vector<std::vector<std::string>> render_matrix(const Matrix& m) {
  std::vector<std::vector<std::string>> rows(3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) rows[static_cast<std::size_t>(i)].push_back(m(i, j).to_string());
  return rows;
}

// ---------------------------------------------------------------------------

StructureVector::StructureVector(Field f) : field_(std::move(f)) { c_.fill(field_.zero()); }

StructureVector::StructureVector(Field f, std::array<FieldElement, 27> c) : field_(std::move(f)), c_(std::move(c)) {
  for (auto& x : c_) x = field_.embed(x);
}

StructureVector StructureVector::basis_vector(const Field& f, int i, int j, int k) {
  StructureVector v(f);
  v.set(i, j, k, f.one());
  return v;
}

const FieldElement& StructureVector::at(int i, int j, int k) const {
  check_index(i);
  check_index(j);
  check_index(k);
  return c_[flat(i - 1, j - 1, k - 1)];
}

void StructureVector::set(int i, int j, int k, const FieldElement& v) {
  check_index(i);
  check_index(j);
  check_index(k);
  c_[flat(i - 1, j - 1, k - 1)] = field_.embed(v);
}

std::size_t StructureVector::support_size() const {
  std::size_t n = 0;
  for (const auto& x : c_) n += x.is_zero() ? 0 : 1;
  return n;
}

bool StructureVector::is_zero() const { return support_size() == 0; }

StructureVector StructureVector::over(const Field& f) const {
  if (f == field_) return *this;
  return StructureVector(f, c_);
}

StructureVector operator+(const StructureVector& a, const StructureVector& b) {
  StructureVector r = a;
  for (std::size_t i = 0; i < 27; ++i) r.c_[i] = a.c_[i] + b.c_[i];
  return r;
}

StructureVector operator-(const StructureVector& a, const StructureVector& b) {
  StructureVector r = a;
  for (std::size_t i = 0; i < 27; ++i) r.c_[i] = a.c_[i] - b.c_[i];
  return r;
}

StructureVector operator*(const FieldElement& s, const StructureVector& a) {
  StructureVector r = a;
  FieldElement k = a.field_.embed(s);
  for (auto& x : r.c_) x = x * k;
  return r;
}

bool operator==(const StructureVector& a, const StructureVector& b) {
  return a.field_ == b.field_ && a.c_ == b.c_;
}

std::string StructureVector::to_string() const {
  std::string out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        const FieldElement& x = c_[flat(i, j, k)];
        if (x.is_zero()) continue;
        std::string idx = std::to_string(i + 1) + std::to_string(j + 1) + std::to_string(k + 1);
        std::string cs = x.to_string();
        std::string term;
        if (cs == "1") {
          term = idx;
        } else if (cs == "-1") {
          term = "-" + idx;
        } else {
          term = (is_composite(cs) ? "(" + cs + ")" : cs) + "*" + idx;
        }
        if (!out.empty() && term[0] != '-') out += "+";
        out += term;
      }
  return out.empty() ? "0" : out;
}

nlohmann::json StructureVector::to_json() const {
  nlohmann::json entries = nlohmann::json::array();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        const FieldElement& x = c_[flat(i, j, k)];
        if (x.is_zero()) continue;
        entries.push_back({{"i", i + 1}, {"j", j + 1}, {"k", k + 1}, {"c", x.to_string()}});
      }
  return {{"field", field_.to_json()}, {"entries", entries}};
}

StructureVector StructureVector::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("entries")) throw ParseError("structure vector needs \"entries\"");
  Field f = j.contains("field") ? Field::from_json(j.at("field")) : Field::rationals();
  StructureVector v(f);
  std::set<std::size_t> seen;
  for (const auto& e : j.at("entries")) {
    int a = e.at("i").get<int>(), b = e.at("j").get<int>(), c = e.at("k").get<int>();
    if (a < 1 || a > 3 || b < 1 || b > 3 || c < 1 || c > 3) throw ParseError("entry index out of range");
    if (!seen.insert(flat(a - 1, b - 1, c - 1)).second) throw ParseError("duplicate entry");
    const auto& cv = e.at("c");
    v.set(a, b, c, cv.is_string() ? f.parse(cv.get<std::string>()) : f.from_int(cv.get<long long>()));
  }
  return v;
}

std::ostream& operator<<(std::ostream& os, const StructureVector& v) { return os << v.to_string(); }

// ---------------------------------------------------------------------------

namespace {

std::pair<StructureVector, Matrix> align(const StructureVector& lambda, const Matrix& g) {
  Field gf = matrix_field(g);
  if (gf == lambda.field()) return {lambda, g};
  if (gf.has_subfield(lambda.field())) return {lambda.over(gf), g};
  if (lambda.field().has_subfield(gf)) return {lambda, embed_matrix(lambda.field(), g)};
  throw FieldMismatch(lambda.field().describe() + " vs " + gf.describe());
}

}  // namespace

StructureVector act(const StructureVector& lambda, const Matrix& g_in) {
  auto [lam, g] = align(lambda, g_in);
  Matrix h = inverse(g);
  return StructureVector(lam.field(), contract(lam.coeffs(), g, h, lam.field().zero()));
}

StructureVector act_kronecker(const StructureVector& lambda, const Matrix& g_in) {
  auto [lam, g] = align(lambda, g_in);
  Matrix h = inverse(g);
  const Field& f = lam.field();
  // K[(ijk),(abc)] = g_ia g_jb h_ck
  std::vector<FieldElement> kron(27 * 27, f.zero());
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c) kron[flat(i, j, k) * 27 + flat(a, b, c)] = g(i, a) * g(j, b) * h(c, k);
  std::array<FieldElement, 27> out;
  for (std::size_t col = 0; col < 27; ++col) {
    FieldElement acc = f.zero();
    for (std::size_t row = 0; row < 27; ++row) acc += lam.coeffs()[row] * kron[row * 27 + col];
    out[col] = acc;
  }
  return StructureVector(f, out);
}

Vec3 product(const StructureVector& lambda, const Vec3& u, const Vec3& v) {
  const Field& f = lambda.field();
  Vec3 w{f.zero(), f.zero(), f.zero()};
  for (int i = 0; i < 3; ++i) {
    FieldElement ui = f.embed(u[static_cast<std::size_t>(i)]);
    if (ui.is_zero()) continue;
    for (int j = 0; j < 3; ++j) {
      FieldElement uv = ui * f.embed(v[static_cast<std::size_t>(j)]);
      if (uv.is_zero()) continue;
      for (int k = 0; k < 3; ++k) w[static_cast<std::size_t>(k)] += uv * lambda.coeffs()[flat(i, j, k)];
    }
  }
  return w;
}

Vec3 basis_column(const Field& f, int i) {
  check_index(i);
  Vec3 v{f.zero(), f.zero(), f.zero()};
  v[static_cast<std::size_t>(i - 1)] = f.one();
  return v;
}

StructureVector from_relations(const Field& f, const std::vector<Relation>& rels) {
  StructureVector v(f);
  std::set<std::pair<int, int>> seen;
  for (const auto& r : rels) {
    check_index(r.i);
    check_index(r.j);
    if (!seen.emplace(r.i, r.j).second) {
      throw Error("duplicate relation for e" + std::to_string(r.i) + "e" + std::to_string(r.j));
    }
    for (int k = 1; k <= 3; ++k) v.set(r.i, r.j, k, r.value[static_cast<std::size_t>(k - 1)]);
  }
  return v;
}

}  // namespace nildeg
