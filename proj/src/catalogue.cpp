#include "nildeg/catalogue.hpp"

#include <cctype>
#include <ostream>

#include "nildeg/algprops.hpp"

namespace nildeg {

namespace {

FieldElement param_in(const AlgebraId& id, const Field& f) {
  if (!id.param) throw Error(id.to_string() + " has no parameter");
  return f.embed(*id.param);
}

Vec3 vec(const Field& f, long long a, long long b, long long c) { return {f.from_int(a), f.from_int(b), f.from_int(c)}; }

Matrix columns(const Vec3& a, const Vec3& b, const Vec3& c) { return Matrix::from_columns(a, b, c); }


}  // namespace

bool AlgebraId::is_classified() const {
  switch (tag) {
    case Tag::A0:
    case Tag::C1:
    case Tag::C3:
    case Tag::Adelta:
    case Tag::L1:
    case Tag::C5:
      return true;
    default:
      return false;
  }
}

std::string AlgebraId::to_string() const {
  auto p = [&] { return param ? param->to_string() : std::string("?"); };
  switch (tag) {
    case Tag::A0: return "a0";
    case Tag::C1: return "c1";
    case Tag::C3: return "c3";
    case Tag::Adelta: return "a(" + p() + ")";
    case Tag::L1: return "l1";
    case Tag::C5: return "c5";
    case Tag::Chat3: return "chat3";
    case Tag::A2: return "a2";
    case Tag::A3kappa: return "a3(" + p() + ")";
    case Tag::Hbeta: return "h(" + p() + ")";
    case Tag::Rho: return "rho";
  }
  return "?";
}

AlgebraId AlgebraId::parse(std::string_view text, const Field& f) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  }
  std::string lower;
  for (char c : s) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  static const std::vector<std::pair<std::string, Tag>> fixed = {
      {"a0", Tag::A0}, {"c1", Tag::C1},       {"c3", Tag::C3}, {"l1", Tag::L1},
      {"c5", Tag::C5}, {"chat3", Tag::Chat3}, {"a2", Tag::A2}, {"rho", Tag::Rho}};
  for (const auto& [name, tag] : fixed) {
    if (lower == name) return {tag, {}};
  }
  auto with_param = [&](const std::string& prefix, Tag tag) -> std::optional<AlgebraId> {
    if (lower.size() > prefix.size() + 1 && lower.compare(0, prefix.size(), prefix) == 0 && lower.back() == ')') {
      std::string inner = s.substr(prefix.size(), s.size() - prefix.size() - 1);
      return AlgebraId{tag, f.parse(inner)};
    }
    return std::nullopt;
  };
  if (auto id = with_param("a3(", Tag::A3kappa)) return *id;
  if (auto id = with_param("a(", Tag::Adelta)) return *id;
  if (auto id = with_param("h(", Tag::Hbeta)) return *id;
  throw ParseError("unknown algebra id '" + std::string(text) + "'");
}

bool operator==(const AlgebraId& a, const AlgebraId& b) {
  if (a.tag != b.tag) return false;
  if (a.param.has_value() != b.param.has_value()) return false;
  return !a.param || *a.param == *b.param;
}

std::ostream& operator<<(std::ostream& os, const AlgebraId& id) { return os << id.to_string(); }

StructureVector structure_of(const AlgebraId& id, const Field& f) {
  auto bv = [&](int i, int j, int k) { return StructureVector::basis_vector(f, i, j, k); };
  switch (id.tag) {
    case Tag::A0:
      return StructureVector(f);
    case Tag::C1:
      return bv(3, 3, 1);
    case Tag::C3:
      return bv(2, 2, 1) + bv(3, 3, 1);
    case Tag::Adelta:
      return bv(2, 2, 1) + bv(2, 3, 1) + param_in(id, f) * bv(3, 3, 1);
    case Tag::L1:
      return bv(2, 3, 1) - bv(3, 2, 1);
    case Tag::C5:
      return bv(1, 1, 2) + bv(1, 2, 3) + bv(2, 1, 3);
    case Tag::Chat3:
      return bv(2, 3, 1) + bv(3, 2, 1);
    case Tag::A2:
      return bv(2, 3, 1);
    case Tag::A3kappa:
      return bv(2, 2, 1) + param_in(id, f) * bv(3, 2, 1) + bv(3, 3, 1);
    case Tag::Hbeta:
      return bv(2, 3, 1) + param_in(id, f) * bv(3, 2, 1);
    case Tag::Rho:
      return bv(2, 2, 1) + f.from_int(2) * bv(3, 2, 1) + bv(3, 3, 1);
  }
  throw Error("unreachable");
}

std::string relations_text(Tag tag) {
  switch (tag) {
    case Tag::A0: return "all products zero";
    case Tag::C1: return "e3e3=e1";
    case Tag::C3: return "e2e2=e1, e3e3=e1";
    case Tag::Adelta: return "e2e2=e1, e3e3=delta*e1, e2e3=e1";
    case Tag::L1: return "e2e3=e1, e3e2=-e1";
    case Tag::C5: return "e1e1=e2, e1e2=e3, e2e1=e3";
    case Tag::Chat3: return "e2e3=e1, e3e2=e1";
    case Tag::A2: return "e2e3=e1";
    case Tag::A3kappa: return "e2e2=e1, e3e2=kappa*e1, e3e3=e1";
    case Tag::Hbeta: return "e2e3=e1, e3e2=beta*e1";
    case Tag::Rho: return "e2e2=e1, e3e2=2*e1, e3e3=e1";
  }
  return "";
}

std::vector<AlgebraId> classified_fixed() {
  return {AlgebraId::a0(), AlgebraId::c1(), AlgebraId::l1(), AlgebraId::c3(), AlgebraId::c5()};
}

// ---------------------------------------------------------------------------

IsoWitness::IsoWitness(AlgebraId src, AlgebraId dst, Matrix matrix, std::string constraint)
    : src_(std::move(src)), dst_(std::move(dst)), matrix_(std::move(matrix)), constraint_(std::move(constraint)) {
  Field f = matrix_field(matrix_);
  StructureVector image = act(structure_of(src_, f), matrix_);
  StructureVector target = structure_of(dst_, f);
  if (image != target) {
    throw Error("isomorphism witness " + src_.to_string() + " -> " + dst_.to_string() + " fails: got " +
                image.to_string() + ", expected " + target.to_string());
  }
}

IsoWitness iso_witness(const AlgebraId& src, const AlgebraId& dst, const Field& f) {
  const bool char2 = f.characteristic() == 2;
  if (src.tag == Tag::Hbeta && dst.tag == Tag::Hbeta) {
    FieldElement b = param_in(src, f);
    if (b.is_zero() || param_in(dst, f) != b.inverse()) throw Error("h pair is not (b, 1/b)");
    return IsoWitness(src, dst, columns({b, f.zero(), f.zero()}, vec(f, 0, 0, 1), vec(f, 0, 1, 0)));
  }
  if (src.tag == Tag::Adelta && dst.tag == Tag::A3kappa) {
    FieldElement d = param_in(src, f), k = param_in(dst, f);
    if (d.is_zero() || k * k * d != f.one()) throw Error("a/a3 pair needs kappa^2 * delta = 1");
    return IsoWitness(src, dst, columns(vec(f, 1, 0, 0), {f.zero(), f.zero(), k}, vec(f, 0, 1, 0)));
  }
  if (src.tag == Tag::A3kappa && dst.tag == Tag::Hbeta) {
    FieldElement k = param_in(src, f), b = param_in(dst, f);
    // alpha with alpha^2 = -beta and alpha^2 + kappa*alpha + 1 = 0
    for (const FieldElement& a : quadratic_roots(f.one(), k, f.one())) {
      if (a * a != -b) continue;
      FieldElement ai = a.inverse();
      if ((a - ai).is_zero()) throw Error("alpha in {1, -1}: the witness degenerates");
      Matrix g = zero_matrix(f);
      g(0, 0) = a - ai;
      g(1, 1) = a;
      g(1, 2) = f.one();
      g(2, 1) = f.one();
      g(2, 2) = a;
      return IsoWitness(src, dst, g);
    }
    if (quadratic_roots(f.one(), k, f.one()).empty()) {
      throw SquareRootMissing(k * k - f.from_int(4));
    }
    throw Error("a3/h pair needs beta = -alpha^2 for a root alpha of x^2 + kappa x + 1");
  }
  if (src.tag == Tag::C3 && dst.tag == Tag::Chat3) {
    if (char2) throw Error("c3 -> chat3 witness needs char != 2");
    FieldElement w = require_sqrt(-f.one());
    return IsoWitness(src, dst, columns(vec(f, 2, 0, 0), {f.zero(), f.one(), -w}, {f.zero(), f.one(), w}), "char != 2");
  }
  if (src.tag == Tag::A2 && dst.tag == Tag::Adelta && param_in(dst, f).is_zero()) {
    return IsoWitness(src, dst, columns(vec(f, 1, 0, 0), vec(f, 0, 1, 1), vec(f, 0, 0, 1)));
  }
  throw Error("no catalogued isomorphism " + src.to_string() + " -> " + dst.to_string());
}

// ---------------------------------------------------------------------------

Matrix Canonical::composite(const Field& f) const {
  Matrix m = identity_matrix(f);
  for (const auto& w : chain) m = m * embed_matrix(f, w.matrix());
  return m;
}

namespace {

IsoWitness inverted(const IsoWitness& w) { return IsoWitness(w.dst(), w.src(), inverse(w.matrix()), w.constraint()); }

void append(std::vector<IsoWitness>& chain, const std::vector<IsoWitness>& more) {
  chain.insert(chain.end(), more.begin(), more.end());
}

}  // namespace

Canonical canonicalize(const AlgebraId& id, const Field& f) {
  const bool char2 = f.characteristic() == 2;
  const Matrix I = identity_matrix(f);
  switch (id.tag) {
    case Tag::A0:
    case Tag::C1:
    case Tag::C3:
    case Tag::L1:
    case Tag::C5:
      return {id, {}};
    case Tag::Adelta:
      return {AlgebraId::adelta(param_in(id, f)), {}};
    case Tag::Chat3:
      if (char2) return {AlgebraId::l1(), {IsoWitness(id, AlgebraId::l1(), I, "char 2")}};
      return {AlgebraId::c3(), {inverted(iso_witness(AlgebraId::c3(), id, f))}};
    case Tag::A2: {
      AlgebraId dst = AlgebraId::adelta(f.zero());
      return {dst, {iso_witness(id, dst, f)}};
    }
    case Tag::Rho: {
      AlgebraId k2 = AlgebraId::a3kappa(f.from_int(2));
      Canonical rest = canonicalize(k2, f);
      std::vector<IsoWitness> chain{IsoWitness(id, k2, I)};
      append(chain, rest.chain);
      return {rest.id, chain};
    }
    case Tag::A3kappa: {
      FieldElement k = param_in(id, f);
      if (k.is_zero()) return {AlgebraId::c3(), {IsoWitness(id, AlgebraId::c3(), I)}};
      AlgebraId dst = AlgebraId::adelta((k * k).inverse());
      return {dst, {inverted(iso_witness(dst, AlgebraId::a3kappa(k), f))}};
    }
    case Tag::Hbeta: {
      FieldElement b = param_in(id, f);
      AlgebraId h = AlgebraId::hbeta(b);
      if (b == -f.one()) return {AlgebraId::l1(), {IsoWitness(h, AlgebraId::l1(), I)}};
      if (b.is_zero() || b.is_one()) {
        AlgebraId next = b.is_zero() ? AlgebraId::a2() : AlgebraId::chat3();
        Canonical rest = canonicalize(next, f);
        std::vector<IsoWitness> chain{IsoWitness(h, next, I)};
        append(chain, rest.chain);
        return {rest.id, chain};
      }
      if (auto a = sqrt(-b)) {
        FieldElement k = -(*a + a->inverse());
        AlgebraId a3 = AlgebraId::a3kappa(k);
        std::vector<IsoWitness> chain{inverted(iso_witness(a3, h, f))};
        append(chain, canonicalize(a3, f).chain);
        return {chain.back().dst(), chain};
      }
      // No square root of -beta here: use the direct normal-form reduction.
      Identification r = identify(structure_of(h, f));
      return {r.id, {IsoWitness(h, r.id, r.witness)}};
    }
  }
  throw Error("unreachable");
}

bool same_r_class(const FieldElement& b1, const FieldElement& b2) { return b1 == b2 || (b1 * b2).is_one(); }

// ---------------------------------------------------------------------------

namespace {

struct Form2 {
  FieldElement m[2][2];
  FieldElement bil(const FieldElement x[2], const FieldElement y[2]) const {
    return x[0] * (m[0][0] * y[0] + m[0][1] * y[1]) + x[1] * (m[1][0] * y[0] + m[1][1] * y[1]);
  }
};

}  // namespace

Identification identify(const StructureVector& lambda) {
  const Field& f = lambda.field();
  if (!is_associative(lambda)) throw NotNilpotent("not associative: " + lambda.to_string());
  const int cls = nilpotency_class(lambda);
  const Matrix I = identity_matrix(f);

  auto finish = [&](AlgebraId id, Matrix w) {
    if (act(lambda, w) != structure_of(id, f)) {
      throw Error("internal: identification witness failed for " + lambda.to_string());
    }
    return Identification{std::move(id), std::move(w)};
  };

  if (cls == 0) return {AlgebraId::a0(), I};

  if (cls == 3) {
    for (int i = 1; i <= 3; ++i) {
      Vec3 w = basis_column(f, i);
      Vec3 w2 = product(lambda, w, w);
      Vec3 w3 = product(lambda, w2, w);
      if (!(w3[0].is_zero() && w3[1].is_zero() && w3[2].is_zero())) {
        return finish(AlgebraId::c5(), columns(w, w2, w3));
      }
    }
    throw Error("internal: class 3 without a generator among basis vectors");
  }
  if (cls != 2) throw Error("internal: unexpected nilpotency class");

  // A^2 is a line spanned by z and lies in the annihilator.
  Vec3 z;
  bool found = false;
  for (int i = 1; i <= 3 && !found; ++i)
    for (int j = 1; j <= 3 && !found; ++j) {
      Vec3 p = product(lambda, basis_column(f, i), basis_column(f, j));
      if (!(p[0].is_zero() && p[1].is_zero() && p[2].is_zero())) {
        z = p;
        found = true;
      }
    }
  std::size_t piv = 0;
  while (z[piv].is_zero()) ++piv;
  std::array<Vec3, 2> u;
  for (int i = 0, n = 0; i < 3; ++i) {
    if (static_cast<std::size_t>(i) != piv) u[static_cast<std::size_t>(n++)] = basis_column(f, i + 1);
  }
  Form2 M;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) M.m[a][b] = product(lambda, u[a], u[b])[piv] / z[piv];

  auto lift = [&](const FieldElement x[2]) {
    Vec3 v;
    for (int r = 0; r < 3; ++r) v[r] = x[0] * u[0][r] + x[1] * u[1][r];
    return v;
  };
  auto scaled = [&](const FieldElement& c, const Vec3& v) { return Vec3{c * v[0], c * v[1], c * v[2]}; };

  const FieldElement zero = f.zero(), one = f.one();
  const bool symmetric = M.m[0][1] == M.m[1][0];
  const bool alternating = M.m[0][0].is_zero() && M.m[1][1].is_zero() && M.m[0][1] == -M.m[1][0];

  if (alternating) {
    FieldElement e1[2] = {one, zero}, e2[2] = {zero, one};
    return finish(AlgebraId::l1(), columns(scaled(M.m[0][1], z), lift(e1), lift(e2)));
  }

  const FieldElement cand[3][2] = {{one, zero}, {zero, one}, {one, one}};
  auto nonisotropic = [&](FieldElement out[2]) {
    for (const auto& c : cand) {
      if (!M.bil(c, c).is_zero()) {
        out[0] = c[0];
        out[1] = c[1];
        return;
      }
    }
    throw Error("internal: form is totally isotropic");
  };

  FieldElement v2[2];
  nonisotropic(v2);
  const FieldElement c = M.bil(v2, v2);
  const FieldElement det = M.m[0][0] * M.m[1][1] - M.m[0][1] * M.m[1][0];

  if (symmetric) {
    if (det.is_zero()) {
      FieldElement r[2];
      if (!(M.m[0][0].is_zero() && M.m[0][1].is_zero())) {
        r[0] = -M.m[0][1];
        r[1] = M.m[0][0];
      } else {
        r[0] = one;
        r[1] = zero;
      }
      return finish(AlgebraId::c1(), columns(scaled(c, z), lift(r), lift(v2)));
    }
    // Orthogonal complement of v2, rescaled to the same square.
    FieldElement mv[2] = {M.m[0][0] * v2[0] + M.m[0][1] * v2[1], M.m[1][0] * v2[0] + M.m[1][1] * v2[1]};
    FieldElement w[2] = {-mv[1], mv[0]};
    FieldElement d = M.bil(w, w);
    if (d.is_zero()) throw Error("internal: degenerate orthogonal complement");
    FieldElement s = require_sqrt(c / d);
    FieldElement v3[2] = {s * w[0], s * w[1]};
    return finish(AlgebraId::c3(), columns(scaled(c, z), lift(v2), lift(v3)));
  }

  // v3 with B(v3, v2) = 0 and B(v2, v3) = c.
  FieldElement a11 = M.m[0][0] * v2[0] + M.m[0][1] * v2[1];
  FieldElement a12 = M.m[1][0] * v2[0] + M.m[1][1] * v2[1];
  FieldElement a21 = v2[0] * M.m[0][0] + v2[1] * M.m[1][0];
  FieldElement a22 = v2[0] * M.m[0][1] + v2[1] * M.m[1][1];
  FieldElement dd = a11 * a22 - a12 * a21;
  if (dd.is_zero()) throw Error("internal: singular system in normal-form reduction");
  FieldElement v3[2] = {(-a12 * c) / dd, (a11 * c) / dd};
  FieldElement delta = M.bil(v3, v3) / c;
  FieldElement skew = M.m[0][1] - M.m[1][0];
  if (delta != det / (skew * skew)) throw Error("internal: delta invariant mismatch");
  return finish(AlgebraId::adelta(delta), columns(scaled(c, z), lift(v2), lift(v3)));
}

}  // namespace nildeg
