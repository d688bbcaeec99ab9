#include "nildeg/fields.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace nildeg {

namespace {

const FieldData& data(const FieldPtr& p) { return *p; }

bool same_field(const FieldPtr& a, const FieldPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  const FieldData& x = *a;
  const FieldData& y = *b;
  if (x.kind != y.kind || x.characteristic != y.characteristic) return false;
  switch (x.kind) {
    case FieldKind::Rationals:
      return true;
    case FieldKind::Prime:
      return x.modulus == y.modulus;
    case FieldKind::Extension:
      return x.name == y.name && *x.base == *y.base && upoly::equal(x.min_poly, y.min_poly);
    case FieldKind::Function:
      return x.name == y.name && *x.base == *y.base;
  }
  return false;
}

void require_same(const FieldElement& a, const FieldElement& b) {
  if (!a.valid() || !b.valid()) throw Error("operation on an uninitialised field element");
  if (!same_field(a.field_ptr(), b.field_ptr())) {
    throw FieldMismatch(a.field().describe() + " vs " + b.field().describe());
  }
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

FieldElement reduce_mod(const Field& ext, Coeffs c) {
  const FieldData& d = data(ext.ptr());
  const Field& base = *d.base;
  if (upoly::degree(c) >= upoly::degree(d.min_poly)) {
    c = upoly::divmod(c, d.min_poly, base).second;
  }
  upoly::trim(c);
  return FieldElement(ext.ptr(), std::move(c));
}

FieldElement normalize_fraction(const Field& ff, Coeffs num, Coeffs den) {
  const Field& base = *data(ff.ptr()).base;
  upoly::trim(num);
  upoly::trim(den);
  if (upoly::is_zero(den)) throw DivisionByZero();
  if (upoly::is_zero(num)) {
    return FieldElement(ff.ptr(), FieldElement::Fraction{{}, {base.one()}});
  }
  Coeffs g = upoly::monic_gcd(num, den, base);
  if (upoly::degree(g) > 0) {
    num = upoly::divmod(num, g, base).first;
    den = upoly::divmod(den, g, base).first;
  }
  FieldElement lc_inv = den.back().inverse();
  num = upoly::scale(num, lc_inv);
  den = upoly::scale(den, lc_inv);
  return FieldElement(ff.ptr(), FieldElement::Fraction{std::move(num), std::move(den)});
}

// Inverse of a modulo m over `base`; m is expected irreducible.
Coeffs inverse_mod(const Coeffs& a, const Coeffs& m, const Field& base) {
  Coeffs r0 = m, r1 = a, s0, s1{base.one()};
  while (!upoly::is_zero(r1)) {
    auto [q, r] = upoly::divmod(r0, r1, base);
    r0 = std::move(r1);
    r1 = std::move(r);
    Coeffs s2 = upoly::sub(s0, upoly::mul(q, s1, base), base);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (upoly::degree(r0) != 0) throw Error("zero divisor: minimal polynomial is reducible");
  return upoly::scale(s0, r0[0].inverse());
}

bool is_composite_text(const std::string& s) {
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i] == '+' || s[i] == '-') return true;
  }
  return s.find('/') != std::string::npos;
}

}  // namespace

// ---------------------------------------------------------------------------
// upoly

namespace upoly {

void trim(Coeffs& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

bool is_zero(const Coeffs& p) {
  return std::all_of(p.begin(), p.end(), [](const FieldElement& c) { return c.is_zero(); });
}

long degree(const Coeffs& p) {
  for (long i = static_cast<long>(p.size()) - 1; i >= 0; --i) {
    if (!p[i].is_zero()) return i;
  }
  return -1;
}

Coeffs add(const Coeffs& a, const Coeffs& b, const Field& f) {
  Coeffs r(std::max(a.size(), b.size()), f.zero());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = r[i] + b[i];
  trim(r);
  return r;
}

Coeffs sub(const Coeffs& a, const Coeffs& b, const Field& f) {
  Coeffs r(std::max(a.size(), b.size()), f.zero());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = r[i] - b[i];
  trim(r);
  return r;
}

Coeffs mul(const Coeffs& a, const Coeffs& b, const Field& f) {
  if (a.empty() || b.empty()) return {};
  Coeffs r(a.size() + b.size() - 1, f.zero());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j].is_zero()) continue;
      r[i + j] = r[i + j] + a[i] * b[j];
    }
  }
  trim(r);
  return r;
}

Coeffs scale(const Coeffs& a, const FieldElement& s) {
  Coeffs r;
  r.reserve(a.size());
  for (const auto& c : a) r.push_back(c * s);
  trim(r);
  return r;
}

std::pair<Coeffs, Coeffs> divmod(const Coeffs& a, const Coeffs& b, const Field& f) {
  long db = degree(b);
  if (db < 0) throw DivisionByZero();
  Coeffs r = a;
  trim(r);
  long dr = degree(r);
  if (dr < db) return {{}, r};
  Coeffs q(static_cast<std::size_t>(dr - db + 1), f.zero());
  FieldElement lc_inv = b[static_cast<std::size_t>(db)].inverse();
  while ((dr = degree(r)) >= db) {
    FieldElement c = r[static_cast<std::size_t>(dr)] * lc_inv;
    std::size_t shift = static_cast<std::size_t>(dr - db);
    q[shift] = c;
    for (long i = 0; i <= db; ++i) {
      auto idx = shift + static_cast<std::size_t>(i);
      r[idx] = r[idx] - c * b[static_cast<std::size_t>(i)];
    }
    trim(r);
  }
  trim(q);
  return {q, r};
}

Coeffs monic_gcd(const Coeffs& a, const Coeffs& b, const Field& f) {
  Coeffs x = a, y = b;
  trim(x);
  trim(y);
  while (!y.empty()) {
    Coeffs r = divmod(x, y, f).second;
    x = std::move(y);
    y = std::move(r);
  }
  if (x.empty()) return x;
  return scale(x, x.back().inverse());
}

FieldElement eval(const Coeffs& p, const FieldElement& x, const Field& f) {
  FieldElement acc = f.zero();
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

bool equal(const Coeffs& a, const Coeffs& b) {
  long da = degree(a);
  if (da != degree(b)) return false;
  for (long i = 0; i <= da; ++i) {
    if (a[static_cast<std::size_t>(i)] != b[static_cast<std::size_t>(i)]) return false;
  }
  return true;
}

std::size_t order_at_zero(const Coeffs& p) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!p[i].is_zero()) return i;
  }
  throw Error("order_at_zero of the zero polynomial");
}

std::string render(const Coeffs& p, const std::string& var, bool ascending) {
  std::vector<std::string> terms;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p[k].is_zero()) continue;
    std::string c = p[k].to_string();
    if (k == 0) {
      terms.push_back(is_composite_text(c) && p.size() > 1 ? "(" + c + ")" : c);
      continue;
    }
    std::string mono = k == 1 ? var : var + "^" + std::to_string(k);
    if (c == "1") {
      terms.push_back(mono);
    } else if (c == "-1") {
      terms.push_back("-" + mono);
    } else if (is_composite_text(c)) {
      terms.push_back("(" + c + ")*" + mono);
    } else {
      terms.push_back(c + "*" + mono);
    }
  }
  if (terms.empty()) return "0";
  if (!ascending) std::reverse(terms.begin(), terms.end());
  std::string out = terms.front();
  for (std::size_t i = 1; i < terms.size(); ++i) {
    if (terms[i][0] != '-') out += "+";
    out += terms[i];
  }
  return out;
}

}  // namespace upoly

// ---------------------------------------------------------------------------
// FieldElement

Field FieldElement::field() const { return Field(field_); }

bool FieldElement::is_zero() const {
  return std::visit(
      [](const auto& r) -> bool {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, mpq_class>) {
          return r == 0;
        } else if constexpr (std::is_same_v<T, std::uint64_t>) {
          return r == 0;
        } else if constexpr (std::is_same_v<T, Coeffs>) {
          return upoly::is_zero(r);
        } else {
          return upoly::is_zero(r.num);
        }
      },
      rep_);
}

bool FieldElement::is_one() const { return valid() && *this == field().one(); }

FieldElement FieldElement::operator-() const { return field().zero() - *this; }

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw DivisionByZero();
  const FieldData& d = data(field_);
  switch (d.kind) {
    case FieldKind::Rationals:
      return FieldElement(field_, mpq_class(1) / std::get<mpq_class>(rep_));
    case FieldKind::Prime: {
      std::uint64_t a = std::get<std::uint64_t>(rep_);
      return FieldElement(field_, powmod(a, d.modulus - 2, d.modulus));
    }
    case FieldKind::Extension:
      return FieldElement(field_, inverse_mod(std::get<Coeffs>(rep_), d.min_poly, *d.base));
    case FieldKind::Function: {
      const auto& fr = std::get<Fraction>(rep_);
      return normalize_fraction(field(), fr.den, fr.num);
    }
  }
  throw Error("unreachable");
}

FieldElement FieldElement::pow(long long e) const {
  if (e < 0) return inverse().pow(-e);
  FieldElement base = *this, acc = field().one();
  auto n = static_cast<unsigned long long>(e);
  while (n) {
    if (n & 1) acc = acc * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return acc;
}

FieldElement FieldElement::pow(const mpz_class& e) const {
  if (e < 0) return inverse().pow(mpz_class(-e));
  FieldElement base = *this, acc = field().one();
  std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = 0; i < bits; ++i) {
    if (mpz_tstbit(e.get_mpz_t(), i)) acc = acc * base;
    if (i + 1 < bits) base = base * base;
  }
  return acc;
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  require_same(a, b);
  const FieldData& d = data(a.field_);
  switch (d.kind) {
    case FieldKind::Rationals:
      return FieldElement(a.field_, mpq_class(std::get<mpq_class>(a.rep_) + std::get<mpq_class>(b.rep_)));
    case FieldKind::Prime: {
      std::uint64_t s = std::get<std::uint64_t>(a.rep_) + std::get<std::uint64_t>(b.rep_);
      if (s >= d.modulus || s < std::get<std::uint64_t>(a.rep_)) s -= d.modulus;
      return FieldElement(a.field_, s);
    }
    case FieldKind::Extension:
      return FieldElement(a.field_, upoly::add(std::get<Coeffs>(a.rep_), std::get<Coeffs>(b.rep_), *d.base));
    case FieldKind::Function: {
      const auto& x = std::get<FieldElement::Fraction>(a.rep_);
      const auto& y = std::get<FieldElement::Fraction>(b.rep_);
      const Field& k = *d.base;
      if (upoly::equal(x.den, y.den)) return normalize_fraction(a.field(), upoly::add(x.num, y.num, k), x.den);
      return normalize_fraction(a.field(),
                                upoly::add(upoly::mul(x.num, y.den, k), upoly::mul(y.num, x.den, k), k),
                                upoly::mul(x.den, y.den, k));
    }
  }
  throw Error("unreachable");
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) {
  require_same(a, b);
  const FieldData& d = data(a.field_);
  switch (d.kind) {
    case FieldKind::Rationals:
      return FieldElement(a.field_, mpq_class(std::get<mpq_class>(a.rep_) - std::get<mpq_class>(b.rep_)));
    case FieldKind::Prime: {
      std::uint64_t x = std::get<std::uint64_t>(a.rep_), y = std::get<std::uint64_t>(b.rep_);
      return FieldElement(a.field_, x >= y ? x - y : d.modulus - (y - x));
    }
    case FieldKind::Extension:
      return FieldElement(a.field_, upoly::sub(std::get<Coeffs>(a.rep_), std::get<Coeffs>(b.rep_), *d.base));
    case FieldKind::Function: {
      const auto& x = std::get<FieldElement::Fraction>(a.rep_);
      const auto& y = std::get<FieldElement::Fraction>(b.rep_);
      const Field& k = *d.base;
      if (upoly::equal(x.den, y.den)) return normalize_fraction(a.field(), upoly::sub(x.num, y.num, k), x.den);
      return normalize_fraction(a.field(),
                                upoly::sub(upoly::mul(x.num, y.den, k), upoly::mul(y.num, x.den, k), k),
                                upoly::mul(x.den, y.den, k));
    }
  }
  throw Error("unreachable");
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  require_same(a, b);
  const FieldData& d = data(a.field_);
  switch (d.kind) {
    case FieldKind::Rationals:
      return FieldElement(a.field_, mpq_class(std::get<mpq_class>(a.rep_) * std::get<mpq_class>(b.rep_)));
    case FieldKind::Prime:
      return FieldElement(a.field_, mulmod(std::get<std::uint64_t>(a.rep_), std::get<std::uint64_t>(b.rep_), d.modulus));
    case FieldKind::Extension:
      return reduce_mod(a.field(), upoly::mul(std::get<Coeffs>(a.rep_), std::get<Coeffs>(b.rep_), *d.base));
    case FieldKind::Function: {
      const auto& x = std::get<FieldElement::Fraction>(a.rep_);
      const auto& y = std::get<FieldElement::Fraction>(b.rep_);
      const Field& k = *d.base;
      if (upoly::is_zero(x.num) || upoly::is_zero(y.num)) return a.field().zero();
      return normalize_fraction(a.field(), upoly::mul(x.num, y.num, k), upoly::mul(x.den, y.den, k));
    }
  }
  throw Error("unreachable");
}

FieldElement operator/(const FieldElement& a, const FieldElement& b) {
  require_same(a, b);
  return a * b.inverse();
}

bool operator==(const FieldElement& a, const FieldElement& b) {
  if (!same_field(a.field_, b.field_)) return false;
  if (!a.valid()) return true;
  switch (data(a.field_).kind) {
    case FieldKind::Rationals:
      return std::get<mpq_class>(a.rep_) == std::get<mpq_class>(b.rep_);
    case FieldKind::Prime:
      return std::get<std::uint64_t>(a.rep_) == std::get<std::uint64_t>(b.rep_);
    case FieldKind::Extension:
      return upoly::equal(std::get<Coeffs>(a.rep_), std::get<Coeffs>(b.rep_));
    case FieldKind::Function: {
      const auto& x = std::get<FieldElement::Fraction>(a.rep_);
      const auto& y = std::get<FieldElement::Fraction>(b.rep_);
      return upoly::equal(x.num, y.num) && upoly::equal(x.den, y.den);
    }
  }
  return false;
}

const Coeffs& FieldElement::numerator() const {
  if (!std::holds_alternative<Fraction>(rep_)) throw Error("numerator() needs a rational-function element");
  return std::get<Fraction>(rep_).num;
}

const Coeffs& FieldElement::denominator() const {
  if (!std::holds_alternative<Fraction>(rep_)) throw Error("denominator() needs a rational-function element");
  return std::get<Fraction>(rep_).den;
}

std::string FieldElement::to_string() const {
  if (!valid()) return "<invalid>";
  const FieldData& d = data(field_);
  switch (d.kind) {
    case FieldKind::Rationals:
      return std::get<mpq_class>(rep_).get_str();
    case FieldKind::Prime:
      return std::to_string(std::get<std::uint64_t>(rep_));
    case FieldKind::Extension:
      return upoly::render(std::get<Coeffs>(rep_), d.name, true);
    case FieldKind::Function: {
      const auto& fr = std::get<Fraction>(rep_);
      std::string num = upoly::render(fr.num, d.name, false);
      if (upoly::degree(fr.den) == 0) return num;
      std::string den = upoly::render(fr.den, d.name, false);
      if (is_composite_text(num) || num.find('*') != std::string::npos) num = "(" + num + ")";
      return num + "/(" + den + ")";
    }
  }
  return "?";
}

std::ostream& operator<<(std::ostream& os, const FieldElement& x) { return os << x.to_string(); }

// ---------------------------------------------------------------------------
// Field

Field Field::rationals() {
  static const FieldPtr q = [] {
    auto d = std::make_shared<FieldData>();
    d->kind = FieldKind::Rationals;
    return FieldPtr(std::move(d));
  }();
  return Field(q);
}

Field Field::prime(std::uint64_t p) {
  mpz_class z(std::to_string(p));
  if (p < 2 || mpz_probab_prime_p(z.get_mpz_t(), 40) == 0) {
    throw Error("GF(p) needs a prime modulus, got " + std::to_string(p));
  }
  if (p >= (std::uint64_t{1} << 63)) throw NotSupported("prime modulus >= 2^63");
  auto d = std::make_shared<FieldData>();
  d->kind = FieldKind::Prime;
  d->characteristic = p;
  d->modulus = p;
  return Field(std::move(d));
}

namespace {

// Ben-Or: no factor of degree i divides m for i <= deg/2, tested through
// gcd(m, x^(q^i) - x). m is monic over a finite field of order q.
bool finite_irreducible(const Field& k, const Coeffs& m) {
  const mpz_class q = *k.order();
  const long n = upoly::degree(m);
  const Coeffs x{k.zero(), k.one()};
  auto mulmod = [&](const Coeffs& a, const Coeffs& b) { return upoly::divmod(upoly::mul(a, b, k), m, k).second; };
  Coeffs h = x;
  for (long i = 1; 2 * i <= n; ++i) {
    Coeffs base = h, acc{k.one()};
    for (mpz_class e = q; e > 0; e >>= 1) {
      if (mpz_odd_p(e.get_mpz_t())) acc = mulmod(acc, base);
      base = mulmod(base, base);
    }
    h = acc;
    if (upoly::degree(upoly::monic_gcd(m, upoly::sub(h, x, k), k)) > 0) return false;
  }
  return true;
}

}  // namespace

Field Field::extend(Coeffs min_poly, std::string name, bool assume_irreducible) const {
  for (auto& c : min_poly) c = embed(c);
  upoly::trim(min_poly);
  long deg = upoly::degree(min_poly);
  if (deg < 2) throw Error("extension needs a minimal polynomial of degree >= 2");
  min_poly = upoly::scale(min_poly, min_poly.back().inverse());
  if (!assume_irreducible) {
    if (deg == 2) {
      if (!quadratic_roots(min_poly[2], min_poly[1], min_poly[0]).empty()) {
        throw Error("minimal polynomial already has a root in " + describe());
      }
    } else if (is_finite()) {
      if (!finite_irreducible(*this, min_poly)) throw Error("minimal polynomial is reducible over " + describe());
    } else if (deg == 3 && kind() == FieldKind::Rationals) {
      if (!small_degree_roots(min_poly).empty()) {
        throw Error("minimal polynomial already has a root in " + describe());
      }
    } else {
      throw NotSupported("irreducibility check for degree " + std::to_string(deg) + " over " + describe() +
                         "; pass assume_irreducible");
    }
  }
  auto d = std::make_shared<FieldData>();
  d->kind = FieldKind::Extension;
  d->characteristic = characteristic();
  d->base = *this;
  d->min_poly = std::move(min_poly);
  d->name = std::move(name);
  return Field(std::move(d));
}

Field Field::rational_functions(std::string var) const {
  auto d = std::make_shared<FieldData>();
  d->kind = FieldKind::Function;
  d->characteristic = characteristic();
  d->base = *this;
  d->name = std::move(var);
  return Field(std::move(d));
}

FieldKind Field::kind() const { return data(ptr_).kind; }
std::uint64_t Field::characteristic() const { return data(ptr_).characteristic; }

std::optional<mpz_class> Field::order() const {
  const FieldData& d = data(ptr_);
  switch (d.kind) {
    case FieldKind::Rationals:
    case FieldKind::Function:
      return std::nullopt;
    case FieldKind::Prime:
      return mpz_class(std::to_string(d.modulus));
    case FieldKind::Extension: {
      auto b = d.base->order();
      if (!b) return std::nullopt;
      mpz_class r;
      mpz_pow_ui(r.get_mpz_t(), b->get_mpz_t(), static_cast<unsigned long>(upoly::degree(d.min_poly)));
      return r;
    }
  }
  return std::nullopt;
}

Field Field::base() const {
  const FieldData& d = data(ptr_);
  if (!d.base) throw Error(describe() + " has no base field");
  return *d.base;
}

Field Field::prime_field() const {
  Field f = *this;
  while (f.kind() == FieldKind::Extension || f.kind() == FieldKind::Function) f = f.base();
  return f;
}

const std::string& Field::generator_name() const {
  const FieldData& d = data(ptr_);
  if (!d.base) throw Error(describe() + " has no generator");
  return d.name;
}

const Coeffs& Field::min_poly() const {
  if (kind() != FieldKind::Extension) throw Error(describe() + " is not a simple extension");
  return data(ptr_).min_poly;
}

std::uint64_t Field::modulus() const {
  if (kind() != FieldKind::Prime) throw Error(describe() + " is not a prime field");
  return data(ptr_).modulus;
}

FieldElement Field::zero() const { return from_int(0); }
FieldElement Field::one() const { return from_int(1); }

FieldElement Field::from_int(long long n) const {
  const FieldData& d = data(ptr_);
  switch (d.kind) {
    case FieldKind::Rationals:
      return FieldElement(ptr_, mpq_class(static_cast<long>(n)));
    case FieldKind::Prime: {
      long long m = n % static_cast<long long>(d.modulus);
      if (m < 0) m += static_cast<long long>(d.modulus);
      return FieldElement(ptr_, static_cast<std::uint64_t>(m));
    }
    case FieldKind::Extension: {
      Coeffs c{d.base->from_int(n)};
      upoly::trim(c);
      return FieldElement(ptr_, std::move(c));
    }
    case FieldKind::Function: {
      Coeffs c{d.base->from_int(n)};
      upoly::trim(c);
      return FieldElement(ptr_, FieldElement::Fraction{std::move(c), {d.base->one()}});
    }
  }
  throw Error("unreachable");
}

FieldElement Field::from_bigint(const mpz_class& n) const {
  const FieldData& d = data(ptr_);
  switch (d.kind) {
    case FieldKind::Rationals:
      return FieldElement(ptr_, mpq_class(n));
    case FieldKind::Prime: {
      mpz_class m(std::to_string(d.modulus));
      mpz_class r;
      mpz_fdiv_r(r.get_mpz_t(), n.get_mpz_t(), m.get_mpz_t());
      return FieldElement(ptr_, static_cast<std::uint64_t>(std::stoull(r.get_str())));
    }
    case FieldKind::Extension:
    case FieldKind::Function:
      return embed(d.base->from_bigint(n));
  }
  throw Error("unreachable");
}

FieldElement Field::from_rational(const mpq_class& q) const {
  if (kind() == FieldKind::Rationals) {
    mpq_class c = q;
    c.canonicalize();
    return FieldElement(ptr_, c);
  }
  return from_bigint(q.get_num()) / from_bigint(q.get_den());
}

FieldElement Field::generator() const {
  const FieldData& d = data(ptr_);
  switch (d.kind) {
    case FieldKind::Extension: {
      Coeffs c{d.base->zero(), d.base->one()};
      return reduce_mod(*this, std::move(c));
    }
    case FieldKind::Function:
      return FieldElement(ptr_, FieldElement::Fraction{{d.base->zero(), d.base->one()}, {d.base->one()}});
    default:
      throw Error(describe() + " has no generator");
  }
}

FieldElement Field::from_coeffs(Coeffs c) const {
  if (kind() != FieldKind::Extension) throw Error("from_coeffs needs an extension field");
  for (auto& x : c) x = base().embed(x);
  return reduce_mod(*this, std::move(c));
}

FieldElement Field::from_fraction(Coeffs num, Coeffs den) const {
  if (kind() != FieldKind::Function) throw Error("from_fraction needs a rational function field");
  for (auto& x : num) x = base().embed(x);
  for (auto& x : den) x = base().embed(x);
  return normalize_fraction(*this, std::move(num), std::move(den));
}

FieldElement Field::embed(const FieldElement& x) const {
  if (!x.valid()) throw Error("embed of an uninitialised element");
  if (same_field(x.field_ptr(), ptr_)) return x;
  const FieldData& d = data(ptr_);
  if (d.kind == FieldKind::Extension) {
    Coeffs c{d.base->embed(x)};
    upoly::trim(c);
    return FieldElement(ptr_, std::move(c));
  }
  if (d.kind == FieldKind::Function) {
    Coeffs c{d.base->embed(x)};
    upoly::trim(c);
    return FieldElement(ptr_, FieldElement::Fraction{std::move(c), {d.base->one()}});
  }
  throw FieldMismatch("cannot embed element of " + x.field().describe() + " into " + describe());
}

bool Field::has_subfield(const Field& f) const {
  Field g = *this;
  while (true) {
    if (g == f) return true;
    if (g.kind() != FieldKind::Extension && g.kind() != FieldKind::Function) return false;
    g = g.base();
  }
}

std::vector<FieldElement> Field::elements() const {
  auto q = order();
  if (!q) throw Error(describe() + " is infinite");
  if (*q > 1'000'000) throw NotSupported("enumerating a field with more than 10^6 elements");
  const FieldData& d = data(ptr_);
  std::vector<FieldElement> out;
  if (d.kind == FieldKind::Prime) {
    for (std::uint64_t i = 0; i < d.modulus; ++i) out.emplace_back(ptr_, i);
    return out;
  }
  auto base_elems = d.base->elements();
  std::size_t n = static_cast<std::size_t>(upoly::degree(d.min_poly));
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    Coeffs c;
    for (std::size_t i = 0; i < n; ++i) c.push_back(base_elems[idx[i]]);
    out.push_back(reduce_mod(*this, std::move(c)));
    std::size_t pos = 0;
    while (pos < n && ++idx[pos] == base_elems.size()) idx[pos++] = 0;
    if (pos == n) break;
  }
  return out;
}

FieldElement Field::random(std::mt19937_64& rng) const {
  const FieldData& d = data(ptr_);
  switch (d.kind) {
    case FieldKind::Rationals: {
      std::uniform_int_distribution<long> num(-9, 9), den(1, 5);
      mpq_class x(num(rng), static_cast<unsigned long>(den(rng)));
      x.canonicalize();
      return FieldElement(ptr_, x);
    }
    case FieldKind::Prime: {
      std::uniform_int_distribution<std::uint64_t> u(0, d.modulus - 1);
      return FieldElement(ptr_, u(rng));
    }
    case FieldKind::Extension: {
      Coeffs c;
      for (long i = 0; i < upoly::degree(d.min_poly); ++i) c.push_back(d.base->random(rng));
      return reduce_mod(*this, std::move(c));
    }
    case FieldKind::Function: {
      Coeffs num{d.base->random(rng), d.base->random(rng)};
      Coeffs den{d.base->random(rng), d.base->one()};
      if (upoly::is_zero(den)) den = {d.base->one()};
      return normalize_fraction(*this, std::move(num), std::move(den));
    }
  }
  throw Error("unreachable");
}

std::string Field::describe() const {
  const FieldData& d = data(ptr_);
  switch (d.kind) {
    case FieldKind::Rationals:
      return "Q";
    case FieldKind::Prime:
      return "GF(" + std::to_string(d.modulus) + ")";
    case FieldKind::Extension:
      return d.base->describe() + "[" + d.name + "]/(" + upoly::render(d.min_poly, d.name, false) + ")";
    case FieldKind::Function:
      return d.base->describe() + "(" + d.name + ")";
  }
  return "?";
}

nlohmann::json Field::to_json() const {
  std::vector<Field> tower;
  Field f = *this;
  std::optional<std::string> var;
  if (f.kind() == FieldKind::Function) {
    var = f.generator_name();
    f = f.base();
  }
  while (f.kind() == FieldKind::Extension) {
    tower.push_back(f);
    f = f.base();
  }
  if (f.kind() == FieldKind::Function) throw NotSupported("JSON for a rational function field below an extension");
  nlohmann::json j;
  j["char"] = f.characteristic();
  std::reverse(tower.begin(), tower.end());
  nlohmann::json exts = nlohmann::json::array();
  for (const Field& e : tower) {
    nlohmann::json mp = nlohmann::json::array();
    for (const auto& c : e.min_poly()) {
      std::string s = c.to_string();
      bool integral = !s.empty() && std::all_of(s.begin() + (s[0] == '-' ? 1 : 0), s.end(), ::isdigit);
      if (integral && s.size() < 18) {
        mp.push_back(std::stoll(s));
      } else {
        mp.push_back(s);
      }
    }
    exts.push_back({{"name", e.generator_name()}, {"min_poly", mp}});
  }
  if (exts.size() == 1) j["ext"] = exts[0];
  if (exts.size() > 1) j["ext"] = exts;
  if (var) j["var"] = *var;
  return j;
}

Field Field::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("char")) throw ParseError("field descriptor needs a \"char\" key");
  auto c = j.at("char").get<std::uint64_t>();
  Field f = c == 0 ? rationals() : prime(c);
  if (j.contains("ext")) {
    nlohmann::json exts = j.at("ext");
    if (exts.is_object()) exts = nlohmann::json::array({exts});
    for (const auto& e : exts) {
      Coeffs mp;
      for (const auto& v : e.at("min_poly")) {
        mp.push_back(v.is_string() ? f.parse(v.get<std::string>()) : f.from_int(v.get<long long>()));
      }
      f = f.extend(std::move(mp), e.at("name").get<std::string>());
    }
  }
  if (j.contains("var")) f = f.rational_functions(j.at("var").get<std::string>());
  return f;
}

bool operator==(const Field& a, const Field& b) { return same_field(a.ptr_, b.ptr_); }

// ---------------------------------------------------------------------------
// Expression parser for the coefficient grammar.

namespace {

class ExprParser {
 public:
  ExprParser(const Field& f, std::string_view s) : field_(f), s_(s) {}

  FieldElement parse() {
    FieldElement v = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " at position " + std::to_string(pos_) + " in \"" + std::string(s_) + "\"");
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  FieldElement expr() {
    FieldElement acc = term();
    while (true) {
      char c = peek();
      if (c == '+') {
        ++pos_;
        acc = acc + term();
      } else if (c == '-') {
        ++pos_;
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  FieldElement term() {
    FieldElement acc = unary();
    while (true) {
      char c = peek();
      if (c == '*') {
        ++pos_;
        acc = acc * unary();
      } else if (c == '/') {
        ++pos_;
        acc = acc / unary();
      } else if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '(') {
        acc = acc * unary();
      } else {
        return acc;
      }
    }
  }

  FieldElement unary() {
    char c = peek();
    if (c == '-') {
      ++pos_;
      return -unary();
    }
    if (c == '+') {
      ++pos_;
      return unary();
    }
    return power();
  }

  FieldElement power() {
    FieldElement base = atom();
    if (peek() == '^') {
      ++pos_;
      bool neg = false;
      if (peek() == '-') {
        neg = true;
        ++pos_;
      }
      skip_ws();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      long long e = std::stoll(std::string(s_.substr(start, pos_ - start)));
      return base.pow(neg ? -e : e);
    }
    return base;
  }

  FieldElement atom() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      FieldElement v = expr();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return field_.from_bigint(mpz_class(std::string(s_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      return resolve(std::string(s_.substr(start, pos_ - start)));
    }
    fail(c == '\0' ? "unexpected end of input" : "unexpected '" + std::string(1, c) + "'");
  }

  FieldElement resolve(const std::string& name) {
    Field f = field_;
    while (f.kind() == FieldKind::Extension || f.kind() == FieldKind::Function) {
      if (f.generator_name() == name) return field_.embed(f.generator());
      f = f.base();
    }
    fail("unknown symbol '" + name + "' for field " + field_.describe());
  }

  const Field& field_;
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

FieldElement Field::parse(std::string_view text) const {
  try {
    return ExprParser(*this, text).parse();
  } catch (const DivisionByZero&) {
    throw ParseError("division by zero in \"" + std::string(text) + "\"");
  }
}

// ---------------------------------------------------------------------------
// Roots

namespace {

std::optional<FieldElement> sqrt_finite(const FieldElement& x) {
  Field f = x.field();
  mpz_class q = *f.order();
  if (f.characteristic() == 2) return x.pow(mpz_class(q / 2));
  mpz_class half = (q - 1) / 2;
  if (!x.pow(half).is_one()) return std::nullopt;
  mpz_class m = q - 1;
  unsigned s = 0;
  while (mpz_even_p(m.get_mpz_t())) {
    m /= 2;
    ++s;
  }
  // Deterministic non-residue search.
  std::mt19937_64 rng(0x5eedULL);
  FieldElement z = f.one();
  for (std::uint64_t n = 2;; ++n) {
    z = f.kind() == FieldKind::Prime && n < f.modulus() ? f.from_int(static_cast<long long>(n)) : f.random(rng);
    if (!z.is_zero() && !z.pow(half).is_one()) break;
  }
  FieldElement c = z.pow(m);
  FieldElement r = x.pow(mpz_class((m + 1) / 2));
  FieldElement t = x.pow(m);
  unsigned big_m = s;
  while (!t.is_one()) {
    unsigned i = 0;
    FieldElement tt = t;
    while (!tt.is_one()) {
      tt = tt * tt;
      ++i;
    }
    FieldElement b = c;
    for (unsigned k = 0; k + i + 1 < big_m; ++k) b = b * b;
    big_m = i;
    c = b * b;
    t = t * c;
    r = r * b;
  }
  return r;
}

std::optional<Coeffs> poly_sqrt(const Coeffs& p, const Field& k) {
  long d = upoly::degree(p);
  if (d < 0) return Coeffs{};
  if (d % 2 != 0) return std::nullopt;
  std::size_t m = static_cast<std::size_t>(d / 2);
  Coeffs s(m + 1, k.zero());
  if (k.characteristic() == 2) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (i % 2 == 1 && !p[i].is_zero()) return std::nullopt;
      if (i % 2 == 0) {
        auto r = sqrt(p[i]);
        if (!r) return std::nullopt;
        s[i / 2] = *r;
      }
    }
  } else {
    auto lead = sqrt(p[static_cast<std::size_t>(d)]);
    if (!lead) return std::nullopt;
    s[m] = *lead;
    FieldElement two_lead_inv = (k.from_int(2) * s[m]).inverse();
    for (std::size_t kk = m; kk-- > 0;) {
      // coefficient of t^(m+kk) in s^2 must equal p[m+kk]
      FieldElement acc = p[m + kk];
      for (std::size_t i = kk + 1; i <= m; ++i) {
        std::size_t j = m + kk - i;
        if (j > kk && j <= m) acc = acc - s[i] * s[j];
      }
      s[kk] = acc * two_lead_inv;
    }
  }
  upoly::trim(s);
  if (!upoly::equal(upoly::mul(s, s, k), p)) return std::nullopt;
  return s;
}

}  // namespace

std::optional<FieldElement> sqrt(const FieldElement& x) {
  if (x.is_zero()) return x;
  Field f = x.field();
  std::optional<FieldElement> root;
  switch (f.kind()) {
    case FieldKind::Rationals: {
      const auto& q = std::get<mpq_class>(x.rep());
      if (q < 0) return std::nullopt;
      if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t())) return std::nullopt;
      mpz_class n, d;
      mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
      mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
      root = f.from_rational(mpq_class(n, d));
      break;
    }
    case FieldKind::Prime:
      root = sqrt_finite(x);
      break;
    case FieldKind::Extension: {
      if (f.is_finite()) {
        root = sqrt_finite(x);
        break;
      }
      if (upoly::degree(f.min_poly()) != 2 || f.characteristic() == 2) {
        throw NotSupported("square roots in " + f.describe());
      }
      // theta = w + m1/2 satisfies theta^2 = disc in the base.
      Field k = f.base();
      const Coeffs& mp = f.min_poly();
      FieldElement half = k.from_int(2).inverse();
      FieldElement shift = mp[1] * half;
      FieldElement disc = shift * shift - mp[0];
      FieldElement theta = f.generator() + f.embed(shift);
      const Coeffs& xc = std::get<Coeffs>(x.rep());
      FieldElement a0 = xc.size() > 0 ? xc[0] : k.zero();
      FieldElement a1 = xc.size() > 1 ? xc[1] : k.zero();
      // x = a0 + a1 w = (a0 - a1 shift) + a1 theta
      FieldElement a = a0 - a1 * shift, b = a1;
      if (b.is_zero()) {
        if (auto r = sqrt(a)) {
          root = f.embed(*r);
        } else if (auto r2 = sqrt(a / disc)) {
          root = f.embed(*r2) * theta;
        }
        break;
      }
      FieldElement norm = a * a - b * b * disc;
      auto n = sqrt(norm);
      if (!n) return std::nullopt;
      for (const FieldElement& sgn : {k.one(), -k.one()}) {
        auto c = sqrt((a + sgn * *n) * half);
        if (c && !c->is_zero()) {
          FieldElement dd = b / (k.from_int(2) * *c);
          root = f.embed(*c) + f.embed(dd) * theta;
          break;
        }
      }
      break;
    }
    case FieldKind::Function: {
      Field k = f.base();
      Coeffs nd = upoly::mul(x.numerator(), x.denominator(), k);
      auto s = poly_sqrt(nd, k);
      if (!s) return std::nullopt;
      root = f.from_fraction(*s, x.denominator());
      break;
    }
  }
  if (root && *root * *root != x) return std::nullopt;
  return root;
}

FieldElement require_sqrt(const FieldElement& x) {
  auto r = sqrt(x);
  if (!r) throw SquareRootMissing(x);
  return *r;
}

std::vector<FieldElement> quadratic_roots(const FieldElement& a, const FieldElement& b, const FieldElement& c) {
  if (a.is_zero()) throw Error("quadratic_roots needs a nonzero leading coefficient");
  Field f = a.field();
  std::vector<FieldElement> roots;
  auto push = [&](const FieldElement& r) {
    if (std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
  };
  if (f.characteristic() != 2) {
    FieldElement disc = b * b - f.from_int(4) * a * c;
    auto s = sqrt(disc);
    if (!s) return {};
    FieldElement two_a = f.from_int(2) * a;
    push((-b + *s) / two_a);
    push((-b - *s) / two_a);
  } else if (b.is_zero()) {
    auto s = sqrt(c / a);
    if (s) push(*s);
  } else if (f.is_finite()) {
    for (const auto& x : f.elements()) {
      if ((a * x * x + b * x + c).is_zero()) push(x);
    }
  } else {
    throw NotSupported("Artin-Schreier quadratics over " + f.describe());
  }
  for (const auto& r : roots) {
    if (!(a * r * r + b * r + c).is_zero()) throw Error("internal: quadratic root failed substitution");
  }
  return roots;
}

std::vector<FieldElement> small_degree_roots(const Coeffs& poly_in) {
  Coeffs poly = poly_in;
  upoly::trim(poly);
  if (poly.empty()) throw Error("roots of the zero polynomial");
  Field f = poly.front().field();
  std::vector<FieldElement> roots;
  long d = upoly::degree(poly);
  if (d == 0) return roots;
  if (f.is_finite()) {
    for (const auto& x : f.elements()) {
      if (upoly::eval(poly, x, f).is_zero()) roots.push_back(x);
    }
    return roots;
  }
  if (d == 1) return {-poly[0] / poly[1]};
  if (d == 2) return quadratic_roots(poly[2], poly[1], poly[0]);
  if (f.kind() != FieldKind::Rationals) throw NotSupported("root search over " + f.describe());
  // Rational root test on the integer-cleared polynomial.
  mpz_class lcm_den = 1;
  for (const auto& c : poly) {
    const auto& q = std::get<mpq_class>(c.rep());
    mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), q.get_den_mpz_t());
  }
  std::vector<mpz_class> ints;
  for (const auto& c : poly) ints.push_back(mpq_class(std::get<mpq_class>(c.rep()) * lcm_den).get_num());
  std::size_t low = 0;
  while (ints[low] == 0) ++low;
  if (low > 0) roots.push_back(f.zero());
  auto divisors = [](mpz_class n) {
    n = abs(n);
    std::vector<mpz_class> out;
    if (n > 10'000'000) throw NotSupported("rational root test with large coefficients");
    for (mpz_class i = 1; i <= n; ++i) {
      if (n % i == 0) out.push_back(i);
    }
    return out;
  };
  for (const auto& p : divisors(ints[low])) {
    for (const auto& q : divisors(ints.back())) {
      for (int sgn : {1, -1}) {
        FieldElement x = f.from_rational(mpq_class(p * sgn, q));
        if (upoly::eval(poly, x, f).is_zero() && std::find(roots.begin(), roots.end(), x) == roots.end()) {
          roots.push_back(x);
        }
      }
    }
  }
  return roots;
}

Extension extend_with_root(const Field& base, const Coeffs& poly, const std::string& name) {
  return Extension{base.extend(poly, name)};
}

}  // namespace nildeg
