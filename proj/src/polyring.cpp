#include "nildeg/polyring.hpp"

#include <algorithm>
#include <ostream>

namespace nildeg {

VarList make_vars(std::vector<std::string> names) {
  return std::make_shared<const std::vector<std::string>>(std::move(names));
}

namespace {

bool same_vars(const VarList& a, const VarList& b) { return a == b || *a == *b; }

bool is_composite(const std::string& s) {
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i] == '+' || s[i] == '-') return true;
  }
  return s.find('/') != std::string::npos;
}

}  // namespace

MultiPoly::MultiPoly() : field_(Field::rationals()) {
  static const VarList empty = make_vars({});
  vars_ = empty;
}

MultiPoly::MultiPoly(Field f, VarList vars) : field_(std::move(f)), vars_(std::move(vars)) {}

MultiPoly MultiPoly::constant(const Field& f, const VarList& vars, const FieldElement& c) {
  MultiPoly p(f, vars);
  p.add_term(Exponent(vars->size(), 0), f.embed(c));
  return p;
}

MultiPoly MultiPoly::variable(const Field& f, const VarList& vars, const std::string& name) {
  MultiPoly p(f, vars);
  Exponent e(vars->size(), 0);
  e[p.var_index(name)] = 1;
  p.add_term(e, f.one());
  return p;
}

MultiPoly MultiPoly::from_univariate(const Field& f, const VarList& vars, const std::string& var, const Coeffs& c) {
  MultiPoly p(f, vars);
  std::size_t idx = p.var_index(var);
  for (std::size_t k = 0; k < c.size(); ++k) {
    Exponent e(vars->size(), 0);
    e[idx] = static_cast<std::uint16_t>(k);
    p.add_term(e, f.embed(c[k]));
  }
  return p;
}

std::size_t MultiPoly::var_index(const std::string& name) const {
  auto it = std::find(vars_->begin(), vars_->end(), name);
  if (it == vars_->end()) throw Error("unknown variable '" + name + "'");
  return static_cast<std::size_t>(it - vars_->begin());
}

bool MultiPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const Exponent& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](std::uint16_t x) { return x == 0; });
}

FieldElement MultiPoly::constant_term() const {
  auto it = terms_.find(Exponent(vars_->size(), 0));
  return it == terms_.end() ? field_.zero() : it->second;
}

void MultiPoly::add_term(const Exponent& e, const FieldElement& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void MultiPoly::require_compatible(const MultiPoly& b) const {
  if (!same_vars(vars_, b.vars_)) throw Error("polynomial registry mismatch");
  if (field_ != b.field_) throw FieldMismatch(field_.describe() + " vs " + b.field_.describe());
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r(field_, vars_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& b) {
  require_compatible(b);
  for (const auto& [e, c] : b.terms_) add_term(e, c);
  return *this;
}

MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
  MultiPoly r = a;
  r += b;
  return r;
}

MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) {
  a.require_compatible(b);
  MultiPoly r = a;
  for (const auto& [e, c] : b.terms_) r.add_term(e, -c);
  return r;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  a.require_compatible(b);
  MultiPoly r(a.field_, a.vars_);
  Exponent e(a.vars_->size());
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = static_cast<std::uint16_t>(ea[i] + eb[i]);
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

MultiPoly MultiPoly::scaled(const FieldElement& s) const {
  MultiPoly r(field_, vars_);
  FieldElement k = field_.embed(s);
  for (const auto& [e, c] : terms_) r.add_term(e, c * k);
  return r;
}

MultiPoly MultiPoly::pow(unsigned e) const {
  MultiPoly acc = constant(field_, vars_, field_.one()), base = *this;
  while (e) {
    if (e & 1) acc = acc * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return acc;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
  if (!same_vars(a.vars_, b.vars_) || a.field_ != b.field_) return false;
  if (a.terms_.size() != b.terms_.size()) return false;
  return std::equal(a.terms_.begin(), a.terms_.end(), b.terms_.begin(),
                    [](const auto& x, const auto& y) { return x.first == y.first && x.second == y.second; });
}

FieldElement MultiPoly::evaluate(const std::map<std::string, FieldElement>& assignment) const {
  const std::size_t n = vars_->size();
  std::vector<std::optional<FieldElement>> values(n);
  FieldElement acc = field_.zero();
  for (const auto& [e, c] : terms_) {
    FieldElement term = c;
    for (std::size_t i = 0; i < n; ++i) {
      if (e[i] == 0) continue;
      if (!values[i]) {
        auto it = assignment.find((*vars_)[i]);
        if (it == assignment.end()) throw Error("missing value for variable '" + (*vars_)[i] + "'");
        values[i] = field_.embed(it->second);
      }
      term *= values[i]->pow(static_cast<long long>(e[i]));
    }
    acc += term;
  }
  return acc;
}

MultiPoly MultiPoly::relabel(const VarList& target) const {
  if (same_vars(vars_, target)) return *this;
  std::vector<std::size_t> map(vars_->size(), target->size());
  for (std::size_t i = 0; i < vars_->size(); ++i) {
    auto it = std::find(target->begin(), target->end(), (*vars_)[i]);
    if (it != target->end()) map[i] = static_cast<std::size_t>(it - target->begin());
  }
  MultiPoly out(field_, target);
  for (const auto& [e, c] : terms_) {
    Exponent ne(target->size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (map[i] == target->size()) throw Error("variable '" + (*vars_)[i] + "' missing from target registry");
      ne[map[i]] = e[i];
    }
    out.add_term(ne, c);
  }
  return out;
}

MultiPoly MultiPoly::substitute(const std::map<std::string, MultiPoly>& images) const {
  const std::size_t n = vars_->size();
  std::vector<const MultiPoly*> img(n, nullptr);
  for (const auto& [name, p] : images) {
    require_compatible(p);
    img[var_index(name)] = &p;
  }
  MultiPoly out(field_, vars_);
  for (const auto& [e, c] : terms_) {
    Exponent kept = e;
    MultiPoly factor = constant(field_, vars_, c);
    for (std::size_t i = 0; i < n; ++i) {
      if (img[i] && e[i] > 0) {
        factor = factor * img[i]->pow(e[i]);
        kept[i] = 0;
      }
    }
    MultiPoly mono(field_, vars_);
    mono.add_term(kept, field_.one());
    out += factor * mono;
  }
  return out;
}

long MultiPoly::total_degree() const {
  long d = -1;
  for (const auto& [e, c] : terms_) {
    long s = 0;
    for (auto x : e) s += x;
    d = std::max(d, s);
  }
  return d;
}

long MultiPoly::degree_in(const std::string& var) const {
  std::size_t idx = var_index(var);
  long d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, static_cast<long>(e[idx]));
  return d;
}

Coeffs MultiPoly::to_univariate(const std::string& var) const {
  std::size_t idx = var_index(var);
  Coeffs out;
  for (const auto& [e, c] : terms_) {
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (i != idx && e[i] != 0) throw Error("polynomial is not univariate in '" + var + "'");
    }
    if (out.size() <= e[idx]) out.resize(e[idx] + 1, field_.zero());
    out[e[idx]] = c;
  }
  return out;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += (*vars_)[i];
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    std::string cs = c.to_string();
    std::string term;
    if (mono.empty()) {
      term = is_composite(cs) ? "(" + cs + ")" : cs;
    } else if (cs == "1") {
      term = mono;
    } else if (cs == "-1") {
      term = "-" + mono;
    } else {
      term = (is_composite(cs) ? "(" + cs + ")" : cs) + "*" + mono;
    }
    if (!first && term[0] != '-') out += "+";
    out += term;
    first = false;
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const MultiPoly& p) { return os << p.to_string(); }

// ---------------------------------------------------------------------------

RationalFunction::RationalFunction(MultiPoly num, MultiPoly den) : num_(std::move(num)), den_(std::move(den)) {
  num_.require_compatible(den_);
  if (den_.is_zero()) throw DivisionByZero();
  reduce();
}

RationalFunction::RationalFunction(MultiPoly num)
    : num_(num), den_(MultiPoly::constant(num.field(), num.vars(), num.field().one())) {}

void RationalFunction::reduce() {
  if (num_.vars()->size() != 1) return;
  const std::string& v = num_.vars()->front();
  const Field& f = num_.field();
  Coeffs n = num_.to_univariate(v), d = den_.to_univariate(v);
  if (upoly::is_zero(n)) {
    den_ = MultiPoly::constant(f, den_.vars(), f.one());
    return;
  }
  Coeffs g = upoly::monic_gcd(n, d, f);
  n = upoly::divmod(n, g, f).first;
  d = upoly::divmod(d, g, f).first;
  FieldElement lc = d.back().inverse();
  num_ = MultiPoly::from_univariate(f, num_.vars(), v, upoly::scale(n, lc));
  den_ = MultiPoly::from_univariate(f, den_.vars(), v, upoly::scale(d, lc));
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
  return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
  if (a.den_ == b.den_) return RationalFunction(a.num_ - b.num_, a.den_);
  return RationalFunction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
  return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
}

FieldElement RationalFunction::evaluate(const std::map<std::string, FieldElement>& assignment) const {
  return num_.evaluate(assignment) / den_.evaluate(assignment);
}

std::string RationalFunction::to_string() const {
  if (den_.is_constant() && den_.constant_term().is_one()) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

FieldElement limit_at_zero(const RationalFunction& r, const std::string& var) {
  const Field& f = r.num().field();
  Coeffs n = r.num().to_univariate(var), d = r.den().to_univariate(var);
  if (upoly::is_zero(n)) return f.zero();
  std::size_t vn = upoly::order_at_zero(n), vd = upoly::order_at_zero(d);
  if (vn < vd) throw PoleAtZero(r.to_string());
  if (vn > vd) return f.zero();
  return n[vn] / d[vd];
}

FieldElement limit_at_zero(const FieldElement& r) {
  Field f = r.field();
  if (f.kind() != FieldKind::Function) return r;
  Field k = f.base();
  const Coeffs& n = r.numerator();
  const Coeffs& d = r.denominator();
  if (upoly::is_zero(n)) return k.zero();
  // Stored fractions are already in lowest terms.
  if (d[0].is_zero()) throw PoleAtZero(r.to_string());
  return n.empty() ? k.zero() : n[0] / d[0];
}

}  // namespace nildeg
