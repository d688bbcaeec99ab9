#pragma once

// Sparse multivariate polynomials over a Field and univariate rational
// functions. Terms are kept in descending lexicographic order of exponent
// vectors, with the variable order fixed by the registry.

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "nildeg/fields.hpp"

namespace nildeg {

using VarList = std::shared_ptr<const std::vector<std::string>>;
using Exponent = std::vector<std::uint16_t>;

VarList make_vars(std::vector<std::string> names);

class MultiPoly {
 public:
  using TermMap = std::map<Exponent, FieldElement, std::greater<Exponent>>;

  /// Zero over Q with no variables; placeholder for containers.
  MultiPoly();
  MultiPoly(Field f, VarList vars);
  static MultiPoly constant(const Field& f, const VarList& vars, const FieldElement& c);
  static MultiPoly variable(const Field& f, const VarList& vars, const std::string& name);
  /// Polynomial in `var` from dense coefficients (constant first).
  static MultiPoly from_univariate(const Field& f, const VarList& vars, const std::string& var, const Coeffs& c);

  const Field& field() const { return field_; }
  const VarList& vars() const { return vars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  FieldElement constant_term() const;
  std::size_t var_index(const std::string& name) const;

  MultiPoly operator-() const;
  friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  MultiPoly& operator+=(const MultiPoly& b);
  MultiPoly& operator-=(const MultiPoly& b) { return *this = *this - b; }
  MultiPoly& operator*=(const MultiPoly& b) { return *this = *this * b; }
  MultiPoly scaled(const FieldElement& s) const;
  MultiPoly pow(unsigned e) const;

  friend bool operator==(const MultiPoly& a, const MultiPoly& b);
  friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

  /// Throws Error naming the first variable of the support that is unassigned.
  FieldElement evaluate(const std::map<std::string, FieldElement>& assignment) const;
  /// Same polynomial over another registry; every occurring variable must
  /// exist there under the same name.
  MultiPoly relabel(const VarList& target) const;
  /// Substitutes polynomials for some variables; others stay symbolic.
  MultiPoly substitute(const std::map<std::string, MultiPoly>& images) const;

  long total_degree() const;  // -1 for zero
  long degree_in(const std::string& var) const;
  /// Dense coefficients in `var`; throws if any other variable occurs.
  Coeffs to_univariate(const std::string& var) const;

  std::string to_string() const;
  /// Throws unless b shares field and registry.
  void require_compatible(const MultiPoly& b) const;

 private:
  void add_term(const Exponent& e, const FieldElement& c);

  Field field_;
  VarList vars_;
  TermMap terms_;
};

std::ostream& operator<<(std::ostream& os, const MultiPoly& p);

inline bool is_identically_zero(const MultiPoly& p) { return p.is_zero(); }

/// num / den over a shared registry. Univariate quotients are reduced by gcd;
/// multivariate ones are stored as given.
class RationalFunction {
 public:
  RationalFunction(MultiPoly num, MultiPoly den);
  explicit RationalFunction(MultiPoly num);

  const MultiPoly& num() const { return num_; }
  const MultiPoly& den() const { return den_; }

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);

  FieldElement evaluate(const std::map<std::string, FieldElement>& assignment) const;
  std::string to_string() const;

 private:
  void reduce();
  MultiPoly num_, den_;
};

/// Value at var = 0 after cancelling common factors; PoleAtZero otherwise.
FieldElement limit_at_zero(const RationalFunction& r, const std::string& var);
/// Same for an element of a rational function field K(t); result lies in K.
FieldElement limit_at_zero(const FieldElement& r);

}  // namespace nildeg
