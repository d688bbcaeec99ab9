#pragma once

// Exact arithmetic over a constructible tower of fields: Q, GF(p), simple
// algebraic extensions K[w]/(m(w)) and rational function fields K(t).

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "nildeg/error.hpp"

namespace nildeg {

enum class FieldKind { Rationals, Prime, Extension, Function };

struct FieldData;
using FieldPtr = std::shared_ptr<const FieldData>;

class Field;
class FieldElement;

/// Dense univariate coefficients, constant term first, no trailing zeros.
using Coeffs = std::vector<FieldElement>;

class FieldElement {
 public:
  struct Fraction {
    Coeffs num;
    Coeffs den;  // monic
  };
  using Rep = std::variant<mpq_class, std::uint64_t, Coeffs, Fraction>;

  FieldElement() = default;  // invalid sentinel; only for containers
  FieldElement(FieldPtr field, Rep rep) : field_(std::move(field)), rep_(std::move(rep)) {}

  Field field() const;
  const FieldPtr& field_ptr() const { return field_; }
  bool valid() const { return field_ != nullptr; }
  const Rep& rep() const { return rep_; }

  bool is_zero() const;
  bool is_one() const;

  FieldElement operator-() const;
  FieldElement inverse() const;
  FieldElement pow(long long e) const;
  FieldElement pow(const mpz_class& e) const;

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
  FieldElement& operator+=(const FieldElement& b) { return *this = *this + b; }
  FieldElement& operator-=(const FieldElement& b) { return *this = *this - b; }
  FieldElement& operator*=(const FieldElement& b) { return *this = *this * b; }
  FieldElement& operator/=(const FieldElement& b) { return *this = *this / b; }

  friend bool operator==(const FieldElement& a, const FieldElement& b);
  friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

  /// Text in the coefficient grammar; parses back through Field::parse.
  std::string to_string() const;

  /// Rational-function fields only.
  const Coeffs& numerator() const;
  const Coeffs& denominator() const;

 private:
  FieldPtr field_;
  Rep rep_;
};

std::ostream& operator<<(std::ostream& os, const FieldElement& x);

/// Handle to an immutable field descriptor. Copies share the descriptor.
class Field {
 public:
  static Field rationals();
  static Field prime(std::uint64_t p);

  /// K[w]/(m(w)). `min_poly` is over *this, constant first. Irreducibility is
  /// checked over finite fields, for degree 2 everywhere and for degree 3
  /// over Q; elsewhere the caller must pass assume_irreducible.
  Field extend(Coeffs min_poly, std::string name, bool assume_irreducible = false) const;
  Field rational_functions(std::string var) const;

  explicit Field(FieldPtr p) : ptr_(std::move(p)) {}

  FieldKind kind() const;
  std::uint64_t characteristic() const;
  /// Number of elements for finite fields.
  std::optional<mpz_class> order() const;
  bool is_finite() const { return order().has_value(); }
  Field base() const;  // Extension / Function only
  Field prime_field() const;
  const std::string& generator_name() const;  // Extension / Function only
  const Coeffs& min_poly() const;             // Extension only, monic
  std::uint64_t modulus() const;              // Prime only

  FieldElement zero() const;
  FieldElement one() const;
  FieldElement from_int(long long n) const;
  FieldElement from_bigint(const mpz_class& n) const;
  /// Reduces num/den into the prime field; throws DivisionByZero if den
  /// vanishes there.
  FieldElement from_rational(const mpq_class& q) const;
  FieldElement generator() const;
  FieldElement from_coeffs(Coeffs c) const;               // Extension
  FieldElement from_fraction(Coeffs num, Coeffs den) const;  // Function

  /// Image of an element of a subfield appearing lower in this tower.
  FieldElement embed(const FieldElement& x) const;
  bool has_subfield(const Field& f) const;

  std::vector<FieldElement> elements() const;  // finite fields only
  FieldElement random(std::mt19937_64& rng) const;

  FieldElement parse(std::string_view text) const;
  std::string describe() const;
  nlohmann::json to_json() const;
  static Field from_json(const nlohmann::json& j);

  const FieldPtr& ptr() const { return ptr_; }
  friend bool operator==(const Field& a, const Field& b);
  friend bool operator!=(const Field& a, const Field& b) { return !(a == b); }

 private:
  FieldPtr ptr_;
};

struct FieldData {
  FieldKind kind{};
  std::uint64_t characteristic = 0;
  std::uint64_t modulus = 0;  // Prime
  std::optional<Field> base;  // Extension / Function
  Coeffs min_poly;            // Extension, monic, degree >= 2
  std::string name;           // generator or variable name
};

/// `x` has no square root in its field; `radicand` is x itself.
class SquareRootMissing : public NeedsExtension {
 public:
  explicit SquareRootMissing(FieldElement x)
      : NeedsExtension("square root of " + x.to_string(), x.to_string()), element_(std::move(x)) {}
  const FieldElement& element() const { return element_; }

 private:
  FieldElement element_;
};

/// m * 1_F.
inline FieldElement int_to_field(const Field& f, long long m) { return f.from_int(m); }

std::optional<FieldElement> sqrt(const FieldElement& x);
/// Square root or SquareRootMissing.
FieldElement require_sqrt(const FieldElement& x);

/// All roots of a x^2 + b x + c present in the field, each checked by
/// substitution. a must be nonzero.
std::vector<FieldElement> quadratic_roots(const FieldElement& a, const FieldElement& b,
                                          const FieldElement& c);

/// Roots of a polynomial of degree <= 3 with coefficients (constant first) in
/// a finite field or Q; used for irreducibility checks.
std::vector<FieldElement> small_degree_roots(const Coeffs& poly);

struct Extension {
  Field field;
  FieldElement embed(const FieldElement& x) const { return field.embed(x); }
  FieldElement root() const { return field.generator(); }
};

/// Adjoin a root of `poly` (degree >= 2, no root in `base`) named `name`.
Extension extend_with_root(const Field& base, const Coeffs& poly, const std::string& name);

// Dense univariate helpers over a field (constant term first).
namespace upoly {
void trim(Coeffs& p);
bool is_zero(const Coeffs& p);
long degree(const Coeffs& p);  // -1 for zero
Coeffs add(const Coeffs& a, const Coeffs& b, const Field& f);
Coeffs sub(const Coeffs& a, const Coeffs& b, const Field& f);
Coeffs mul(const Coeffs& a, const Coeffs& b, const Field& f);
Coeffs scale(const Coeffs& a, const FieldElement& s);
/// (quotient, remainder)
std::pair<Coeffs, Coeffs> divmod(const Coeffs& a, const Coeffs& b, const Field& f);
Coeffs monic_gcd(const Coeffs& a, const Coeffs& b, const Field& f);
FieldElement eval(const Coeffs& p, const FieldElement& x, const Field& f);
bool equal(const Coeffs& a, const Coeffs& b);
/// Lowest exponent with a nonzero coefficient; p nonzero.
std::size_t order_at_zero(const Coeffs& p);
std::string render(const Coeffs& p, const std::string& var, bool ascending);
}  // namespace upoly

}  // namespace nildeg
