#pragma once

// The 3-dimensional nilpotent associative algebras a0, c1, c3, a(delta), l1,
// c5 and the auxiliary families used to relate them, with explicit
// isomorphisms and a normal-form identifier.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nildeg/structspace.hpp"

namespace nildeg {

enum class Tag { A0, C1, C3, Adelta, L1, C5, Chat3, A2, A3kappa, Hbeta, Rho };

struct AlgebraId {
  Tag tag = Tag::A0;
  std::optional<FieldElement> param;

  static AlgebraId a0() { return {Tag::A0, {}}; }
  static AlgebraId c1() { return {Tag::C1, {}}; }
  static AlgebraId c3() { return {Tag::C3, {}}; }
  static AlgebraId l1() { return {Tag::L1, {}}; }
  static AlgebraId c5() { return {Tag::C5, {}}; }
  static AlgebraId chat3() { return {Tag::Chat3, {}}; }
  static AlgebraId a2() { return {Tag::A2, {}}; }
  static AlgebraId rho() { return {Tag::Rho, {}}; }
  static AlgebraId adelta(FieldElement d) { return {Tag::Adelta, std::move(d)}; }
  static AlgebraId a3kappa(FieldElement k) { return {Tag::A3kappa, std::move(k)}; }
  static AlgebraId hbeta(FieldElement b) { return {Tag::Hbeta, std::move(b)}; }

  bool has_param() const { return param.has_value(); }
  bool is_classified() const;
  /// `a0|c1|c3|l1|c5|a(COEFF)|h(COEFF)|a3(COEFF)|rho|chat3|a2`
  std::string to_string() const;
  static AlgebraId parse(std::string_view text, const Field& f);

  friend bool operator==(const AlgebraId& a, const AlgebraId& b);
  friend bool operator!=(const AlgebraId& a, const AlgebraId& b) { return !(a == b); }
};

std::ostream& operator<<(std::ostream& os, const AlgebraId& id);

StructureVector structure_of(const AlgebraId& id, const Field& f);

/// Defining relations as text, e.g. "e2e2=e1, e3e3=e1".
std::string relations_text(Tag tag);

/// act(structure_of(src), matrix) == structure_of(dst); checked on creation.
class IsoWitness {
 public:
  IsoWitness(AlgebraId src, AlgebraId dst, Matrix matrix, std::string constraint = "any");

  const AlgebraId& src() const { return src_; }
  const AlgebraId& dst() const { return dst_; }
  const Matrix& matrix() const { return matrix_; }
  const std::string& constraint() const { return constraint_; }

 private:
  AlgebraId src_, dst_;
  Matrix matrix_;
  std::string constraint_;
};

/// Direct isomorphism matrices for the catalogued pairs:
///   h(b) -> h(1/b); a(d) -> a3(k) with k^2 d = 1; a3(k) -> h(-a^2) with
///   a^2 + k a + 1 = 0 (a not in {0, 1, -1}); c3 -> chat3 (char != 2, needs
///   a root of x^2+1); a2 -> a(0).
/// Throws SquareRootMissing if a required root is absent, Error if the pair
/// is not catalogued.
IsoWitness iso_witness(const AlgebraId& src, const AlgebraId& dst, const Field& f);

struct Canonical {
  AlgebraId id;
  std::vector<IsoWitness> chain;
  /// Product of the chain matrices: act(structure_of(input), m) == structure_of(id).
  Matrix composite(const Field& f) const;
};

Canonical canonicalize(const AlgebraId& id, const Field& f);

bool same_r_class(const FieldElement& b1, const FieldElement& b2);

struct Identification {
  AlgebraId id;
  /// act(lambda, witness) == structure_of(id)
  Matrix witness;
};

/// Classified representative of a nilpotent associative lambda. Throws
/// NotNilpotent for other inputs and SquareRootMissing when the normal form
/// needs a root outside the field.
Identification identify(const StructureVector& lambda);

/// classified ids with fixed names.
std::vector<AlgebraId> classified_fixed();

}  // namespace nildeg
