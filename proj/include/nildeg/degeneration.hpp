#pragma once

// Curve witnesses g(t), their verification through the limit at t = 0,
// obstruction certificates and the degeneration relation on the catalogue.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nildeg/algprops.hpp"
#include "nildeg/catalogue.hpp"
#include "nildeg/lemmas.hpp"

namespace nildeg {

/// Invertible matrix over K(t).
class Curve {
 public:
  /// `m` lives over a rational function field; throws if det(m) == 0.
  explicit Curve(Matrix m);
  /// Rows of expressions in `t` over `base`.
  static Curve parse(const Field& base, const std::vector<std::vector<std::string>>& rows, const std::string& var = "t");
  static Curve scaling(const Field& base);  // t * I
  static Curve identity(const Field& base);
  /// Constant matrix times the curve: first change basis by `h`, then follow this curve.
  Curve after(const Matrix& h) const;

  const Matrix& matrix() const { return m_; }
  const FieldElement& det() const { return det_; }
  Field function_field() const { return matrix_field(m_); }
  Field base() const { return function_field().base(); }

  std::vector<std::vector<std::string>> render() const { return render_matrix(m_); }
  /// "[[t,0,0],[t,1,0],[0,0,t]]"
  std::string id() const;

 private:
  Matrix m_;
  FieldElement det_;
};

struct WitnessReport {
  bool verified = false;
  std::optional<StructureVector> limit;
  std::optional<AlgebraId> identified;  // canonical id of the limit
  std::string extension;                // field actually used, if extended
  std::string detail;

  nlohmann::json to_json() const;
};

/// mu0 = lim_{t->0} act(lambda, curve); compared with structure_of(target)
/// exactly, or up to isomorphism through identify + canonicalize. Missing
/// square roots are adjoined and the comparison retried.
WitnessReport verify_witness(const StructureVector& lambda, const Curve& curve, const AlgebraId& target,
                             bool up_to_iso);

/// Limit comparison step of verify_witness for an already computed mu0.
WitnessReport compare_limit(const StructureVector& mu0, const AlgebraId& target, bool up_to_iso);

/// Frozen curve for a generating arrow (or X -> a0), over `base`.
std::optional<Curve> known_witness(const AlgebraId& src, const AlgebraId& dst, const Field& base);

enum class ObstructionTag { NilpotencyClass, Commutativity, MStarStarClosure, Lemma31, Lemma32, TransitivityDerived };

std::string to_string(ObstructionTag tag);

struct Obstruction {
  ObstructionTag tag;
  nlohmann::json data;

  bool machine_checked() const {
    return tag == ObstructionTag::NilpotencyClass || tag == ObstructionTag::Commutativity ||
           tag == ObstructionTag::MStarStarClosure;
  }
  nlohmann::json to_json() const { return {{"tag", to_string(tag)}, {"data", data}}; }
};

/// True iff delta equals (4 * 1_F)^-1 (never in characteristic 2).
bool is_quarter(const FieldElement& delta);

/// Strongest obstruction for src -> dst over fields of base's characteristic;
/// lemma-backed tags only after `gate` has verified the identities.
std::optional<Obstruction> check_obstruction(const AlgebraId& src, const AlgebraId& dst, const Field& base,
                                             IdentityGate& gate);

struct DegenerationFact {
  AlgebraId src, dst;
  std::uint64_t characteristic = 0;
  bool holds = false;
  std::optional<Curve> curve;
  std::vector<AlgebraId> chain;  // generating arrows, src first
  std::optional<WitnessReport> report;
  std::optional<Obstruction> obstruction;

  nlohmann::json to_json() const;
};

/// Decides src -> dst for canonical classified ids over `base`.
DegenerationFact degenerates(const AlgebraId& src, const AlgebraId& dst, const Field& base, IdentityGate& gate);

/// Witness file: {"src","dst","char","matrix":[[...]]}; "field" overrides char.
struct WitnessFile {
  AlgebraId src, dst;
  Field base;
  Curve curve;

  static WitnessFile from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

/// Rationals for char 0, GF(p) otherwise.
Field field_for_char(std::uint64_t c);

}  // namespace nildeg
