#pragma once

// Structure vectors of bilinear products on a fixed 3-dimensional space and
// the right action of GL3 by change of basis.

#include <array>
#include <string>
#include <vector>

#include <json.hpp>

#include "nildeg/fields.hpp"
#include "nildeg/matrix3.hpp"

namespace nildeg {

using Matrix = Matrix3<FieldElement>;
using Vec3 = std::array<FieldElement, 3>;

Matrix identity_matrix(const Field& f);
Matrix zero_matrix(const Field& f);
Matrix diagonal(const FieldElement& a, const FieldElement& b, const FieldElement& c);
/// Entry-wise embedding into a larger field of the same tower.
Matrix embed_matrix(const Field& f, const Matrix& m);
Field matrix_field(const Matrix& m);
/// Throws Error if singular.
Matrix inverse(const Matrix& m);
/// Rows of expressions in the coefficient grammar.
Matrix parse_matrix(const Field& f, const std::vector<std::vector<std::string>>& rows);
std::vector<std::vector<std::string>> render_matrix(const Matrix& m);

/// lambda_ijk is the e_k-coefficient of e_i e_j. Indices are 1-based in the
/// accessors and 0-based in the flat array.
class StructureVector {
 public:
  explicit StructureVector(Field f);
  StructureVector(Field f, std::array<FieldElement, 27> c);

  static StructureVector basis_vector(const Field& f, int i, int j, int k);

  const Field& field() const { return field_; }
  const FieldElement& at(int i, int j, int k) const;
  void set(int i, int j, int k, const FieldElement& v);
  const std::array<FieldElement, 27>& coeffs() const { return c_; }
  std::size_t support_size() const;
  bool is_zero() const;

  /// Same vector with coefficients embedded in a larger field.
  StructureVector over(const Field& f) const;

  friend StructureVector operator+(const StructureVector& a, const StructureVector& b);
  friend StructureVector operator-(const StructureVector& a, const StructureVector& b);
  friend StructureVector operator*(const FieldElement& s, const StructureVector& a);
  friend bool operator==(const StructureVector& a, const StructureVector& b);
  friend bool operator!=(const StructureVector& a, const StructureVector& b) { return !(a == b); }

  /// e.g. "t^2*112+2*t*113+123+213"; "0" for the zero vector.
  std::string to_string() const;
  nlohmann::json to_json() const;
  static StructureVector from_json(const nlohmann::json& j);

 private:
  Field field_;
  std::array<FieldElement, 27> c_;
};

std::ostream& operator<<(std::ostream& os, const StructureVector& v);

/// Structure vector of the same product in the basis v_j = sum_i g_ij e_i.
/// lambda is lifted into g's field when g lives in an extension of it.
StructureVector act(const StructureVector& lambda, const Matrix& g);
/// Reference route: flattened lambda times g (x) (g (x) g^-T), dense 27x27.
StructureVector act_kronecker(const StructureVector& lambda, const Matrix& g);

Vec3 product(const StructureVector& lambda, const Vec3& u, const Vec3& v);
Vec3 basis_column(const Field& f, int i);

struct Relation {
  int i;
  int j;
  Vec3 value;
};
/// Builds lambda from products e_i e_j = value; unspecified products are zero.
StructureVector from_relations(const Field& f, const std::vector<Relation>& rels);

}  // namespace nildeg
