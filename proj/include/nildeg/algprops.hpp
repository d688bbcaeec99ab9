#pragma once

// Predicates and basis-invariant dimensions of a structure vector.

#include <string>
#include <vector>

#include <json.hpp>

#include "nildeg/structspace.hpp"

namespace nildeg {

using Row = std::vector<FieldElement>;

/// In-place reduced row echelon form; returns the pivot columns.
std::vector<std::size_t> row_reduce(std::vector<Row>& rows);
std::size_t rank(std::vector<Row> rows);

bool is_associative(const StructureVector& lambda);
bool is_commutative(const StructureVector& lambda);
/// Least r with L_{r+1} = 0 for L_1 = V, L_{m+1} = L_m V; 0 for the zero
/// algebra. Throws NotNilpotent if the chain does not reach 0.
int nilpotency_class(const StructureVector& lambda);
/// [u,u] in span(u) for all u, checked as a polynomial identity.
bool in_m_star_star(const StructureVector& lambda);
std::size_t derivation_dimension(const StructureVector& lambda);
std::size_t square_dimension(const StructureVector& lambda);
std::size_t annihilator_dimension(const StructureVector& lambda);

struct InvariantProfile {
  bool associative = false;
  int nilpotency_class = -1;  // -1: not nilpotent
  bool commutative = false;
  bool in_m_star_star = false;
  std::size_t derivation_dim = 0;
  std::size_t square_dim = 0;
  std::size_t annihilator_dim = 0;

  friend bool operator==(const InvariantProfile&, const InvariantProfile&) = default;
  nlohmann::json to_json() const;
};

InvariantProfile invariant_profile(const StructureVector& lambda);

}  // namespace nildeg
