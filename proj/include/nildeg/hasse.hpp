#pragma once

// Certified degeneration digraph on the catalogue, its transitive reduction
// and DOT / JSON output.

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "nildeg/degeneration.hpp"

namespace nildeg {

struct GraphNode {
  std::string name;
  std::vector<AlgebraId> members;  // sampled representatives
};

struct GraphEdge {
  std::string src, dst;
  std::string witness;  // curve id of the first certified member pair
};

struct DegenerationGraph {
  std::uint64_t characteristic = 0;
  std::vector<GraphNode> nodes;  // display order
  std::vector<GraphEdge> edges;

  std::size_t node_index(const std::string& name) const;
  bool has_edge(const std::string& src, const std::string& dst) const;
};

/// Parameters for the a(delta) family: a fixed list over Q, every element
/// of a finite field otherwise; (4 * 1_F)^-1 is never included.
std::vector<FieldElement> delta_samples(const Field& f, std::size_t count = 10);

/// Decides every ordered pair of members; an edge X -> Y means every member
/// of X degenerates to every member of Y. Throws on any certification
/// failure or on a family node that does not behave uniformly.
DegenerationGraph build_graph(const Field& field, const std::vector<FieldElement>& deltas, IdentityGate& gate);

/// Throws Error on a cycle.
DegenerationGraph transitive_reduction(const DegenerationGraph& g);

enum class GraphFormat { Dot, Json };

std::string emit(const DegenerationGraph& g, GraphFormat format);
nlohmann::json to_json(const DegenerationGraph& g);

using EdgeName = std::pair<std::string, std::string>;

/// Reduced arrows of the known diagrams.
std::vector<EdgeName> expected_edges(bool char2);

struct Verdict {
  bool match = false;
  std::vector<EdgeName> surplus, missing;
  std::string to_string() const;
};

Verdict compare_expected(const DegenerationGraph& reduced);

}  // namespace nildeg
