#include "nildeg/hasse.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace nildeg {

std::size_t DegenerationGraph::node_index(const std::string& name) const {
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].name == name) return i;
  throw Error("unknown node " + name);
}

bool DegenerationGraph::has_edge(const std::string& src, const std::string& dst) const {
  return std::any_of(edges.begin(), edges.end(), [&](const GraphEdge& e) { return e.src == src && e.dst == dst; });
}

std::vector<FieldElement> delta_samples(const Field& f, std::size_t count) {
  std::vector<FieldElement> out;
  auto take = [&](const FieldElement& d) {
    if (out.size() >= count || is_quarter(d)) return;
    if (std::find(out.begin(), out.end(), d) == out.end()) out.push_back(d);
  };
  if (f.is_finite()) {
    for (const auto& d : f.elements()) take(d);
  } else {
    for (const char* s : {"0", "1", "-1", "2", "-2", "1/2", "3", "1/3", "-1/2", "5", "7", "-3"}) take(f.parse(s));
  }
  return out;
}

DegenerationGraph build_graph(const Field& field, const std::vector<FieldElement>& deltas, IdentityGate& gate) {
  const bool char2 = field.characteristic() == 2;
  DegenerationGraph g;
  g.characteristic = field.characteristic();
  std::vector<AlgebraId> family;
  for (const auto& d : deltas)
    if (!is_quarter(field.embed(d))) family.push_back(AlgebraId::adelta(field.embed(d)));
  if (family.empty()) throw Error("no parameters for the a(delta) family");

  g.nodes = {{"a0", {AlgebraId::a0()}}, {"c1", {AlgebraId::c1()}}, {"l1", {AlgebraId::l1()}},
             {"c3", {AlgebraId::c3()}}, {"a(delta)", family}};
  if (!char2) g.nodes.push_back({"a(1/4)", {AlgebraId::adelta(field.from_rational(mpq_class(1, 4)))}});
  g.nodes.push_back({"c5", {AlgebraId::c5()}});

  for (const auto& x : g.nodes) {
    for (const auto& y : g.nodes) {
      std::size_t yes = 0, total = 0;
      std::string witness;
      for (const auto& s : x.members) {
        for (const auto& d : y.members) {
          if (s == d) continue;
          DegenerationFact f = degenerates(s, d, field, gate);
          ++total;
          if (f.holds) {
            ++yes;
            if (witness.empty()) witness = f.curve->id();
          }
        }
      }
      if (&x == &y) {
        if (yes) throw Error("members of " + x.name + " degenerate to one another");
        continue;
      }
      if (yes && yes != total) throw Error("family node " + x.name + " -> " + y.name + " is not uniform");
      if (yes) g.edges.push_back({x.name, y.name, witness});
    }
  }
  return g;
}

namespace {

std::vector<std::vector<bool>> reachability(const DegenerationGraph& g) {
  const std::size_t n = g.nodes.size();
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (const auto& e : g.edges) r[g.node_index(e.src)][g.node_index(e.dst)] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (r[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (r[k][j]) r[i][j] = true;
  return r;
}

void sort_edges(DegenerationGraph& g) {
  std::sort(g.edges.begin(), g.edges.end(), [&](const GraphEdge& a, const GraphEdge& b) {
    auto ka = std::make_pair(g.node_index(a.src), g.node_index(a.dst));
    auto kb = std::make_pair(g.node_index(b.src), g.node_index(b.dst));
    return ka > kb;
  });
}

std::string quote(const std::string& s) { return "\"" + s + "\""; }

}  // namespace

DegenerationGraph transitive_reduction(const DegenerationGraph& g) {
  auto r = reachability(g);
  const std::size_t n = g.nodes.size();
  for (std::size_t i = 0; i < n; ++i)
    if (r[i][i]) throw Error("cycle through " + g.nodes[i].name);
  DegenerationGraph out = g;
  out.edges.clear();
  for (const auto& e : g.edges) {
    std::size_t u = g.node_index(e.src), v = g.node_index(e.dst);
    bool implied = false;
    for (std::size_t w = 0; w < n && !implied; ++w) implied = w != u && w != v && r[u][w] && r[w][v];
    if (!implied) out.edges.push_back(e);
  }
  sort_edges(out);
  return out;
}

nlohmann::json to_json(const DegenerationGraph& g) {
  DegenerationGraph s = g;
  sort_edges(s);
  nlohmann::json nodes = nlohmann::json::array(), edges = nlohmann::json::array();
  for (const auto& n : s.nodes) nodes.push_back(n.name);
  for (const auto& e : s.edges) edges.push_back({{"src", e.src}, {"dst", e.dst}, {"witness", e.witness}});
  return {{"char", s.characteristic}, {"nodes", nodes}, {"edges", edges}};
}

std::string emit(const DegenerationGraph& g, GraphFormat format) {
  if (format == GraphFormat::Json) return to_json(g).dump(2) + "\n";
  DegenerationGraph s = g;
  sort_edges(s);
  std::ostringstream os;
  os << "digraph degenerations {\n";
  if (!s.nodes.empty()) os << "  label=\"char " << s.characteristic << "\";\n";
  for (const auto& n : s.nodes) os << "  " << quote(n.name) << ";\n";
  for (const auto& e : s.edges)
    os << "  " << quote(e.src) << " -> " << quote(e.dst) << " [label=" << quote(e.witness) << "];\n";
  os << "}\n";
  return os.str();
}

std::vector<EdgeName> expected_edges(bool char2) {
  if (char2) {
    return {{"c5", "c3"}, {"c3", "l1"}, {"c3", "c1"}, {"a(delta)", "c1"}, {"c1", "a0"}, {"l1", "a0"}};
  }
  return {{"c5", "c3"},     {"c3", "c1"}, {"a(delta)", "c1"}, {"a(1/4)", "c1"},
          {"a(1/4)", "l1"}, {"l1", "a0"}, {"c1", "a0"}};
}

std::string Verdict::to_string() const {
  if (match) return "match";
  std::string s = "mismatch";
  for (const auto& [a, b] : surplus) s += "; surplus " + a + " -> " + b;
  for (const auto& [a, b] : missing) s += "; missing " + a + " -> " + b;
  return s;
}

Verdict compare_expected(const DegenerationGraph& reduced) {
  Verdict v;
  auto want = expected_edges(reduced.characteristic == 2);
  for (const auto& e : reduced.edges) {
    if (std::find(want.begin(), want.end(), EdgeName{e.src, e.dst}) == want.end()) v.surplus.emplace_back(e.src, e.dst);
  }
  for (const auto& w : want) {
    if (!reduced.has_edge(w.first, w.second)) v.missing.push_back(w);
  }
  v.match = v.surplus.empty() && v.missing.empty();
  return v;
}

}  // namespace nildeg
