#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "nildeg/hasse.hpp"
#include "support.hpp"

using namespace nildeg;
using namespace nildeg::testing;

namespace {

IdentityGate& gate() {
  static IdentityGate g;
  return g;
}

DegenerationGraph full(const Field& f) { return build_graph(f, delta_samples(f, 10), gate()); }

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(NILDEG_GOLDEN_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<bool>> closure(const DegenerationGraph& g) {
  std::size_t n = g.nodes.size();
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (const auto& e : g.edges) r[g.node_index(e.src)][g.node_index(e.dst)] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (r[i][k] && r[k][j]) r[i][j] = true;
  return r;
}

}  // namespace

TEST(Hasse, DeltaSamples) {
  Field q = Field::rationals();
  auto d = delta_samples(q, 10);
  EXPECT_EQ(d.size(), 10u);
  for (const auto& x : d) EXPECT_FALSE(is_quarter(x));
  auto d7 = delta_samples(gf(7), 10);
  EXPECT_EQ(d7.size(), 6u);
  EXPECT_EQ(delta_samples(gf16(), 10).size(), 10u);
}

TEST(Hasse, CharZeroMatchesExpected) {
  for (Field f : {Field::rationals(), gf(5), gf(7)}) {
    DegenerationGraph g = transitive_reduction(full(f));
    Verdict v = compare_expected(g);
    EXPECT_TRUE(v.match) << f.describe() << ": " << v.to_string();
    EXPECT_EQ(g.nodes.size(), 7u);
    EXPECT_EQ(g.edges.size(), 7u);
  }
}

TEST(Hasse, CharTwoMatchesExpected) {
  for (Field f : {gf(2), gf4(), gf16()}) {
    DegenerationGraph g = transitive_reduction(full(f));
    Verdict v = compare_expected(g);
    EXPECT_TRUE(v.match) << f.describe() << ": " << v.to_string();
    EXPECT_EQ(g.nodes.size(), 6u);
    EXPECT_EQ(g.edges.size(), 6u);
  }
}

TEST(Hasse, ReductionKeepsReachability) {
  for (Field f : {Field::rationals(), gf(2)}) {
    DegenerationGraph g = full(f);
    DegenerationGraph r = transitive_reduction(g);
    EXPECT_EQ(closure(g), closure(r));
    EXPECT_LE(r.edges.size(), g.edges.size());
    auto c = closure(r);
    std::size_t a0 = r.node_index("a0"), c5 = r.node_index("c5");
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
      if (i != a0) EXPECT_TRUE(c[i][a0]) << r.nodes[i].name;
      EXPECT_FALSE(c[i][c5]);
    }
  }
}

TEST(Hasse, ReductionIdempotent) {
  DegenerationGraph r = transitive_reduction(full(Field::rationals()));
  EXPECT_EQ(emit(transitive_reduction(r), GraphFormat::Dot), emit(r, GraphFormat::Dot));
}

TEST(Hasse, CharTwoFullGraphHasImpliedC5ToL1) {
  DegenerationGraph g = full(gf(2));
  EXPECT_TRUE(g.has_edge("c5", "l1"));
  EXPECT_FALSE(transitive_reduction(g).has_edge("c5", "l1"));
}

TEST(Hasse, ExtraTransitiveEdgeIsRemoved) {
  DegenerationGraph g = transitive_reduction(full(Field::rationals()));
  g.edges.push_back({"c5", "c1", "x"});
  EXPECT_EQ(transitive_reduction(g).edges.size(), 7u);
}

TEST(Hasse, InjectedEdgeIsSurplus) {
  DegenerationGraph g = transitive_reduction(full(Field::rationals()));
  g.edges.push_back({"l1", "c1", "x"});
  Verdict v = compare_expected(transitive_reduction(g));
  EXPECT_FALSE(v.match);
  ASSERT_EQ(v.surplus.size(), 1u);
  EXPECT_EQ(v.surplus[0], EdgeName("l1", "c1"));
  EXPECT_NE(v.to_string().find("surplus l1 -> c1"), std::string::npos);
}

TEST(Hasse, MissingEdgeReported) {
  DegenerationGraph g = transitive_reduction(full(gf(2)));
  g.edges.erase(g.edges.begin());
  Verdict v = compare_expected(g);
  EXPECT_FALSE(v.match);
  EXPECT_EQ(v.missing.size(), 1u);
}

TEST(Hasse, CycleThrows) {
  DegenerationGraph g = transitive_reduction(full(gf(2)));
  g.edges.push_back({"a0", "c5", "x"});
  EXPECT_THROW(transitive_reduction(g), Error);
}

TEST(Hasse, EmptyGraph) {
  DegenerationGraph g;
  EXPECT_EQ(emit(g, GraphFormat::Dot), "digraph degenerations {\n}\n");
  EXPECT_TRUE(transitive_reduction(g).edges.empty());
}

TEST(Hasse, JsonShape) {
  DegenerationGraph g = transitive_reduction(full(gf(2)));
  nlohmann::json j = to_json(g);
  EXPECT_EQ(j["char"], 2);
  EXPECT_EQ(j["edges"].size(), 6u);
  EXPECT_EQ(j["nodes"].size(), 6u);
  for (const auto& e : j["edges"]) EXPECT_TRUE(e.contains("witness"));
}

TEST(Hasse, EdgeWitnessesVerify) {
  for (Field f : {Field::rationals(), gf(2)}) {
    DegenerationGraph g = transitive_reduction(full(f));
    for (const auto& e : g.edges) {
      const auto& s = g.nodes[g.node_index(e.src)].members.front();
      const auto& d = g.nodes[g.node_index(e.dst)].members.front();
      auto c = known_witness(s, d, f);
      ASSERT_TRUE(c.has_value()) << e.src << " -> " << e.dst;
      EXPECT_EQ(c->id(), e.witness);
    }
  }
}

TEST(Hasse, GoldenFiles) {
  EXPECT_EQ(emit(transitive_reduction(full(Field::rationals())), GraphFormat::Dot), slurp("hasse_char0.dot"));
  EXPECT_EQ(emit(transitive_reduction(full(Field::rationals())), GraphFormat::Json), slurp("hasse_char0.json"));
  EXPECT_EQ(emit(transitive_reduction(full(gf(2))), GraphFormat::Dot), slurp("hasse_char2.dot"));
  EXPECT_EQ(emit(transitive_reduction(full(gf(2))), GraphFormat::Json), slurp("hasse_char2.json"));
}
