#include <gtest/gtest.h>

#include <array>
#include <random>
#include <set>

#include "nildeg/algprops.hpp"
#include "nildeg/catalogue.hpp"
#include "support.hpp"

using namespace nildeg;
using namespace nildeg::testing;

namespace {

// Brute-force oracles over GF(p) on plain integers.
struct ModAlg {
  unsigned p;
  std::array<unsigned, 27> l;

  explicit ModAlg(const StructureVector& s) : p(static_cast<unsigned>(s.field().modulus())) {
    for (std::size_t n = 0; n < 27; ++n) l[n] = static_cast<unsigned>(std::get<std::uint64_t>(s.coeffs()[n].rep()));
  }

  using V = std::array<unsigned, 3>;

  V mul(const V& u, const V& v) const {
    V out{0, 0, 0};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) out[k] = (out[k] + u[i] * v[j] % p * l[flat(i, j, k)]) % p;
    return out;
  }
  V e(int i) const {
    V v{0, 0, 0};
    v[i] = 1;
    return v;
  }
  static bool zero(const V& v) { return v[0] == 0 && v[1] == 0 && v[2] == 0; }

  std::vector<V> all() const {
    std::vector<V> out;
    for (unsigned a = 0; a < p; ++a)
      for (unsigned b = 0; b < p; ++b)
        for (unsigned c = 0; c < p; ++c) out.push_back({a, b, c});
    return out;
  }

  // log_p of a subgroup order
  std::size_t dim_of_count(std::size_t n) const {
    std::size_t d = 0;
    while (n > 1) {
      n /= p;
      ++d;
    }
    return d;
  }

  std::size_t derivation_dim() const {
    // D e_j = sum_i d[3i+j] e_i
    std::size_t count = 0;
    std::array<unsigned, 9> d{};
    std::size_t total = 1;
    for (int n = 0; n < 9; ++n) total *= p;
    for (std::size_t code = 0; code < total; ++code) {
      std::size_t c = code;
      for (int n = 0; n < 9; ++n) {
        d[n] = static_cast<unsigned>(c % p);
        c /= p;
      }
      auto apply = [&](const V& v) {
        V out{0, 0, 0};
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) out[i] = (out[i] + d[3 * i + j] * v[j]) % p;
        return out;
      };
      bool ok = true;
      for (int a = 0; a < 3 && ok; ++a)
        for (int b = 0; b < 3 && ok; ++b) {
          V lhs = apply(mul(e(a), e(b)));
          V r1 = mul(apply(e(a)), e(b)), r2 = mul(e(a), apply(e(b)));
          for (int k = 0; k < 3; ++k) ok = ok && lhs[k] == (r1[k] + r2[k]) % p;
        }
      if (ok) ++count;
    }
    return dim_of_count(count);
  }

  std::size_t annihilator_dim() const {
    std::size_t count = 0;
    for (const V& u : all()) {
      bool ann = true;
      for (int j = 0; j < 3; ++j) ann = ann && zero(mul(u, e(j))) && zero(mul(e(j), u));
      if (ann) ++count;
    }
    return dim_of_count(count);
  }

  std::size_t square_dim() const {
    std::set<V> span{{0, 0, 0}};
    std::vector<V> gens;
    for (const V& u : all())
      for (int j = 0; j < 3; ++j) gens.push_back(mul(u, e(j)));
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<V> cur(span.begin(), span.end());
      for (const V& s : cur)
        for (const V& g : gens) {
          V t{(s[0] + g[0]) % p, (s[1] + g[1]) % p, (s[2] + g[2]) % p};
          grew = span.insert(t).second || grew;
        }
    }
    return dim_of_count(span.size());
  }

  // u^2 parallel to u everywhere; a polynomial identity of degree 3 < p
  bool m_star_star() const {
    for (const V& u : all()) {
      V s = mul(u, u);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          if ((u[i] * s[j] + p * p - u[j] * s[i] % p) % p != 0) return false;
    }
    return true;
  }

  int nilpotency_class() const {
    std::vector<V> words{e(0), e(1), e(2)};
    bool any = false;
    for (const V& w : words) any = any || !zero(w);
    int length = 1;
    if (std::all_of(l.begin(), l.end(), [](unsigned x) { return x == 0; })) return 0;
    for (; length <= 6; ++length) {
      std::vector<V> next;
      for (const V& w : words)
        for (int j = 0; j < 3; ++j) next.push_back(mul(w, e(j)));
      if (std::all_of(next.begin(), next.end(), zero)) return length;
      words = std::move(next);
    }
    return -1;
  }
};

std::vector<AlgebraId> catalogue_over(const Field& f) {
  std::vector<FieldElement> deltas;
  for (const auto& d : f.elements()) deltas.push_back(d);
  std::vector<AlgebraId> ids = classified_fixed();
  for (const auto& d : deltas) ids.push_back(AlgebraId::adelta(d));
  return ids;
}

}  // namespace

TEST(AlgProps, InvariantsAgainstBruteForceGF3) {
  Field f = gf(3);
  for (const auto& id : catalogue_over(f)) {
    StructureVector s = structure_of(id, f);
    ModAlg m(s);
    SCOPED_TRACE(id.to_string());
    EXPECT_EQ(derivation_dimension(s), m.derivation_dim());
    EXPECT_EQ(annihilator_dimension(s), m.annihilator_dim());
    EXPECT_EQ(square_dimension(s), m.square_dim());
    EXPECT_EQ(nilpotency_class(s), m.nilpotency_class());
  }
}

TEST(AlgProps, InvariantsAgainstBruteForceGF2) {
  Field f = gf(2);
  for (const auto& id : catalogue_over(f)) {
    StructureVector s = structure_of(id, f);
    ModAlg m(s);
    SCOPED_TRACE(id.to_string());
    EXPECT_EQ(derivation_dimension(s), m.derivation_dim());
    EXPECT_EQ(annihilator_dimension(s), m.annihilator_dim());
    EXPECT_EQ(square_dimension(s), m.square_dim());
  }
}

TEST(AlgProps, MStarStarAgainstBruteForceGF7) {
  Field f = gf(7);
  for (const auto& id : catalogue_over(f)) {
    StructureVector s = structure_of(id, f);
    EXPECT_EQ(in_m_star_star(s), ModAlg(s).m_star_star()) << id;
  }
}

TEST(AlgProps, RandomVectorsAgainstBruteForce) {
  std::mt19937_64 rng(31);
  Field f = gf(3);
  for (int n = 0; n < 25; ++n) {
    StructureVector s = random_vector(f, rng, 0.25);
    ModAlg m(s);
    EXPECT_EQ(annihilator_dimension(s), m.annihilator_dim()) << s;
    EXPECT_EQ(square_dimension(s), m.square_dim()) << s;
  }
  Field g = gf(7);
  for (int n = 0; n < 25; ++n) {
    StructureVector s = random_vector(g, rng, 0.15);
    EXPECT_EQ(in_m_star_star(s), ModAlg(s).m_star_star()) << s;
  }
}

TEST(AlgProps, CatalogueProfilesOverQ) {
  Field q = Field::rationals();
  struct Want {
    AlgebraId id;
    int cls;
    bool comm, mss;
    std::size_t sq, ann;
  };
  std::vector<Want> table{{AlgebraId::a0(), 0, true, true, 0, 3},
                          {AlgebraId::c1(), 2, true, false, 1, 2},
                          {AlgebraId::l1(), 2, false, true, 1, 1},
                          {AlgebraId::c3(), 2, true, false, 1, 1},
                          {AlgebraId::adelta(q.from_int(2)), 2, false, false, 1, 1},
                          {AlgebraId::adelta(q.parse("1/4")), 2, false, false, 1, 1},
                          {AlgebraId::c5(), 3, true, false, 2, 1}};
  for (const auto& w : table) {
    InvariantProfile p = invariant_profile(structure_of(w.id, q));
    SCOPED_TRACE(w.id.to_string());
    EXPECT_TRUE(p.associative);
    EXPECT_EQ(p.nilpotency_class, w.cls);
    EXPECT_EQ(p.commutative, w.comm);
    EXPECT_EQ(p.in_m_star_star, w.mss);
    EXPECT_EQ(p.square_dim, w.sq);
    EXPECT_EQ(p.annihilator_dim, w.ann);
  }
}

TEST(AlgProps, NotNilpotentThrows) {
  Field q = Field::rationals();
  StructureVector s = StructureVector::basis_vector(q, 1, 1, 1);
  EXPECT_THROW(nilpotency_class(s), NotNilpotent);
  EXPECT_EQ(invariant_profile(s).nilpotency_class, -1);
}

TEST(AlgProps, AssociativityDetectsFailure) {
  Field q = Field::rationals();
  // e1e1 = e2, e2e1 = e3 but e1e2 = 0
  StructureVector s = from_relations(q, {{1, 1, basis_column(q, 2)}, {2, 1, basis_column(q, 3)}});
  EXPECT_FALSE(is_associative(s));
  EXPECT_TRUE(is_associative(structure_of(AlgebraId::c5(), q)));
}

TEST(AlgProps, InvariantUnderBasisChange) {
  std::mt19937_64 rng(41);
  for (Field f : {gf(7), gf4()}) {
    std::vector<FieldElement> deltas;
    for (int n = 0; n < 3; ++n) deltas.push_back(random_delta(f, rng));
    for (const auto& id : classified_with(deltas)) {
      StructureVector s = structure_of(id, f);
      InvariantProfile p = invariant_profile(s);
      for (int n = 0; n < 50; ++n) ASSERT_EQ(invariant_profile(act(s, random_invertible(f, rng))), p) << id;
    }
  }
}

TEST(AlgProps, SigmaFamilyDerivationDimension) {
  Field q = Field::rationals();
  std::set<std::size_t> dims;
  for (const char* b : {"0", "1", "2", "1/2", "-3", "5/7"}) {
    dims.insert(derivation_dimension(structure_of(AlgebraId::hbeta(q.parse(b)), q)));
  }
  EXPECT_EQ(dims.size(), 1u);
  // l1 = h(-1) has the larger stabiliser
  EXPECT_GT(derivation_dimension(structure_of(AlgebraId::l1(), q)), *dims.begin());
}

TEST(AlgProps, RowReduceRank) {
  Field q = Field::rationals();
  std::vector<Row> rows{{q.from_int(1), q.from_int(2)}, {q.from_int(2), q.from_int(4)}, {q.zero(), q.one()}};
  EXPECT_EQ(rank(rows), 2u);
  auto piv = row_reduce(rows);
  EXPECT_EQ(piv.size(), 2u);
}
