#include <gtest/gtest.h>

#include <random>

#include "nildeg/algprops.hpp"
#include "nildeg/catalogue.hpp"
#include "support.hpp"

using namespace nildeg;
using namespace nildeg::testing;

namespace {

Vec3 e(const Field& f, int i) { return basis_column(f, i); }

Vec3 times(const FieldElement& s, const Vec3& v) { return {s * v[0], s * v[1], s * v[2]}; }

}  // namespace

TEST(Catalogue, StructuresFromRelations) {
  Field q = Field::rationals();
  FieldElement d = q.parse("3/5"), k = q.from_int(7), b = q.parse("-2/3");
  auto E1 = e(q, 1), E2 = e(q, 2), E3 = e(q, 3);
  EXPECT_TRUE(structure_of(AlgebraId::a0(), q).is_zero());
  EXPECT_EQ(structure_of(AlgebraId::c1(), q), from_relations(q, {{3, 3, E1}}));
  EXPECT_EQ(structure_of(AlgebraId::c3(), q), from_relations(q, {{2, 2, E1}, {3, 3, E1}}));
  EXPECT_EQ(structure_of(AlgebraId::adelta(d), q), from_relations(q, {{2, 2, E1}, {3, 3, times(d, E1)}, {2, 3, E1}}));
  EXPECT_EQ(structure_of(AlgebraId::l1(), q), from_relations(q, {{2, 3, E1}, {3, 2, times(-q.one(), E1)}}));
  EXPECT_EQ(structure_of(AlgebraId::c5(), q), from_relations(q, {{1, 1, E2}, {1, 2, E3}, {2, 1, E3}}));
  EXPECT_EQ(structure_of(AlgebraId::chat3(), q), from_relations(q, {{2, 3, E1}, {3, 2, E1}}));
  EXPECT_EQ(structure_of(AlgebraId::a2(), q), from_relations(q, {{2, 3, E1}}));
  EXPECT_EQ(structure_of(AlgebraId::a3kappa(k), q), from_relations(q, {{2, 2, E1}, {3, 2, times(k, E1)}, {3, 3, E1}}));
  EXPECT_EQ(structure_of(AlgebraId::hbeta(b), q), from_relations(q, {{2, 3, E1}, {3, 2, times(b, E1)}}));
  EXPECT_EQ(structure_of(AlgebraId::rho(), q),
            from_relations(q, {{2, 2, E1}, {3, 2, times(q.from_int(2), E1)}, {3, 3, E1}}));
}

TEST(Catalogue, AllAssociativeAndNilpotent) {
  Field q = Field::rationals();
  for (const auto& id :
       {AlgebraId::a0(), AlgebraId::c1(), AlgebraId::c3(), AlgebraId::l1(), AlgebraId::c5(), AlgebraId::chat3(),
        AlgebraId::a2(), AlgebraId::rho(), AlgebraId::adelta(q.from_int(3)), AlgebraId::a3kappa(q.from_int(3)),
        AlgebraId::hbeta(q.from_int(3))}) {
    StructureVector s = structure_of(id, q);
    EXPECT_TRUE(is_associative(s)) << id;
    EXPECT_NO_THROW(nilpotency_class(s)) << id;
  }
}

TEST(Catalogue, IdParseRoundTrip) {
  Field q = Field::rationals();
  for (const char* s : {"a0", "c1", "c3", "l1", "c5", "a(1/3)", "h(-2)", "a3(5)", "rho", "chat3", "a2"}) {
    EXPECT_EQ(AlgebraId::parse(s, q).to_string(), s);
  }
  EXPECT_THROW(AlgebraId::parse("c7", q), Error);
}

TEST(Catalogue, SymbolicInversionWitness) {
  Field qb = Field::rationals().rational_functions("b");
  FieldElement b = qb.generator();
  IsoWitness w = iso_witness(AlgebraId::hbeta(b), AlgebraId::hbeta(b.inverse()), qb);
  EXPECT_EQ(act(structure_of(w.src(), qb), w.matrix()), structure_of(w.dst(), qb));
}

TEST(Catalogue, SymbolicA3ToH) {
  Field qa = Field::rationals().rational_functions("a");
  FieldElement a = qa.generator();
  FieldElement k = -(a + a.inverse());
  IsoWitness w = iso_witness(AlgebraId::a3kappa(k), AlgebraId::hbeta(-a * a), qa);
  EXPECT_EQ(act(structure_of(w.src(), qa), w.matrix()), structure_of(w.dst(), qa));
}

TEST(Catalogue, SymbolicAToA3) {
  Field qk = Field::rationals().rational_functions("k");
  FieldElement k = qk.generator();
  IsoWitness w = iso_witness(AlgebraId::adelta((k * k).inverse()), AlgebraId::a3kappa(k), qk);
  EXPECT_EQ(act(structure_of(w.src(), qk), w.matrix()), structure_of(w.dst(), qk));
}

TEST(Catalogue, C3ToChat3NeedsRootOfMinusOne) {
  IsoWitness w5 = iso_witness(AlgebraId::c3(), AlgebraId::chat3(), gf(5));
  EXPECT_EQ(act(structure_of(AlgebraId::c3(), gf(5)), w5.matrix()), structure_of(AlgebraId::chat3(), gf(5)));
  Field qi = q_i();
  IsoWitness wi = iso_witness(AlgebraId::c3(), AlgebraId::chat3(), qi);
  EXPECT_EQ(act(structure_of(AlgebraId::c3(), qi), wi.matrix()), structure_of(AlgebraId::chat3(), qi));
  EXPECT_THROW(iso_witness(AlgebraId::c3(), AlgebraId::chat3(), Field::rationals()), SquareRootMissing);
  EXPECT_THROW(iso_witness(AlgebraId::c3(), AlgebraId::chat3(), gf(7)), SquareRootMissing);
}

TEST(Catalogue, A2ToA0Param) {
  for (Field f : {gf(5), q_i(), Field::rationals(), gf(2)}) {
    IsoWitness w = iso_witness(AlgebraId::a2(), AlgebraId::adelta(f.zero()), f);
    EXPECT_EQ(act(structure_of(AlgebraId::a2(), f), w.matrix()), structure_of(AlgebraId::adelta(f.zero()), f));
  }
}

TEST(Catalogue, IsoWitnessRejectsWrongMatrix) {
  Field q = Field::rationals();
  EXPECT_THROW(IsoWitness(AlgebraId::c3(), AlgebraId::c1(), identity_matrix(q)), Error);
  EXPECT_THROW(iso_witness(AlgebraId::c3(), AlgebraId::c5(), q), Error);
}

// composite maps input to the canonical representative
TEST(Catalogue, CanonicalizeProperty) {
  std::mt19937_64 rng(17);
  for (Field f : {gf(5), gf(7), gf(11), gf4(), gf49(), Field::rationals()}) {
    std::vector<AlgebraId> ids{AlgebraId::chat3(), AlgebraId::a2(), AlgebraId::rho()};
    for (int n = 0; n < 12; ++n) {
      FieldElement x = nonzero(f, rng);
      ids.push_back(AlgebraId::hbeta(x));
      ids.push_back(AlgebraId::a3kappa(f.random(rng)));
    }
    for (const auto& id : ids) {
      Canonical c;
      try {
        c = canonicalize(id, f);
      } catch (const SquareRootMissing&) {
        continue;
      }
      EXPECT_TRUE(c.id.is_classified()) << id;
      EXPECT_EQ(act(structure_of(id, f), c.composite(f)), structure_of(c.id, f)) << id << " over " << f.describe();
    }
  }
}

TEST(Catalogue, CanonicalIdsInCharTwo) {
  Field f = gf(2);
  EXPECT_EQ(canonicalize(AlgebraId::chat3(), f).id, AlgebraId::l1());
  EXPECT_EQ(canonicalize(AlgebraId::hbeta(f.one()), f).id, AlgebraId::l1());
}

TEST(Catalogue, SameRClass) {
  Field q = Field::rationals();
  EXPECT_TRUE(same_r_class(q.from_int(3), q.parse("1/3")));
  EXPECT_TRUE(same_r_class(q.from_int(3), q.from_int(3)));
  EXPECT_FALSE(same_r_class(q.from_int(3), q.from_int(2)));
}

TEST(Catalogue, IdentifyRoundTrip) {
  std::mt19937_64 rng(19);
  for (Field f : {gf(7), gf4(), gf(5), gf(3)}) {
    std::vector<FieldElement> deltas;
    for (const auto& d : f.elements())
      if (f.characteristic() == 2 || d * f.from_int(4) != f.one()) deltas.push_back(d);
    auto ids = classified_with(deltas);
    if (f.characteristic() != 2) ids.push_back(AlgebraId::adelta(f.from_rational(mpq_class(1, 4))));
    for (const auto& id : ids) {
      StructureVector s = structure_of(id, f);
      for (int n = 0; n < 25; ++n) {
        StructureVector m = act(s, random_invertible(f, rng));
        Identification r = identify(m);
        ASSERT_EQ(r.id, id) << "over " << f.describe() << " from " << m;
        ASSERT_EQ(act(m, r.witness), structure_of(id, f));
      }
    }
  }
}

TEST(Catalogue, IdentifyLargeFields) {
  std::mt19937_64 rng(23);
  for (Field f : {gf49(), gf16(), Field::rationals()}) {
    for (int n = 0; n < 10; ++n) {
      AlgebraId id = AlgebraId::adelta(random_delta(f, rng));
      StructureVector m = act(structure_of(id, f), random_invertible(f, rng));
      Identification r = identify(m);
      EXPECT_EQ(r.id, id);
      EXPECT_EQ(act(m, r.witness), structure_of(id, f));
    }
  }
}

TEST(Catalogue, IdentifyRejectsNonNilpotent) {
  Field q = Field::rationals();
  EXPECT_THROW(identify(StructureVector::basis_vector(q, 1, 1, 1)), NotNilpotent);
}

TEST(Catalogue, RelationsText) {
  EXPECT_EQ(relations_text(Tag::C3), "e2e2=e1, e3e3=e1");
  EXPECT_EQ(relations_text(Tag::L1), "e2e3=e1, e3e2=-e1");
}
