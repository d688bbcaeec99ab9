#include <gtest/gtest.h>

#include "nildeg/search.hpp"
#include "support.hpp"

using namespace nildeg;
using namespace nildeg::testing;

TEST(SmallField, TablesMatchFieldArithmetic) {
  for (Field f : {gf(2), gf(5), gf(7), gf4(), gf16(), gf49()}) {
    SmallField k(f);
    ASSERT_EQ(k.size(), f.elements().size());
    EXPECT_TRUE(k.element(0).is_zero());
    EXPECT_TRUE(k.element(1).is_one());
    for (unsigned a = 0; a < k.size(); ++a) {
      auto ea = k.element(static_cast<SmallField::El>(a));
      EXPECT_EQ(k.index_of(ea), a);
      EXPECT_EQ(k.element(k.neg(static_cast<SmallField::El>(a))), -ea);
      if (a) EXPECT_EQ(k.element(k.inv(static_cast<SmallField::El>(a))), ea.inverse());
      for (unsigned b = 0; b < k.size(); ++b) {
        auto A = static_cast<SmallField::El>(a), B = static_cast<SmallField::El>(b);
        auto eb = k.element(B);
        ASSERT_EQ(k.element(k.add(A, B)), ea + eb);
        ASSERT_EQ(k.element(k.mul(A, B)), ea * eb);
        ASSERT_EQ(k.element(k.sub(A, B)), ea - eb);
      }
    }
  }
}

TEST(SmallField, RejectsLargeOrInfinite) {
  EXPECT_THROW(SmallField(Field::rationals()), NotSupported);
  EXPECT_THROW(SmallField(gf(257)), NotSupported);
}

TEST(Search, CandidatesAreDeterministicAndBounded) {
  SmallField k(gf(5));
  for (unsigned degree = 0; degree <= kMaxSearchDegree; ++degree) {
    for (std::uint64_t i = 0; i < 300; ++i) {
      Candidate a = sample_candidate(k, degree, 3, i), b = sample_candidate(k, degree, 3, i);
      EXPECT_EQ(a.c, b.c);
      for (const auto& e : a.c)
        for (unsigned d = degree + 1; d <= kMaxSearchDegree; ++d) EXPECT_EQ(e[d], 0) << "degree " << degree;
    }
  }
  EXPECT_NE(sample_candidate(k, 2, 1, 0).c, sample_candidate(k, 2, 2, 0).c);
}

TEST(Search, CandidateCurveMatchesCoefficients) {
  SmallField k(gf(7));
  for (std::uint64_t i = 0; i < 50; ++i) {
    Candidate c = sample_candidate(k, 2, 9, i);
    auto curve = candidate_curve(k, c);
    if (!curve) continue;
    Field ft = curve->function_field();
    FieldElement t = ft.generator();
    for (int n = 0; n < 9; ++n) {
      FieldElement want = ft.zero();
      for (unsigned d = 0; d <= kMaxSearchDegree; ++d) want += ft.embed(k.element(c.c[n][d])) * t.pow(d);
      EXPECT_EQ(curve->matrix()(n / 3, n % 3), want);
    }
  }
}

TEST(Search, VariantsAgree) {
  struct Case {
    AlgebraId src, dst;
    Field field;
    unsigned degree;
  };
  Field f5 = gf(5);
  std::vector<Case> cases{{AlgebraId::c3(), AlgebraId::c1(), f5, 1},
                          {AlgebraId::c1(), AlgebraId::a0(), f5, 1},
                          {AlgebraId::c5(), AlgebraId::c3(), f5, 1},
                          {AlgebraId::c3(), AlgebraId::l1(), gf(2), 1},
                          {AlgebraId::adelta(gf4().generator()), AlgebraId::c1(), gf4(), 1}};
  for (const auto& c : cases) {
    for (std::uint64_t seed : {1u, 7u}) {
      SearchOptions opt{3000, seed, c.degree};
      SearchResult p = search_witness(c.src, c.dst, c.field, opt);
      SearchResult s = search_witness_serial(c.src, c.dst, c.field, opt);
      SearchResult g = search_witness_generic(c.src, c.dst, c.field, opt);
      SCOPED_TRACE(c.src.to_string() + " -> " + c.dst.to_string());
      ASSERT_EQ(p.curve.has_value(), s.curve.has_value());
      ASSERT_EQ(s.curve.has_value(), g.curve.has_value());
      if (p.curve) {
        EXPECT_EQ(p.index, s.index);
        EXPECT_EQ(s.index, g.index);
        EXPECT_EQ(p.curve->id(), g.curve->id());
        EXPECT_TRUE(verify_witness(structure_of(c.src, c.field), *p.curve, c.dst, true).verified);
      }
      EXPECT_EQ(p.to_json(), s.to_json());
    }
  }
}

TEST(Search, RepeatRunsAreIdentical) {
  SearchOptions opt{20000, 42, 2};
  SearchResult a = search_witness(AlgebraId::c5(), AlgebraId::c3(), gf(7), opt);
  SearchResult b = search_witness(AlgebraId::c5(), AlgebraId::c3(), gf(7), opt);
  EXPECT_EQ(a.to_json(), b.to_json());
  ASSERT_TRUE(a.curve.has_value());
}

TEST(Search, FindsA3ToL1AndLifts) {
  Field f = gf(7);
  SearchResult r = search_witness(AlgebraId::a3kappa(f.from_int(2)), AlgebraId::l1(), f, {100000, 1, 2});
  ASSERT_TRUE(r.curve.has_value());
  Curve lifted = lift_to_rationals(*r.curve);
  Field q = Field::rationals();
  EXPECT_EQ(lifted.base(), q);
  EXPECT_TRUE(verify_witness(structure_of(AlgebraId::a3kappa(q.from_int(2)), q), lifted, AlgebraId::l1(), true).verified);
}

TEST(Search, NothingForObstructedPair) {
  // l1 -> c1 is ruled out by the closure of orbit(l1)
  SearchResult r = search_witness(AlgebraId::l1(), AlgebraId::c1(), gf(5), {20000, 1, 2});
  EXPECT_FALSE(r.curve.has_value());
  EXPECT_EQ(r.examined, 20000u);
}

TEST(Search, BadOptions) {
  EXPECT_THROW(search_witness(AlgebraId::c3(), AlgebraId::c1(), gf(5), {0, 1, 2}), Error);
  EXPECT_THROW(search_witness(AlgebraId::c3(), AlgebraId::c1(), gf(5), {10, 1, kMaxSearchDegree + 1}), NotSupported);
  EXPECT_THROW(search_witness(AlgebraId::c3(), AlgebraId::c1(), Field::rationals(), {10, 1, 1}), NotSupported);
}

TEST(Search, LiftUsesSymmetricResidues) {
  Field f = gf(7);
  Curve c = Curve::parse(f, {{"6*t", "0", "0"}, {"0", "1", "0"}, {"0", "4", "t"}});
  EXPECT_EQ(lift_to_rationals(c).id(), "[[-t,0,0],[0,1,0],[0,-3,t]]");
}
