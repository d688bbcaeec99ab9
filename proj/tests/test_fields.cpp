#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "nildeg/fields.hpp"
#include "support.hpp"

using namespace nildeg;
using namespace nildeg::testing;

TEST(Fields, PrimeInverse) {
  Field f = gf(7);
  EXPECT_EQ(f.from_int(3).inverse(), f.from_int(5));
  EXPECT_EQ(f.from_int(-1), f.from_int(6));
  EXPECT_EQ(int_to_field(gf(2), 2), gf(2).zero());
  EXPECT_THROW(f.zero().inverse(), DivisionByZero);
}

TEST(Fields, RationalsCanonical) {
  Field q = Field::rationals();
  EXPECT_EQ(q.parse("2/4"), q.parse("1/2"));
  EXPECT_EQ(q.parse("2/3") + q.parse("1/6"), q.parse("5/6"));
  EXPECT_EQ(q.parse("2/4").to_string(), "1/2");
  EXPECT_EQ(q.parse("-6/3").to_string(), "-2");
}

TEST(Fields, FromRationalReduces) {
  EXPECT_EQ(gf(7).from_rational(mpq_class(1, 4)), gf(7).from_int(2));
  EXPECT_THROW(gf(2).from_rational(mpq_class(1, 4)), DivisionByZero);
}

TEST(Fields, MismatchThrows) {
  EXPECT_THROW(gf(5).one() + gf(7).one(), FieldMismatch);
}

TEST(Fields, ExtensionArithmetic) {
  Field f = gf49();
  FieldElement w = f.generator();
  EXPECT_EQ(w * w, f.from_int(-1));
  EXPECT_EQ(f.elements().size(), 49u);
  EXPECT_EQ(*f.order(), 49);
  Field g4 = gf4();
  FieldElement u = g4.generator();
  EXPECT_EQ(u * u, u + g4.one());
  EXPECT_EQ(u.pow(3), g4.one());
}

TEST(Fields, ExtensionRejectsReducible) {
  Field b = gf(5);
  // x^2 + 1 = (x - 2)(x - 3) over GF(5)
  EXPECT_THROW(b.extend({b.one(), b.zero(), b.one()}, "w"), Error);
  EXPECT_THROW(extend_with_root(b, {b.one(), b.zero(), b.one()}, "w"), Error);
}

TEST(Fields, HigherDegreeIrreducibility) {
  Field b = gf(2);
  // (x^2+x+1)^2 has no root but factors
  EXPECT_THROW(b.extend({b.one(), b.zero(), b.one(), b.zero(), b.one()}, "w"), Error);
  EXPECT_EQ(*gf16().order(), 16);
  Field g3 = gf(3);
  // x^4 + x + 2 is irreducible over GF(3)
  EXPECT_EQ(*g3.extend({g3.from_int(2), g3.one(), g3.zero(), g3.zero(), g3.one()}, "w").order(), 81);
}

TEST(Fields, ExtendWithRoot) {
  Field q = Field::rationals();
  Extension e = extend_with_root(q, {q.from_int(-2), q.zero(), q.one()}, "r");
  FieldElement r = e.root();
  EXPECT_EQ(r * r, e.field.from_int(2));
  EXPECT_EQ(e.embed(q.parse("3/2")) * e.field.from_int(2), e.field.from_int(3));
}

// roots by exhaustion against quadratic_roots
TEST(Fields, QuadraticRootsAgainstEnumeration) {
  for (Field f : {gf(5), gf(7), gf(2), gf4(), gf(3)}) {
    auto elems = f.elements();
    for (const auto& a : elems) {
      if (a.is_zero()) continue;
      for (const auto& b : elems) {
        for (const auto& c : elems) {
          std::vector<FieldElement> want;
          for (const auto& x : elems)
            if ((a * x * x + b * x + c).is_zero()) want.push_back(x);
          auto got = quadratic_roots(a, b, c);
          ASSERT_EQ(got.size(), want.size()) << f.describe();
          for (const auto& x : got) EXPECT_NE(std::find(want.begin(), want.end(), x), want.end());
        }
      }
    }
  }
}

TEST(Fields, QuadraticRootsExamples) {
  Field f5 = gf(5), f7 = gf(7), q = Field::rationals();
  auto r5 = quadratic_roots(f5.one(), f5.zero(), f5.one());
  ASSERT_EQ(r5.size(), 2u);
  EXPECT_TRUE(quadratic_roots(f7.one(), f7.zero(), f7.one()).empty());
  auto rq = quadratic_roots(q.one(), q.from_int(-2), q.one());
  ASSERT_EQ(rq.size(), 1u);
  EXPECT_EQ(rq[0], q.one());
  EXPECT_TRUE(quadratic_roots(q.one(), q.zero(), q.from_int(-2)).empty());
}

TEST(Fields, SqrtProperty) {
  std::mt19937_64 rng(11);
  for (Field f : {gf(7), gf(13), gf49(), gf4(), gf16(), Field::rationals()}) {
    for (int n = 0; n < 40; ++n) {
      FieldElement x = f.random(rng);
      auto r = sqrt(x * x);
      ASSERT_TRUE(r.has_value()) << f.describe() << " " << x;
      EXPECT_EQ(*r * *r, x * x);
    }
  }
  EXPECT_FALSE(sqrt(Field::rationals().from_int(2)).has_value());
  EXPECT_THROW(require_sqrt(gf(7).from_int(3)), SquareRootMissing);
}

TEST(Fields, AxiomsProperty) {
  std::mt19937_64 rng(5);
  Field qt = Field::rationals().rational_functions("t");
  Field g7t = gf(7).rational_functions("t");
  for (Field f : {gf(7), gf49(), gf4(), gf16(), Field::rationals(), q_i(), qt, g7t}) {
    for (int n = 0; n < 60; ++n) {
      FieldElement a = f.random(rng), b = f.random(rng), c = f.random(rng);
      EXPECT_EQ((a + b) + c, a + (b + c));
      EXPECT_EQ((a * b) * c, a * (b * c));
      EXPECT_EQ(a * (b + c), a * b + a * c);
      EXPECT_EQ(a * b, b * a);
      EXPECT_EQ(a - a, f.zero());
      if (!a.is_zero()) EXPECT_EQ(a * a.inverse(), f.one()) << f.describe();
    }
  }
}

TEST(Fields, FrobeniusInCharTwo) {
  std::mt19937_64 rng(3);
  Field f = gf16();
  for (int n = 0; n < 50; ++n) {
    FieldElement a = f.random(rng), b = f.random(rng);
    EXPECT_EQ((a + b) * (a + b), a * a + b * b);
    EXPECT_EQ(a.pow(16), a);
  }
}

TEST(Fields, ParsePrintRoundTrip) {
  std::mt19937_64 rng(9);
  Field qt = Field::rationals().rational_functions("t");
  for (Field f : {gf(7), gf49(), gf4(), Field::rationals(), q_i(), qt}) {
    for (int n = 0; n < 40; ++n) {
      FieldElement a = f.random(rng);
      EXPECT_EQ(f.parse(a.to_string()), a) << a.to_string();
    }
  }
}

TEST(Fields, RationalFunctionFieldOps) {
  Field qt = Field::rationals().rational_functions("t");
  FieldElement t = qt.generator();
  FieldElement r = (t * t + t) / t;
  EXPECT_EQ(r, t + qt.one());
  EXPECT_EQ(qt.parse("(t^2-1)/(t-1)"), qt.parse("t+1"));
}

TEST(Fields, JsonRoundTrip) {
  for (Field f : {gf(7), gf49(), gf4(), Field::rationals(), q_i(), gf(5).rational_functions("t")}) {
    Field g = Field::from_json(f.to_json());
    EXPECT_EQ(g.describe(), f.describe());
    EXPECT_EQ(g.characteristic(), f.characteristic());
  }
}

TEST(Fields, EmbedAlongTower) {
  Field b = gf(7);
  Field e = gf49();
  EXPECT_TRUE(e.has_subfield(b));
  EXPECT_EQ(e.embed(b.from_int(3)) * e.embed(b.from_int(5)), e.one());
  Field et = e.rational_functions("t");
  EXPECT_EQ(et.embed(b.from_int(2)), et.from_int(2));
}
