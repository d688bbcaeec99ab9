#pragma once

// Shared fields and hand-rolled generators for the test binaries.

#include <cstdint>
#include <random>
#include <vector>

#include "nildeg/catalogue.hpp"
#include "nildeg/structspace.hpp"

namespace nildeg::testing {

inline Field gf(std::uint64_t p) { return Field::prime(p); }

// GF(4) = GF(2)[w]/(w^2+w+1)
inline Field gf4() {
  Field b = Field::prime(2);
  return b.extend({b.one(), b.one(), b.one()}, "w");
}

// GF(16) = GF(2)[w]/(w^4+w+1)
inline Field gf16() {
  Field b = Field::prime(2);
  return b.extend({b.one(), b.one(), b.zero(), b.zero(), b.one()}, "w");
}

// GF(49) = GF(7)[w]/(w^2+1)
inline Field gf49() {
  Field b = Field::prime(7);
  return b.extend({b.one(), b.zero(), b.one()}, "w");
}

// Q[w]/(w^2+1)
inline Field q_i() {
  Field q = Field::rationals();
  return q.extend({q.one(), q.zero(), q.one()}, "w");
}

inline FieldElement nonzero(const Field& f, std::mt19937_64& rng) {
  for (;;) {
    FieldElement x = f.random(rng);
    if (!x.is_zero()) return x;
  }
}

inline Matrix random_matrix(const Field& f, std::mt19937_64& rng) {
  Matrix m = zero_matrix(f);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = f.random(rng);
  return m;
}

inline Matrix random_invertible(const Field& f, std::mt19937_64& rng) {
  for (;;) {
    Matrix m = random_matrix(f, rng);
    if (!m.det().is_zero()) return m;
  }
}

// each coefficient nonzero with probability `density`
inline StructureVector random_vector(const Field& f, std::mt19937_64& rng, double density = 0.3) {
  std::bernoulli_distribution on(density);
  StructureVector v(f);
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j)
      for (int k = 1; k <= 3; ++k)
        if (on(rng)) v.set(i, j, k, f.random(rng));
  return v;
}

// d with 4d != 1
inline FieldElement random_delta(const Field& f, std::mt19937_64& rng) {
  for (;;) {
    FieldElement d = f.random(rng);
    if (f.characteristic() == 2 || d * f.from_int(4) != f.one()) return d;
  }
}

inline std::vector<AlgebraId> classified_with(const std::vector<FieldElement>& deltas) {
  std::vector<AlgebraId> ids = classified_fixed();
  for (const auto& d : deltas) ids.push_back(AlgebraId::adelta(d));
  return ids;
}

}  // namespace nildeg::testing
