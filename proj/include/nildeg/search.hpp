#pragma once

// Seeded random search for curve witnesses over small finite fields.
// Candidates are matrices with polynomial entries of bounded degree in t;
// each is screened with table arithmetic truncated at the order of det g(t)
// and confirmed exactly by the generic limit machinery.

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include <json.hpp>

#include "nildeg/degeneration.hpp"

namespace nildeg {

/// Addition / multiplication tables of a finite field with at most 256
/// elements. Index 0 is zero and index 1 is one.
class SmallField {
 public:
  using El = std::uint8_t;

  explicit SmallField(const Field& f);

  const Field& field() const { return field_; }
  unsigned size() const { return q_; }
  El add(El a, El b) const { return add_[a * q_ + b]; }
  El mul(El a, El b) const { return mul_[a * q_ + b]; }
  El neg(El a) const { return neg_[a]; }
  El sub(El a, El b) const { return add_[a * q_ + neg_[b]]; }
  El inv(El a) const { return inv_[a]; }  // inv(0) == 0
  const FieldElement& element(El a) const { return elems_[a]; }
  El index_of(const FieldElement& x) const;

 private:
  Field field_;
  unsigned q_ = 0;
  std::vector<El> add_, mul_, neg_, inv_;
  std::vector<FieldElement> elems_;
};

constexpr unsigned kMaxSearchDegree = 3;

/// Candidate matrix: entry (i, j) has coefficient c[3i+j][k] at t^k.
struct Candidate {
  std::array<std::array<SmallField::El, kMaxSearchDegree + 1>, 9> c{};
};

/// Deterministic candidate number `index` for `seed`.
Candidate sample_candidate(const SmallField& k, unsigned degree, std::uint64_t seed, std::uint64_t index);
/// The same candidate as a curve over k(t); nullopt if det vanishes.
std::optional<Curve> candidate_curve(const SmallField& k, const Candidate& c);

struct SearchOptions {
  std::uint64_t budget = 100000;
  std::uint64_t seed = 1;
  unsigned degree = 2;
};

struct SearchResult {
  std::optional<Curve> curve;
  std::uint64_t index = 0;     // candidate number of the hit
  std::uint64_t examined = 0;  // candidates looked at
  std::uint64_t screened = 0;  // candidates passing the table screen
  double seconds = 0;

  nlohmann::json to_json() const;
};

/// OpenMP kernel; returns the lowest accepted index, so results do not
/// depend on the thread count.
SearchResult search_witness(const AlgebraId& src, const AlgebraId& dst, const Field& field, const SearchOptions& opt);
/// Same candidates, one at a time.
SearchResult search_witness_serial(const AlgebraId& src, const AlgebraId& dst, const Field& field,
                                   const SearchOptions& opt);
/// Same candidates, each through verify_witness over k(t). Slow; for checks.
SearchResult search_witness_generic(const AlgebraId& src, const AlgebraId& dst, const Field& field,
                                    const SearchOptions& opt);

/// Reads a curve over GF(p)(t) with polynomial entries as an integer curve
/// over Q(t) using residues in (-p/2, p/2].
Curve lift_to_rationals(const Curve& c);

}  // namespace nildeg
