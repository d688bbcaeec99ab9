#include "nildeg/search.hpp"

#include <chrono>
#include <exception>
#include <limits>
#include <map>
#include <mutex>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nildeg {

SmallField::SmallField(const Field& f) : field_(f) {
  auto order = f.order();
  if (!order || *order > 256) throw NotSupported("table arithmetic needs a finite field with at most 256 elements");
  elems_ = f.elements();
  q_ = static_cast<unsigned>(elems_.size());
  for (unsigned i = 0; i < q_; ++i) {
    if (elems_[i].is_zero()) std::swap(elems_[0], elems_[i]);
  }
  for (unsigned i = 1; i < q_; ++i) {
    if (elems_[i].is_one()) std::swap(elems_[1], elems_[i]);
  }
  std::map<std::string, El> idx;
  for (unsigned i = 0; i < q_; ++i) idx.emplace(elems_[i].to_string(), static_cast<El>(i));
  auto find = [&](const FieldElement& x) { return idx.at(x.to_string()); };
  add_.resize(q_ * q_);
  mul_.resize(q_ * q_);
  neg_.resize(q_);
  inv_.resize(q_);
  for (unsigned a = 0; a < q_; ++a) {
    neg_[a] = find(-elems_[a]);
    inv_[a] = a == 0 ? 0 : find(elems_[a].inverse());
    for (unsigned b = 0; b < q_; ++b) {
      add_[a * q_ + b] = find(elems_[a] + elems_[b]);
      mul_[a * q_ + b] = find(elems_[a] * elems_[b]);
    }
  }
}

SmallField::El SmallField::index_of(const FieldElement& x) const {
  FieldElement y = field_.embed(x);
  for (unsigned i = 0; i < q_; ++i)
    if (elems_[i] == y) return static_cast<El>(i);
  throw Error("element not in table field");
}

// ---------------------------------------------------------------------------

namespace {

struct SplitMix64 {
  std::uint64_t s;
  std::uint64_t next() {
    std::uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  unsigned below(unsigned n) { return static_cast<unsigned>(next() % n); }
};

using El = SmallField::El;
constexpr std::size_t kLen = 3 * kMaxSearchDegree + 1;
using Poly = std::array<El, kLen>;

// a * b, coefficients 0..n only
Poly mul_trunc(const SmallField& k, const Poly& a, const Poly& b, std::size_t n) {
  Poly r{};
  for (std::size_t i = 0; i <= n; ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; i + j <= n; ++j)
      if (b[j]) r[i + j] = k.add(r[i + j], k.mul(a[i], b[j]));
  }
  return r;
}

Poly sub(const SmallField& k, const Poly& a, const Poly& b) {
  Poly r{};
  for (std::size_t i = 0; i < kLen; ++i) r[i] = k.sub(a[i], b[i]);
  return r;
}

std::size_t rank_small(const SmallField& k, std::vector<std::array<El, 3>> rows) {
  std::size_t r = 0;
  for (int c = 0; c < 3 && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][static_cast<std::size_t>(c)] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    El inv = k.inv(rows[r][static_cast<std::size_t>(c)]);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      El f = k.mul(rows[i][static_cast<std::size_t>(c)], inv);
      if (!f) continue;
      for (std::size_t j = 0; j < 3; ++j) rows[i][j] = k.sub(rows[i][j], k.mul(f, rows[r][j]));
    }
    ++r;
  }
  return r;
}

struct Profile {
  bool zero;
  bool commutative;
  std::size_t square_dim;
  std::size_t annihilator_dim;
  bool operator==(const Profile&) const = default;
};

Profile small_profile(const SmallField& k, const std::array<El, 27>& m) {
  Profile p{true, true, 0, 0};
  for (El x : m) p.zero = p.zero && x == 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int c = 0; c < 3; ++c)
        if (m[flat(i, j, c)] != m[flat(j, i, c)]) p.commutative = false;
  std::vector<std::array<El, 3>> sq, ann;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) sq.push_back({m[flat(i, j, 0)], m[flat(i, j, 1)], m[flat(i, j, 2)]});
  for (int j = 0; j < 3; ++j)
    for (int c = 0; c < 3; ++c) {
      ann.push_back({m[flat(0, j, c)], m[flat(1, j, c)], m[flat(2, j, c)]});
      ann.push_back({m[flat(j, 0, c)], m[flat(j, 1, c)], m[flat(j, 2, c)]});
    }
  p.square_dim = rank_small(k, std::move(sq));
  p.annihilator_dim = 3 - rank_small(k, std::move(ann));
  return p;
}

enum Status : std::uint8_t { kSingular, kRejected, kScreened, kAccepted };

class Kernel {
 public:
  Kernel(const SmallField& k, const AlgebraId& src, const AlgebraId& dst, unsigned degree)
      : k_(k), dst_(dst), degree_(degree) {
    StructureVector lam = structure_of(src, k.field());
    for (std::size_t i = 0; i < 27; ++i) lam_[i] = k.index_of(lam.coeffs()[i]);
    StructureVector target = structure_of(dst, k.field());
    std::array<El, 27> t{};
    for (std::size_t i = 0; i < 27; ++i) t[i] = k.index_of(target.coeffs()[i]);
    target_ = small_profile(k, t);
  }

  // Table screen; on success mu holds the limit.
  Status screen(const Candidate& cand, std::array<El, 27>& mu) const {
    std::array<Poly, 9> g{};
    for (std::size_t e = 0; e < 9; ++e)
      for (std::size_t d = 0; d <= degree_; ++d) g[e][d] = cand.c[e][d];
    const std::size_t full = kLen - 1;
    auto G = [&](int i, int j) -> const Poly& { return g[static_cast<std::size_t>(3 * i + j)]; };
    auto m = [&](const Poly& a, const Poly& b) { return mul_trunc(k_, a, b, full); };
    std::array<Poly, 9> adj{};
    auto A = [&](int i, int j) -> Poly& { return adj[static_cast<std::size_t>(3 * i + j)]; };
    A(0, 0) = sub(k_, m(G(1, 1), G(2, 2)), m(G(1, 2), G(2, 1)));
    A(0, 1) = sub(k_, m(G(0, 2), G(2, 1)), m(G(0, 1), G(2, 2)));
    A(0, 2) = sub(k_, m(G(0, 1), G(1, 2)), m(G(0, 2), G(1, 1)));
    A(1, 0) = sub(k_, m(G(1, 2), G(2, 0)), m(G(1, 0), G(2, 2)));
    A(1, 1) = sub(k_, m(G(0, 0), G(2, 2)), m(G(0, 2), G(2, 0)));
    A(1, 2) = sub(k_, m(G(0, 2), G(1, 0)), m(G(0, 0), G(1, 2)));
    A(2, 0) = sub(k_, m(G(1, 0), G(2, 1)), m(G(1, 1), G(2, 0)));
    A(2, 1) = sub(k_, m(G(0, 1), G(2, 0)), m(G(0, 0), G(2, 1)));
    A(2, 2) = sub(k_, m(G(0, 0), G(1, 1)), m(G(0, 1), G(1, 0)));
    Poly det{};
    for (int j = 0; j < 3; ++j) {
      Poly p = m(G(0, j), A(j, 0));
      for (std::size_t d = 0; d < kLen; ++d) det[d] = k_.add(det[d], p[d]);
    }
    std::size_t v = 0;
    while (v < kLen && det[v] == 0) ++v;
    if (v == kLen) return kSingular;

    // t1_ijc = sum_k adj_ck lam_ijk
    std::array<Poly, 27> t1{}, t2{}, out{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int kk = 0; kk < 3; ++kk) {
          El l = lam_[flat(i, j, kk)];
          if (!l) continue;
          for (int c = 0; c < 3; ++c) {
            Poly& dst = t1[flat(i, j, c)];
            const Poly& a = A(c, kk);
            for (std::size_t d = 0; d <= v; ++d) dst[d] = k_.add(dst[d], k_.mul(l, a[d]));
          }
        }
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int c = 0; c < 3; ++c) {
          const Poly& x = t1[flat(i, j, c)];
          for (int b = 0; b < 3; ++b) {
            Poly p = mul_trunc(k_, G(j, b), x, v);
            Poly& dst = t2[flat(i, b, c)];
            for (std::size_t d = 0; d <= v; ++d) dst[d] = k_.add(dst[d], p[d]);
          }
        }
    for (int i = 0; i < 3; ++i)
      for (int b = 0; b < 3; ++b)
        for (int c = 0; c < 3; ++c) {
          const Poly& x = t2[flat(i, b, c)];
          for (int a = 0; a < 3; ++a) {
            Poly p = mul_trunc(k_, G(i, a), x, v);
            Poly& dst = out[flat(a, b, c)];
            for (std::size_t d = 0; d <= v; ++d) dst[d] = k_.add(dst[d], p[d]);
          }
        }
    const El inv = k_.inv(det[v]);
    for (std::size_t e = 0; e < 27; ++e) {
      for (std::size_t d = 0; d < v; ++d)
        if (out[e][d]) return kRejected;
      mu[e] = k_.mul(out[e][v], inv);
    }
    return small_profile(k_, mu) == target_ ? kScreened : kRejected;
  }

  bool confirm(const std::array<El, 27>& mu) const {
    std::array<FieldElement, 27> c;
    for (std::size_t i = 0; i < 27; ++i) c[i] = k_.element(mu[i]);
    return compare_limit(StructureVector(k_.field(), c), dst_, true).verified;
  }

  Status classify(const Candidate& cand) const {
    std::array<El, 27> mu{};
    Status s = screen(cand, mu);
    if (s == kScreened && confirm(mu)) s = kAccepted;
    return s;
  }

 private:
  const SmallField& k_;
  AlgebraId dst_;
  unsigned degree_;
  std::array<El, 27> lam_{};
  Profile target_{};
};

void check_options(const SearchOptions& opt) {
  if (opt.budget == 0) throw Error("search budget must be positive");
  if (opt.degree > kMaxSearchDegree) throw NotSupported("search degree above " + std::to_string(kMaxSearchDegree));
}

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void finish(SearchResult& r, const SmallField& k, const AlgebraId& src, const AlgebraId& dst) {
  if (!r.curve) return;
  WitnessReport rep = verify_witness(structure_of(src, k.field()), *r.curve, dst, true);
  if (!rep.verified) throw Error("search kernel accepted a curve that verify_witness rejects: " + r.curve->id());
}

}  // namespace

Candidate sample_candidate(const SmallField& k, unsigned degree, std::uint64_t seed, std::uint64_t index) {
  SplitMix64 rng{seed ^ (index * 0xd1b54a32d192ed03ULL)};
  rng.next();
  const unsigned q = k.size();
  auto any = [&] { return static_cast<El>(rng.below(q)); };
  auto nonzero = [&] { return static_cast<El>(1 + rng.below(q - 1)); };
  Candidate c;
  const unsigned mode = rng.below(8);
  if (mode < 4) {
    // constant matrix times diag(t^a1, t^a2, t^a3)
    std::array<unsigned, 3> a{rng.below(degree + 1), rng.below(degree + 1), rng.below(degree + 1)};
    for (std::size_t e = 0; e < 9; ++e)
      if (rng.below(2)) c.c[e][a[e % 3]] = nonzero();
  } else if (mode < 6) {
    for (std::size_t e = 0; e < 9; ++e)
      if (rng.below(3) == 0) c.c[e][rng.below(degree + 1)] = nonzero();
  } else {
    for (std::size_t e = 0; e < 9; ++e)
      for (unsigned d = 0; d <= degree; ++d)
        if (rng.below(2)) c.c[e][d] = any();
  }
  return c;
}

std::optional<Curve> candidate_curve(const SmallField& k, const Candidate& c) {
  Field ft = k.field().rational_functions("t");
  std::array<FieldElement, 9> e;
  for (std::size_t i = 0; i < 9; ++i) {
    Coeffs num;
    for (El x : c.c[i]) num.push_back(k.element(x));
    upoly::trim(num);
    e[i] = ft.from_fraction(num, {k.field().one()});
  }
  Matrix m(e);
  if (m.det().is_zero()) return std::nullopt;
  return Curve(m);
}

nlohmann::json SearchResult::to_json() const {
  nlohmann::json j{{"found", curve.has_value()}, {"examined", examined}, {"screened", screened}};
  if (curve) {
    j["index"] = index;
    j["matrix"] = curve->render();
  }
  return j;
}

SearchResult search_witness_serial(const AlgebraId& src, const AlgebraId& dst, const Field& field,
                                   const SearchOptions& opt) {
  check_options(opt);
  auto t0 = std::chrono::steady_clock::now();
  SmallField k(field);
  Kernel kernel(k, src, dst, opt.degree);
  SearchResult r;
  for (std::uint64_t i = 0; i < opt.budget; ++i) {
    ++r.examined;
    Status s = kernel.classify(sample_candidate(k, opt.degree, opt.seed, i));
    if (s >= kScreened) ++r.screened;
    if (s == kAccepted) {
      r.index = i;
      r.curve = candidate_curve(k, sample_candidate(k, opt.degree, opt.seed, i));
      break;
    }
  }
  finish(r, k, src, dst);
  r.seconds = since(t0);
  return r;
}

SearchResult search_witness(const AlgebraId& src, const AlgebraId& dst, const Field& field, const SearchOptions& opt) {
  check_options(opt);
  auto t0 = std::chrono::steady_clock::now();
  SmallField k(field);
  Kernel kernel(k, src, dst, opt.degree);
  SearchResult r;
  constexpr std::uint64_t kBlock = 8192;
  std::vector<std::uint8_t> status(kBlock);
  std::exception_ptr error;
  std::mutex error_mu;

  for (std::uint64_t start = 0; start < opt.budget; start += kBlock) {
    const std::uint64_t n = std::min(kBlock, opt.budget - start);
    const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 64)
    for (std::int64_t off = 0; off < count; ++off) {
      try {
        status[static_cast<std::size_t>(off)] =
            kernel.classify(sample_candidate(k, opt.degree, opt.seed, start + static_cast<std::uint64_t>(off)));
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!error) error = std::current_exception();
      }
    }
    if (error) std::rethrow_exception(error);
    for (std::uint64_t off = 0; off < n; ++off) {
      ++r.examined;
      if (status[off] >= kScreened) ++r.screened;
      if (status[off] == kAccepted) {
        r.index = start + off;
        r.curve = candidate_curve(k, sample_candidate(k, opt.degree, opt.seed, r.index));
        break;
      }
    }
    if (r.curve) break;
  }
  finish(r, k, src, dst);
  r.seconds = since(t0);
  return r;
}

SearchResult search_witness_generic(const AlgebraId& src, const AlgebraId& dst, const Field& field,
                                    const SearchOptions& opt) {
  check_options(opt);
  auto t0 = std::chrono::steady_clock::now();
  SmallField k(field);
  StructureVector lam = structure_of(src, field);
  SearchResult r;
  for (std::uint64_t i = 0; i < opt.budget; ++i) {
    ++r.examined;
    auto curve = candidate_curve(k, sample_candidate(k, opt.degree, opt.seed, i));
    if (!curve) continue;
    if (verify_witness(lam, *curve, dst, true).verified) {
      r.index = i;
      r.curve = std::move(curve);
      break;
    }
  }
  r.seconds = since(t0);
  return r;
}

Curve lift_to_rationals(const Curve& c) {
  Field base = c.base();
  if (base.kind() != FieldKind::Prime) throw NotSupported("lifting needs a curve over a prime field");
  const std::uint64_t p = base.modulus();
  Field qt = Field::rationals().rational_functions(c.function_field().generator_name());
  Field q = Field::rationals();
  std::array<FieldElement, 9> e;
  for (std::size_t i = 0; i < 9; ++i) {
    const FieldElement& x = c.matrix().entries()[i];
    if (!(x.denominator().size() == 1 && x.denominator()[0].is_one())) {
      throw NotSupported("lifting needs polynomial entries");
    }
    Coeffs num;
    for (const auto& a : x.numerator()) {
      auto r = std::get<std::uint64_t>(a.rep());
      num.push_back(r > p / 2 ? q.from_int(static_cast<long long>(r) - static_cast<long long>(p))
                              : q.from_int(static_cast<long long>(r)));
    }
    e[i] = qt.from_fraction(num, {q.one()});
  }
  return Curve(Matrix(e));
}

}  // namespace nildeg
