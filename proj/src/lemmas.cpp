#include "nildeg/lemmas.hpp"

#include "nildeg/matrix3.hpp"

namespace nildeg {

namespace {

using PolyArray = std::array<MultiPoly, 27>;
using PolyMatrix = Matrix3<MultiPoly>;

PolyArray zero_array(const Field& f, const VarList& vars) {
  PolyArray a{};
  a.fill(MultiPoly(f, vars));
  return a;
}

PolyArray relabel(const PolyArray& a, const VarList& vars) {
  PolyArray out = a;
  for (auto& p : out) p = p.relabel(vars);
  return out;
}

std::string triple(std::size_t idx) {
  return std::to_string(idx / 9 + 1) + std::to_string(idx / 3 % 3 + 1) + std::to_string(idx % 3 + 1);
}

class Ring {
 public:
  Ring(Field f, std::vector<std::string> names) : f_(std::move(f)), vars_(make_vars(std::move(names))) {}
  const VarList& vars() const { return vars_; }
  MultiPoly v(const std::string& n) const { return MultiPoly::variable(f_, vars_, n); }
  MultiPoly c(long long k) const { return MultiPoly::constant(f_, vars_, f_.from_int(k)); }
  MultiPoly zero() const { return MultiPoly(f_, vars_); }
  std::size_t size() const { return vars_->size(); }

 private:
  Field f_;
  VarList vars_;
};

IdentityCheck check_all(std::string name, std::size_t nvars, const PolyArray& lhs, const PolyArray& rhs) {
  IdentityCheck c{std::move(name), true, nvars, {}};
  for (std::size_t i = 0; i < 27; ++i) {
    if (lhs[i] != rhs[i]) {
      c.passed = false;
      c.detail = "coefficient " + triple(i) + ": " + lhs[i].to_string() + " != " + rhs[i].to_string();
      break;
    }
  }
  return c;
}

IdentityCheck check_one(std::string name, std::size_t nvars, const MultiPoly& lhs, const MultiPoly& rhs) {
  IdentityCheck c{std::move(name), lhs == rhs, nvars, {}};
  if (!c.passed) c.detail = lhs.to_string() + " != " + rhs.to_string();
  return c;
}

PolyArray from_terms(const Field& f, const VarList& vars,
                     std::initializer_list<std::pair<std::size_t, MultiPoly>> terms) {
  PolyArray a = zero_array(f, vars);
  for (const auto& [idx, p] : terms) a[idx] = p;
  return a;
}

}  // namespace

LemmaInputs LemmaInputs::standard(const Field& f) {
  Field p = f.prime_field();
  VarList params = make_vars({"beta", "xi"});
  auto cst = [&](long long k) { return MultiPoly::constant(p, params, p.from_int(k)); };
  MultiPoly beta = MultiPoly::variable(p, params, "beta");
  MultiPoly xi = MultiPoly::variable(p, params, "xi");
  LemmaInputs in{p, params, {}, {}, {}, {}};
  in.sigma_beta = from_terms(p, params, {{flat(1, 2, 0), cst(1)}, {flat(2, 1, 0), beta}});
  in.sigma_xi = from_terms(p, params, {{flat(1, 2, 0), cst(1)}, {flat(2, 1, 0), xi}});
  in.nu = from_terms(p, params, {{flat(1, 2, 0), cst(-1)}, {flat(2, 1, 0), cst(1)}, {flat(2, 2, 0), cst(1)}});
  in.rho = from_terms(p, params, {{flat(1, 1, 0), cst(1)}, {flat(2, 1, 0), cst(2)}, {flat(2, 2, 0), cst(1)}});
  return in;
}

bool LemmaReport::all_passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return !checks.empty();
}

nlohmann::json LemmaReport::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json j{{"name", c.name}, {"passed", c.passed}, {"variables", c.variables}};
    if (!c.passed) j["detail"] = c.detail;
    arr.push_back(std::move(j));
  }
  return {{"char", characteristic}, {"passed", all_passed()}, {"identities", arr}};
}

LemmaReport verify_lemma_identities(const LemmaInputs& in) {
  const Field& f = in.field;
  LemmaReport report;
  report.characteristic = f.characteristic();

  // Fully symbolic g.
  {
    Ring R(f, {"g11", "g12", "g13", "g21", "g22", "g23", "g31", "g32", "g33", "xi"});
    std::array<MultiPoly, 9> e{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        e[static_cast<std::size_t>(3 * i + j)] = R.v("g" + std::to_string(i + 1) + std::to_string(j + 1));
    PolyMatrix g(e);
    PolyMatrix adj = g.adjugate();
    MultiPoly xi = R.v("xi");
    PolyArray mu = contract(relabel(in.sigma_xi, R.vars()), g, adj, R.zero());

    PolyArray closed = zero_array(f, R.vars());
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        for (int c = 0; c < 3; ++c)
          closed[flat(a, b, c)] = adj(c, 0) * (g(1, a) * g(2, b) + xi * g(2, a) * g(1, b));
    report.checks.push_back(check_all("sigma(xi) g closed form", R.size(), mu, closed));

    MultiPoly g22 = R.v("g22"), g23 = R.v("g23"), g32 = R.v("g32"), g33 = R.v("g33");
    MultiPoly cof = adj(0, 0);
    MultiPoly one = R.c(1);
    report.checks.push_back(check_one("mu231", R.size(), mu[flat(1, 2, 0)], cof * (g22 * g33 + xi * g23 * g32)));
    report.checks.push_back(check_one("mu321", R.size(), mu[flat(2, 1, 0)], cof * (g23 * g32 + xi * g22 * g33)));
    report.checks.push_back(check_one("mu331", R.size(), mu[flat(2, 2, 0)], cof * (one + xi) * g23 * g33));
    report.checks.push_back(check_one("mu221", R.size(), mu[flat(1, 1, 0)], cof * (one + xi) * g22 * g32));
    report.checks.push_back(check_one("mu231+mu321", R.size(), mu[flat(1, 2, 0)] + mu[flat(2, 1, 0)],
                                      cof * (one + xi) * (g22 * g33 + g23 * g32)));
  }

  // Upper-triangular b.
  {
    Ring R(f, {"b11", "b12", "b13", "b22", "b23", "b33", "beta"});
    MultiPoly z = R.zero();
    PolyMatrix b(std::array<MultiPoly, 9>{R.v("b11"), R.v("b12"), R.v("b13"), z, R.v("b22"), R.v("b23"), z, z,
                                          R.v("b33")});
    MultiPoly det = b.det();
    MultiPoly b11 = R.v("b11"), b22 = R.v("b22"), b23 = R.v("b23"), b33 = R.v("b33"), beta = R.v("beta");
    PolyArray lam = contract(relabel(in.sigma_beta, R.vars()), b, b.adjugate(), z);
    PolyArray expect = from_terms(f, R.vars(), {{flat(1, 2, 0), b22 * b33},
                                                 {flat(2, 1, 0), beta * b22 * b33},
                                                 {flat(2, 2, 0), (R.c(1) + beta) * b23 * b33}});
    for (std::size_t i = 0; i < 27; ++i) {
      lam[i] = lam[i] * b11;
      expect[i] = expect[i] * det;
    }
    report.checks.push_back(check_all("lambda b expansion", R.size(), lam, expect));

    PolyArray nu = contract(relabel(in.nu, R.vars()), b, b.adjugate(), z);
    PolyArray nexp = from_terms(f, R.vars(),
                                {{flat(1, 2, 0), -(b22 * b33)}, {flat(2, 1, 0), b22 * b33}, {flat(2, 2, 0), b33 * b33}});
    for (std::size_t i = 0; i < 27; ++i) {
      nu[i] = nu[i] * b11;
      nexp[i] = nexp[i] * det;
    }
    report.checks.push_back(check_all("nu b expansion", R.size() - 1, nu, nexp));
  }

  // rho -> nu by e2' = e2 - e3.
  {
    const VarList& vars = in.params;
    auto cst = [&](long long k) { return MultiPoly::constant(f, vars, f.from_int(k)); };
    PolyMatrix g = PolyMatrix::identity(cst(0), cst(1));
    g(2, 1) = cst(-1);
    PolyArray image = contract(in.rho, g, g.adjugate(), cst(0));
    IdentityCheck c = check_all("nu in orbit of rho", 0, image, in.nu);
    if (c.passed && g.det() != cst(1)) {
      c.passed = false;
      c.detail = "change of basis is not unimodular";
    }
    report.checks.push_back(c);
  }

  // Formula-level consequences.
  {
    Ring R(f, {"g22", "g23", "g32", "g33", "xi", "beta"});
    MultiPoly g22 = R.v("g22"), g23 = R.v("g23"), g32 = R.v("g32"), g33 = R.v("g33");
    MultiPoly xi = R.v("xi"), beta = R.v("beta"), one = R.c(1);
    MultiPoly f231 = g22 * g33 + xi * g23 * g32;
    MultiPoly f321 = g23 * g32 + xi * g22 * g33;
    report.checks.push_back(check_one("mu321-beta*mu231", R.size(), f321 - beta * f231,
                                      (one - beta * xi) * g23 * g32 - (beta - xi) * g22 * g33));
    MultiPoly plus = g22 * g33 + g23 * g32, minus = g22 * g33 - g23 * g32;
    report.checks.push_back(check_one("gamma' against gamma", 4, plus + minus, R.c(2) * g22 * g33));
    if (f.characteristic() == 2) report.checks.push_back(check_one("gamma' equals gamma", 4, plus - minus, R.zero()));
  }
  return report;
}

LemmaReport verify_lemma_identities(const Field& f) { return verify_lemma_identities(LemmaInputs::standard(f)); }

bool IdentityGate::ensure(const Field& f) {
  std::lock_guard lock(mu_);
  std::uint64_t ch = f.characteristic();
  auto it = results_.find(ch);
  if (it == results_.end()) it = results_.emplace(ch, verify_lemma_identities(f.prime_field()).all_passed()).first;
  return it->second;
}

bool IdentityGate::verified(std::uint64_t characteristic) const {
  std::lock_guard lock(mu_);
  auto it = results_.find(characteristic);
  return it != results_.end() && it->second;
}

}  // namespace nildeg
