#include "nildeg/degeneration.hpp"

#include <deque>
#include <map>
#include <set>

namespace nildeg {

namespace {

std::string triple(std::size_t idx) {
  return std::to_string(idx / 9 + 1) + std::to_string(idx / 3 % 3 + 1) + std::to_string(idx % 3 + 1);
}

bool name_used(const Field& f, const std::string& name) {
  Field g = f;
  while (g.kind() == FieldKind::Extension || g.kind() == FieldKind::Function) {
    if (g.generator_name() == name) return true;
    g = g.base();
  }
  return false;
}

std::string fresh_name(const Field& f) {
  if (!name_used(f, "w")) return "w";
  for (int i = 1;; ++i) {
    std::string n = "w" + std::to_string(i);
    if (!name_used(f, n)) return n;
  }
}

std::string diff_text(const StructureVector& got, const StructureVector& want) {
  std::string out;
  for (std::size_t i = 0; i < 27; ++i) {
    if (got.coeffs()[i] == want.coeffs()[i]) continue;
    if (!out.empty()) out += "; ";
    out += triple(i) + ": " + got.coeffs()[i].to_string() + " vs " + want.coeffs()[i].to_string();
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

Curve::Curve(Matrix m) : m_(std::move(m)) {
  Field f = matrix_field(m_);
  if (f.kind() != FieldKind::Function) throw Error("curve entries must lie in a rational function field");
  det_ = m_.det();
  if (det_.is_zero()) throw Error("curve determinant vanishes identically");
}

Curve Curve::parse(const Field& base, const std::vector<std::vector<std::string>>& rows, const std::string& var) {
  return Curve(parse_matrix(base.rational_functions(var), rows));
}

Curve Curve::scaling(const Field& base) {
  Field ft = base.rational_functions("t");
  FieldElement t = ft.generator();
  return Curve(diagonal(t, t, t));
}

Curve Curve::identity(const Field& base) { return Curve(identity_matrix(base.rational_functions("t"))); }

Curve Curve::after(const Matrix& h) const { return Curve(embed_matrix(function_field(), h) * m_); }

std::string Curve::id() const {
  std::string s = "[";
  auto rows = render();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    s += i ? ",[" : "[";
    for (std::size_t j = 0; j < rows[i].size(); ++j) s += (j ? "," : "") + rows[i][j];
    s += "]";
  }
  return s + "]";
}

nlohmann::json WitnessReport::to_json() const {
  nlohmann::json j{{"verified", verified}};
  if (limit) j["limit"] = limit->to_string();
  if (identified) j["identified"] = identified->to_string();
  if (!extension.empty()) j["extension"] = extension;
  if (!detail.empty()) j["detail"] = detail;
  return j;
}

WitnessReport compare_limit(const StructureVector& mu0, const AlgebraId& target, bool up_to_iso) {
  WitnessReport r;
  const Field base = mu0.field();
  r.limit = mu0;

  StructureVector want = structure_of(target, base);
  if (mu0 == want) {
    r.verified = true;
    r.identified = target;
    return r;
  }
  if (!up_to_iso) {
    r.detail = "limit differs from " + target.to_string() + " at " + diff_text(mu0, want);
    return r;
  }

  Field f = base;
  for (int attempt = 0; attempt < 3; ++attempt) {
    try {
      Identification id = identify(mu0.over(f));
      Canonical c = canonicalize(target, f);
      r.identified = id.id;
      r.verified = id.id == c.id;
      if (!r.verified) r.detail = "limit identified as " + id.id.to_string() + ", expected " + c.id.to_string();
      if (f != base) r.extension = f.describe();
      return r;
    } catch (const SquareRootMissing& e) {
      const FieldElement& x = e.element();
      Field xf = x.field();
      if (xf != f) throw;
      f = f.extend({-x, f.zero(), f.one()}, fresh_name(f));
    } catch (const NotNilpotent& e) {
      r.detail = e.what();
      return r;
    }
  }
  r.detail = "too many field extensions while identifying the limit";
  return r;
}

WitnessReport verify_witness(const StructureVector& lambda, const Curve& curve, const AlgebraId& target,
                             bool up_to_iso) {
  WitnessReport r;
  const Field base = curve.base();
  if (!base.has_subfield(lambda.field())) throw FieldMismatch(lambda.field().describe() + " vs curve over " + base.describe());

  StructureVector moving = act(lambda.over(base), curve.matrix());
  std::array<FieldElement, 27> lim;
  for (std::size_t i = 0; i < 27; ++i) {
    try {
      lim[i] = limit_at_zero(moving.coeffs()[i]);
    } catch (const PoleAtZero&) {
      r.detail = "pole at t=0 in coefficient " + triple(i) + ": " + moving.coeffs()[i].to_string();
      return r;
    }
  }
  return compare_limit(StructureVector(base, lim), target, up_to_iso);
}

// ---------------------------------------------------------------------------

namespace {

using Rows = std::vector<std::vector<std::string>>;

const Rows kC5C3{{"t", "0", "0"}, {"t", "1", "0"}, {"0", "0", "t"}};
const Rows kC5C3Char2{{"0", "0", "t"}, {"0", "t", "0"}, {"t^2", "t", "0"}};
const Rows kC3L1Char2{{"t", "0", "0"}, {"0", "1", "0"}, {"0", "1", "t"}};
const Rows kC5L1Char2{{"0", "0", "t"}, {"0", "1", "0"}, {"t", "0", "0"}};
const Rows kC3C1{{"1", "0", "0"}, {"0", "t", "0"}, {"0", "0", "1"}};
const Rows kAC1{{"1", "0", "0"}, {"0", "0", "1"}, {"0", "t", "0"}};
const Rows kA3L1{{"-t", "0", "0"}, {"0", "1", "0"}, {"0", "-1", "t"}};
const Rows kC5C1{{"0", "0", "t"}, {"t^2", "0", "0"}, {"0", "1", "0"}};

}  // namespace

bool is_quarter(const FieldElement& delta) {
  Field f = delta.field();
  if (f.characteristic() == 2) return false;
  return delta * f.from_int(4) == f.one();
}

std::optional<Curve> known_witness(const AlgebraId& src, const AlgebraId& dst, const Field& base) {
  const bool char2 = base.characteristic() == 2;
  if (src == dst) return Curve::identity(base);
  if (dst.tag == Tag::A0) return Curve::scaling(base);
  switch (src.tag) {
    case Tag::C5:
      if (dst.tag == Tag::C3) return Curve::parse(base, char2 ? kC5C3Char2 : kC5C3);
      if (dst.tag == Tag::C1) return Curve::parse(base, kC5C1);
      if (dst.tag == Tag::L1 && char2) return Curve::parse(base, kC5L1Char2);
      break;
    case Tag::C3:
      if (dst.tag == Tag::C1) return Curve::parse(base, kC3C1);
      if (dst.tag == Tag::L1 && char2) return Curve::parse(base, kC3L1Char2);
      break;
    case Tag::Adelta:
      if (dst.tag == Tag::C1) return Curve::parse(base, kAC1);
      if (dst.tag == Tag::L1 && is_quarter(base.embed(*src.param))) {
        Field f = base;
        IsoWitness to_a3(src, AlgebraId::a3kappa(f.from_int(2)),
                         Matrix::from_columns({f.one(), f.zero(), f.zero()}, {f.zero(), f.zero(), f.from_int(2)},
                                              {f.zero(), f.one(), f.zero()}));
        return Curve::parse(base, kA3L1).after(to_a3.matrix());
      }
      break;
    case Tag::A3kappa:
      if (dst.tag == Tag::L1 && base.embed(*src.param) == base.from_int(2) && !char2) return Curve::parse(base, kA3L1);
      break;
    default:
      break;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

std::string to_string(ObstructionTag tag) {
  switch (tag) {
    case ObstructionTag::NilpotencyClass: return "nilpotency-class";
    case ObstructionTag::Commutativity: return "commutativity";
    case ObstructionTag::MStarStarClosure: return "m-star-star-closure";
    case ObstructionTag::Lemma31: return "lemma-3.1";
    case ObstructionTag::Lemma32: return "lemma-3.2";
    case ObstructionTag::TransitivityDerived: return "transitivity-derived";
  }
  return "?";
}

namespace {

// Member of the family 231 + beta*321 (up to beta ~ 1/beta) isomorphic to id.
// Empty for ids outside the family; a(1/4) is rho, handled separately.
std::optional<nlohmann::json> h_class(const AlgebraId& id, const Field& f) {
  const bool char2 = f.characteristic() == 2;
  if (id.tag == Tag::L1) return nlohmann::json{{"beta", (-f.one()).to_string()}};
  if (id.tag == Tag::C3 && !char2) return nlohmann::json{{"beta", "1"}};
  if (id.tag != Tag::Adelta) return std::nullopt;
  FieldElement d = f.embed(*id.param);
  if (is_quarter(d)) return std::nullopt;
  // delta * (1 - beta)^2 + beta = 0
  nlohmann::json j{{"delta", d.to_string()}};
  if (d.is_zero()) {
    j["beta"] = "0";
    return j;
  }
  try {
    auto roots = quadratic_roots(d, f.one() - f.from_int(2) * d, d);
    if (!roots.empty()) {
      j["beta"] = roots.front().to_string();
      return j;
    }
  } catch (const NotSupported&) {
  }
  j["beta"] = "root of " + d.to_string() + "*x^2+(" + (f.one() - f.from_int(2) * d).to_string() + ")*x+" + d.to_string();
  return j;
}

bool is_rho_class(const AlgebraId& id, const Field& f) {
  return id.tag == Tag::Adelta && is_quarter(f.embed(*id.param));
}

}  // namespace

std::optional<Obstruction> check_obstruction(const AlgebraId& src, const AlgebraId& dst, const Field& base,
                                             IdentityGate& gate) {
  if (!src.is_classified() || !dst.is_classified()) throw Error("check_obstruction expects classified ids");
  if (src == dst) return std::nullopt;
  const bool char2 = base.characteristic() == 2;
  InvariantProfile ps = invariant_profile(structure_of(src, base));
  InvariantProfile pd = invariant_profile(structure_of(dst, base));

  if (pd.nilpotency_class > ps.nilpotency_class) {
    return Obstruction{ObstructionTag::NilpotencyClass,
                       {{"src_class", ps.nilpotency_class}, {"dst_class", pd.nilpotency_class}}};
  }
  if (ps.commutative && !pd.commutative) {
    return Obstruction{ObstructionTag::Commutativity, {{"src_commutative", true}, {"dst_commutative", false}}};
  }
  if ((src.tag == Tag::L1 || src.tag == Tag::C1) && dst.tag != Tag::A0) {
    // closure is the orbit plus 0; certified by a closed invariant set or a
    // jump of the annihilator
    if (src.tag == Tag::L1 && ps.in_m_star_star && !pd.in_m_star_star) {
      return Obstruction{ObstructionTag::MStarStarClosure,
                         {{"closure", "orbit(l1) + {0}"}, {"src_in_m_star_star", true}, {"dst_in_m_star_star", false}}};
    }
    if (src.tag == Tag::C1 && ps.annihilator_dim > pd.annihilator_dim) {
      return Obstruction{ObstructionTag::MStarStarClosure,
                         {{"closure", "orbit(c1) + {0}"},
                          {"src_annihilator_dim", ps.annihilator_dim},
                          {"dst_annihilator_dim", pd.annihilator_dim}}};
    }
  }

  if (!gate.ensure(base)) return std::nullopt;
  auto hs = h_class(src, base), hd = h_class(dst, base);
  if (!char2 && is_rho_class(src, base) && hd && dst.tag != Tag::L1) {
    return Obstruction{ObstructionTag::Lemma32, {{"src", "rho"}, {"dst", *hd}}};
  }
  if (hs && hd) return Obstruction{ObstructionTag::Lemma31, {{"src", *hs}, {"dst", *hd}}};
  if (!char2 && src.tag == Tag::Adelta && hs && is_rho_class(dst, base)) {
    return Obstruction{ObstructionTag::TransitivityDerived,
                       {{"via", "l1"}, {"holds", dst.to_string() + " -> l1"}, {"fails", src.to_string() + " -> l1"},
                        {"by", "lemma-3.1"}}};
  }
  if (char2 && src.tag == Tag::Adelta && dst.tag == Tag::C3) {
    return Obstruction{ObstructionTag::TransitivityDerived,
                       {{"via", "l1"}, {"holds", "c3 -> l1"}, {"fails", src.to_string() + " -> l1"}, {"by", "lemma-3.1"}}};
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

namespace {

// Generating arrows out of `src` among the ids in `nodes`.
std::vector<AlgebraId> arrows_from(const AlgebraId& src, const std::vector<AlgebraId>& nodes, const Field& base) {
  const bool char2 = base.characteristic() == 2;
  std::vector<AlgebraId> out;
  for (const auto& d : nodes) {
    bool edge = false;
    switch (src.tag) {
      case Tag::C5: edge = d.tag == Tag::C3; break;
      case Tag::C3: edge = d.tag == Tag::C1 || (char2 && d.tag == Tag::L1); break;
      case Tag::Adelta:
        edge = d.tag == Tag::C1 || (d.tag == Tag::L1 && is_quarter(base.embed(*src.param)));
        break;
      case Tag::C1:
      case Tag::L1: edge = d.tag == Tag::A0; break;
      default: break;
    }
    if (edge) out.push_back(d);
  }
  return out;
}

std::vector<AlgebraId> find_chain(const AlgebraId& src, const AlgebraId& dst, const Field& base) {
  std::vector<AlgebraId> nodes = classified_fixed();
  for (const auto& x : {src, dst})
    if (x.tag == Tag::Adelta) nodes.push_back(x);
  std::map<std::string, std::string> parent;
  std::map<std::string, AlgebraId> by_name;
  for (const auto& n : nodes) by_name.emplace(n.to_string(), n);
  std::deque<AlgebraId> queue{src};
  parent[src.to_string()] = "";
  while (!queue.empty()) {
    AlgebraId cur = queue.front();
    queue.pop_front();
    if (cur == dst) break;
    for (const auto& nxt : arrows_from(cur, nodes, base)) {
      if (parent.count(nxt.to_string())) continue;
      parent[nxt.to_string()] = cur.to_string();
      queue.push_back(nxt);
    }
  }
  if (!parent.count(dst.to_string())) return {};
  std::vector<AlgebraId> chain;
  for (std::string n = dst.to_string(); !n.empty(); n = parent[n]) chain.insert(chain.begin(), by_name.at(n));
  return chain;
}

}  // namespace

nlohmann::json DegenerationFact::to_json() const {
  nlohmann::json j{{"src", src.to_string()}, {"dst", dst.to_string()}, {"char", characteristic}, {"holds", holds}};
  if (curve) j["curve"] = curve->render();
  if (!chain.empty()) {
    nlohmann::json c = nlohmann::json::array();
    for (const auto& x : chain) c.push_back(x.to_string());
    j["chain"] = c;
  }
  if (report) j["report"] = report->to_json();
  if (obstruction) j["obstruction"] = obstruction->to_json();
  return j;
}

DegenerationFact degenerates(const AlgebraId& src, const AlgebraId& dst, const Field& base, IdentityGate& gate) {
  DegenerationFact fact{src, dst, base.characteristic(), false, {}, {}, {}, {}};
  if (!src.is_classified() || !dst.is_classified()) throw Error("degenerates expects classified ids");
  if (src == dst) {
    fact.holds = true;
    fact.curve = Curve::identity(base);
    fact.chain = {src};
    fact.report = verify_witness(structure_of(src, base), *fact.curve, dst, false);
    return fact;
  }
  if (auto ob = check_obstruction(src, dst, base, gate)) {
    fact.obstruction = std::move(ob);
    return fact;
  }
  fact.chain = find_chain(src, dst, base);
  if (fact.chain.empty()) throw Error("undecided pair " + src.to_string() + " -> " + dst.to_string());
  auto curve = known_witness(src, dst, base);
  if (!curve) throw Error("no single-parameter witness for " + src.to_string() + " -> " + dst.to_string());
  WitnessReport rep = verify_witness(structure_of(src, base), *curve, dst, true);
  if (!rep.verified) {
    throw Error("witness for " + src.to_string() + " -> " + dst.to_string() + " failed: " + rep.detail);
  }
  fact.holds = true;
  fact.curve = std::move(curve);
  fact.report = std::move(rep);
  return fact;
}

// ---------------------------------------------------------------------------

Field field_for_char(std::uint64_t c) { return c == 0 ? Field::rationals() : Field::prime(c); }

WitnessFile WitnessFile::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("witness file must be a JSON object");
  for (const char* k : {"src", "dst", "matrix"})
    if (!j.contains(k)) throw ParseError(std::string("witness file lacks \"") + k + "\"");
  Field base = j.contains("field") ? Field::from_json(j.at("field"))
                                   : field_for_char(j.value("char", std::uint64_t{0}));
  const auto& m = j.at("matrix");
  if (!m.is_array() || m.size() != 3) throw ParseError("matrix must have 3 rows");
  Rows rows;
  for (const auto& row : m) {
    if (!row.is_array() || row.size() != 3) throw ParseError("matrix rows must have 3 entries");
    std::vector<std::string> r;
    for (const auto& e : row) r.push_back(e.is_string() ? e.get<std::string>() : e.dump());
    rows.push_back(std::move(r));
  }
  return WitnessFile{AlgebraId::parse(j.at("src").get<std::string>(), base),
                     AlgebraId::parse(j.at("dst").get<std::string>(), base), base, Curve::parse(base, rows)};
}

nlohmann::json WitnessFile::to_json() const {
  nlohmann::json j{{"src", src.to_string()}, {"dst", dst.to_string()}, {"char", base.characteristic()},
                   {"matrix", curve.render()}};
  if (base.kind() == FieldKind::Extension) j["field"] = base.to_json();
  return j;
}

}  // namespace nildeg
