#include "nildeg/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "nildeg/hasse.hpp"
#include "nildeg/search.hpp"

namespace nildeg {

namespace {

class InputError : public Error {
 public:
  using Error::Error;
};

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// First monic irreducible of degree k over GF(p), lexicographic in the
// coefficients below the leading one.
Field prime_power(std::uint64_t p, unsigned k) {
  Field b = Field::prime(p);
  std::vector<std::uint64_t> c(k, 0);
  while (true) {
    Coeffs poly;
    for (auto x : c) poly.push_back(b.from_int(static_cast<long long>(x)));
    poly.push_back(b.one());
    if (small_degree_roots(poly).empty()) return b.extend(poly, "w");
    std::size_t i = 0;
    while (i < k && ++c[i] == p) c[i++] = 0;
    if (i == k) throw Error("no irreducible polynomial found");
  }
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::json read_json(const std::string& path_or_text) {
  std::string text = std::filesystem::exists(path_or_text) ? slurp(path_or_text) : path_or_text;
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

std::vector<std::vector<std::string>> rows_of(const nlohmann::json& m) {
  if (!m.is_array() || m.size() != 3) throw InputError("matrix must have 3 rows");
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : m) {
    if (!r.is_array() || r.size() != 3) throw InputError("matrix rows must have 3 entries");
    std::vector<std::string> row;
    for (const auto& e : r) row.push_back(e.is_string() ? e.get<std::string>() : e.dump());
    rows.push_back(std::move(row));
  }
  return rows;
}

std::uint64_t default_seed() {
  if (const char* s = std::getenv("DEGEN_SEED")) {
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      throw InputError("DEGEN_SEED is not an integer");
    }
  }
  return 1;
}

Field field_for_flag(std::uint64_t c) {
  if (c != 0 && !is_prime(c)) throw InputError("--char must be 0 or a prime");
  return field_for_char(c);
}

// Identification, adjoining square roots on demand.
std::pair<Identification, Field> identify_extending(const StructureVector& v) {
  Field f = v.field();
  for (int attempt = 0;; ++attempt) {
    try {
      return {identify(v.over(f)), f};
    } catch (const SquareRootMissing& e) {
      if (attempt == 2) throw;
      f = f.extend({-e.element(), f.zero(), f.one()}, attempt ? "w" + std::to_string(attempt) : "w");
    }
  }
}

int cmd_catalog(std::ostream& out, bool json) {
  Field q = Field::rationals();
  struct Row {
    std::string name;
    Tag tag;
    std::string structure;
  };
  const std::vector<Row> rows{{"a0", Tag::A0, "0"},
                              {"c1", Tag::C1, structure_of(AlgebraId::c1(), q).to_string()},
                              {"c3", Tag::C3, structure_of(AlgebraId::c3(), q).to_string()},
                              {"a(delta)", Tag::Adelta, "221+231+delta*331"},
                              {"l1", Tag::L1, structure_of(AlgebraId::l1(), q).to_string()},
                              {"c5", Tag::C5, structure_of(AlgebraId::c5(), q).to_string()}};
  if (json) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows) arr.push_back({{"id", r.name}, {"relations", relations_text(r.tag)}, {"structure", r.structure}});
    out << arr.dump(2) << "\n";
    return 0;
  }
  for (const auto& r : rows) out << r.name << "\t" << r.structure << "\t" << relations_text(r.tag) << "\n";
  return 0;
}

int cmd_identities(std::ostream& out, std::uint64_t c, bool json) {
  std::vector<Field> fields;
  if (c == 0) fields = {Field::rationals(), Field::prime(5), Field::prime(7)};
  else fields = {field_for_flag(c)};
  bool ok = true;
  nlohmann::json all = nlohmann::json::array();
  for (const auto& f : fields) {
    LemmaReport r = verify_lemma_identities(f);
    ok = ok && r.all_passed();
    if (json) {
      nlohmann::json j = r.to_json();
      j["field"] = f.describe();
      all.push_back(j);
      continue;
    }
    out << "# " << f.describe() << "\n";
    for (const auto& ch : r.checks) {
      out << (ch.passed ? "PASS " : "FAIL ") << ch.name << " (" << ch.variables << " variables)";
      if (!ch.passed) out << ": " << ch.detail;
      out << "\n";
    }
  }
  if (json) out << all.dump(2) << "\n";
  else out << (ok ? "all identities hold\n" : "identity failure\n");
  return ok ? 0 : 1;
}

int cmd_hasse(std::ostream& out, std::ostream& err, std::uint64_t c, const std::string& format) {
  GraphFormat fmt;
  if (format == "dot") fmt = GraphFormat::Dot;
  else if (format == "json") fmt = GraphFormat::Json;
  else throw InputError("--format must be dot or json");
  std::vector<Field> fields;
  if (c == 0) fields = {Field::rationals(), Field::prime(5), Field::prime(7)};
  else if (c == 2) fields = {Field::prime(2), prime_power(2, 2)};
  else fields = {field_for_flag(c)};

  IdentityGate gate;
  bool ok = true;
  std::optional<DegenerationGraph> shown;
  for (const auto& f : fields) {
    DegenerationGraph g = transitive_reduction(build_graph(f, delta_samples(f), gate));
    Verdict v = compare_expected(g);
    if (!v.match) {
      err << f.describe() << ": " << v.to_string() << "\n";
      ok = false;
    }
    if (!shown) shown = std::move(g);
  }
  out << emit(*shown, fmt);
  return ok ? 0 : 1;
}

int cmd_search(std::ostream& out, const std::string& src_text, const std::string& dst_text,
               const std::string& field_spec, const SearchOptions& opt, bool serial, bool lift) {
  Field f = parse_field_spec(field_spec);
  AlgebraId src = AlgebraId::parse(src_text, f), dst = AlgebraId::parse(dst_text, f);
  SearchResult r = serial ? search_witness_serial(src, dst, f, opt) : search_witness(src, dst, f, opt);
  nlohmann::json j = r.to_json();
  j["src"] = src.to_string();
  j["dst"] = dst.to_string();
  j["field"] = f.describe();
  j["seed"] = opt.seed;
  j["budget"] = opt.budget;
  j["degree"] = opt.degree;
  int code = 0;
  if (r.curve && lift && f.kind() == FieldKind::Prime) {
    Field q = Field::rationals();
    Curve l = lift_to_rationals(*r.curve);
    // parameters are read back as integers over Q
    AlgebraId qs = AlgebraId::parse(src_text, q), qd = AlgebraId::parse(dst_text, q);
    WitnessReport rep = verify_witness(structure_of(qs, q), l, qd, true);
    j["lifted"] = {{"matrix", l.render()}, {"report", rep.to_json()}};
    if (!rep.verified) code = 1;
  }
  out << j.dump(2) << "\n";
  return code;
}

}  // namespace

Field parse_field_spec(const std::string& spec) {
  if (spec == "Q" || spec == "q" || spec == "0") return Field::rationals();
  if (!spec.empty() && spec.front() == '{') return Field::from_json(read_json(spec));
  std::uint64_t n = 0;
  try {
    std::size_t used = 0;
    n = std::stoull(spec, &used);
    if (used != spec.size()) throw std::invalid_argument(spec);
  } catch (const std::exception&) {
    throw InputError("unknown field '" + spec + "'");
  }
  if (is_prime(n)) return Field::prime(n);
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    unsigned k = 0;
    std::uint64_t m = n;
    while (m % p == 0) {
      m /= p;
      ++k;
    }
    if (m == 1 && k <= 3 && is_prime(p)) return prime_power(p, k);
    break;
  }
  throw InputError("field order " + spec + " is not a prime or a prime power p^k with k <= 3");
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Degenerations of 3-dimensional nilpotent associative algebras", "nildeg"};
  app.require_subcommand(1);

  bool json = false;
  auto* catalog = app.add_subcommand("catalog", "list the classified algebras");
  catalog->add_flag("--json", json, "JSON output");

  std::string id_text;
  std::string field_spec = "Q";
  auto* invariants = app.add_subcommand("invariants", "invariant profile of a catalogue algebra");
  invariants->add_option("id", id_text, "algebra id, e.g. c3 or a(1/2)")->required();
  invariants->add_option("--field", field_spec, "field: Q, p, p^k or JSON descriptor");

  std::string file, matrix;
  auto* act_cmd = app.add_subcommand("act", "apply a change of basis to a structure vector");
  act_cmd->add_option("file", file, "structure vector JSON")->required();
  act_cmd->add_option("matrix", matrix, "matrix JSON (file or inline), columns are the new basis")->required();

  bool exact = false;
  auto* verify = app.add_subcommand("verify-witness", "check a curve witness file");
  verify->add_option("file", file, "witness JSON")->required();
  verify->add_flag("--exact", exact, "require the limit to equal the target exactly");

  std::uint64_t characteristic = 0;
  auto* identities = app.add_subcommand("identities", "verify the polynomial identities behind the lemmas");
  identities->add_option("--char", characteristic, "0 or a prime")->required();
  identities->add_flag("--json", json, "JSON output");

  std::string format = "dot";
  auto* hasse = app.add_subcommand("hasse", "emit the reduced degeneration diagram");
  hasse->add_option("--char", characteristic, "0 or a prime")->required();
  hasse->add_option("--format", format, "dot or json");

  std::string src_text, dst_text;
  SearchOptions opt;
  opt.seed = 0;
  bool seed_given = false, serial = false, lift = false;
  std::string search_field = "5";
  auto* search = app.add_subcommand("search-witness", "random search for a curve witness");
  search->add_option("src", src_text)->required();
  search->add_option("dst", dst_text)->required();
  search->add_option("--budget", opt.budget, "number of candidates");
  search->add_option("--seed", opt.seed, "seed (default from DEGEN_SEED or 1)")->each([&](const std::string&) {
    seed_given = true;
  });
  search->add_option("--degree", opt.degree, "entry degree bound");
  search->add_option("--field", search_field, "finite field: p or p^k");
  search->add_flag("--serial", serial, "single-threaded reference loop");
  search->add_flag("--lift", lift, "lift a GF(p) hit to Q and re-verify");

  auto* ident = app.add_subcommand("identify", "normal form of a structure vector");
  ident->add_option("file", file, "structure vector JSON")->required();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (catalog->parsed()) return cmd_catalog(out, json);
    if (invariants->parsed()) {
      Field f = parse_field_spec(field_spec);
      AlgebraId id = AlgebraId::parse(id_text, f);
      nlohmann::json j = invariant_profile(structure_of(id, f)).to_json();
      j["id"] = id.to_string();
      out << j.dump(2) << "\n";
      return 0;
    }
    if (act_cmd->parsed()) {
      StructureVector v = StructureVector::from_json(read_json(file));
      Matrix g = parse_matrix(v.field(), rows_of(read_json(matrix)));
      out << act(v, g).to_json().dump(2) << "\n";
      return 0;
    }
    if (verify->parsed()) {
      std::optional<WitnessFile> parsed;
      try {
        parsed = WitnessFile::from_json(read_json(file));
      } catch (const InputError&) {
        throw;
      } catch (const Error& e) {
        throw InputError(e.what());
      }
      const WitnessFile& w = *parsed;
      WitnessReport r = verify_witness(structure_of(w.src, w.base), w.curve, w.dst, !exact);
      nlohmann::json j = r.to_json();
      j["src"] = w.src.to_string();
      j["dst"] = w.dst.to_string();
      out << j.dump(2) << "\n";
      if (!r.verified) err << "witness rejected: " << r.detail << "\n";
      return r.verified ? 0 : 1;
    }
    if (identities->parsed()) {
      field_for_flag(characteristic);
      return cmd_identities(out, characteristic, json);
    }
    if (hasse->parsed()) return cmd_hasse(out, err, characteristic, format);
    if (search->parsed()) {
      if (!seed_given) opt.seed = default_seed();
      if (opt.budget == 0) throw InputError("--budget must be positive");
      return cmd_search(out, src_text, dst_text, search_field, opt, serial, lift);
    }
    if (ident->parsed()) {
      StructureVector v = StructureVector::from_json(read_json(file));
      try {
        auto [r, f] = identify_extending(v);
        nlohmann::json j{{"id", r.id.to_string()}, {"witness", render_matrix(r.witness)}, {"field", f.describe()}};
        out << j.dump(2) << "\n";
        return 0;
      } catch (const NotNilpotent& e) {
        err << e.what() << "\n";
        return 1;
      }
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    err << "error: malformed input: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace nildeg
