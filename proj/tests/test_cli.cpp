#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "nildeg/cli.hpp"
#include "nildeg/structspace.hpp"

using namespace nildeg;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& body) {
  auto path = std::filesystem::temp_directory_path() / ("nildeg_test_" + name);
  std::ofstream(path) << body;
  return path.string();
}

std::string golden(const std::string& name) {
  std::ifstream in(std::string(NILDEG_GOLDEN_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cli, HasseCharZeroGolden) {
  Outcome r = run({"hasse", "--char", "0", "--format", "dot"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, golden("hasse_char0.dot"));
}

TEST(Cli, HasseCharTwoGolden) {
  Outcome r = run({"hasse", "--char", "2", "--format", "json"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, golden("hasse_char2.json"));
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["edges"].size(), 6u);
}

TEST(Cli, HasseRejectsBadInput) {
  EXPECT_EQ(run({"hasse", "--char", "4"}).code, 2);
  EXPECT_EQ(run({"hasse", "--char", "0", "--format", "svg"}).code, 2);
}

TEST(Cli, Identities) {
  Outcome r = run({"identities", "--char", "2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("all identities hold"), std::string::npos);
  Outcome j = run({"identities", "--char", "5", "--json"});
  EXPECT_EQ(j.code, 0);
  EXPECT_NO_THROW(nlohmann::json::parse(j.out));
}

TEST(Cli, Catalog) {
  Outcome r = run({"catalog"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 6);
  auto j = nlohmann::json::parse(run({"catalog", "--json"}).out);
  EXPECT_EQ(j.size(), 6u);
}

TEST(Cli, Invariants) {
  Outcome r = run({"invariants", "c5"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["nilpotency_class"], 3);
  EXPECT_EQ(run({"invariants", "a(1/2)", "--field", "7"}).code, 0);
  EXPECT_EQ(run({"invariants", "zz"}).code, 2);
}

TEST(Cli, VerifyWitnessAccepts) {
  std::string f = temp_file("ok.json", R"({"src":"c5","dst":"c3","char":0,"matrix":[["t",0,0],["t",1,0],[0,0,"t"]]})");
  Outcome r = run({"verify-witness", f});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["verified"], true);
}

TEST(Cli, VerifyWitnessExactMismatch) {
  std::string f = temp_file("exact.json", R"({"src":"c5","dst":"c3","char":0,"matrix":[["t",0,0],["t",1,0],[0,0,"t"]]})");
  Outcome r = run({"verify-witness", f, "--exact"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("witness rejected"), std::string::npos);
}

TEST(Cli, VerifyWitnessWrongTarget) {
  std::string f = temp_file("wrong.json", R"({"src":"c3","dst":"l1","char":0,"matrix":[[1,0,0],[0,"t",0],[0,0,1]]})");
  EXPECT_EQ(run({"verify-witness", f}).code, 1);
}

TEST(Cli, VerifyWitnessMalformed) {
  EXPECT_EQ(run({"verify-witness", temp_file("bad1.json", "{not json")}).code, 2);
  EXPECT_EQ(run({"verify-witness", temp_file("bad2.json", R"({"src":"c5"})")}).code, 2);
  EXPECT_EQ(run({"verify-witness", temp_file("bad3.json", R"({"src":"c5","dst":"c3","matrix":[[0,0,0],[0,1,0],[0,0,1]]})")})
                .code,
            2);
  EXPECT_EQ(run({"verify-witness", "/nonexistent/witness.json"}).code, 2);
}

TEST(Cli, UnknownSubcommand) {
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
}

TEST(Cli, SearchDeterministic) {
  std::vector<std::string> args{"search-witness", "c5", "c3", "--budget", "5000", "--seed", "3", "--field", "7"};
  Outcome a = run(args), b = run(args);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  auto j = nlohmann::json::parse(a.out);
  EXPECT_TRUE(j["found"].get<bool>());
  args.push_back("--serial");
  EXPECT_EQ(run(args).out, a.out);
}

TEST(Cli, SearchSeedFromEnvironment) {
  std::vector<std::string> base{"search-witness", "c3", "c1", "--budget", "2000", "--field", "5"};
  setenv("DEGEN_SEED", "9", 1);
  Outcome env = run(base);
  unsetenv("DEGEN_SEED");
  std::vector<std::string> explicit_seed = base;
  explicit_seed.insert(explicit_seed.end(), {"--seed", "9"});
  Outcome flag = run(explicit_seed);
  EXPECT_EQ(env.out, flag.out);
  EXPECT_EQ(nlohmann::json::parse(env.out)["seed"], 9);
}

TEST(Cli, SearchLift) {
  Outcome r = run({"search-witness", "a3(2)", "l1", "--field", "7", "--lift"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  ASSERT_TRUE(j["found"].get<bool>());
  EXPECT_EQ(j["lifted"]["report"]["verified"], true);
}

TEST(Cli, SearchBadField) {
  EXPECT_EQ(run({"search-witness", "c3", "c1", "--field", "6"}).code, 2);
  EXPECT_EQ(run({"search-witness", "c3", "c1", "--budget", "0"}).code, 2);
}

TEST(Cli, ActAndIdentify) {
  Field q = Field::rationals();
  StructureVector c3 = from_relations(q, {{2, 2, basis_column(q, 1)}, {3, 3, basis_column(q, 1)}});
  std::string vec = temp_file("c3.json", c3.to_json().dump());
  Outcome a = run({"act", vec, R"([[1,0,0],[0,1,1],[0,1,-1]])"});
  ASSERT_EQ(a.code, 0) << a.err;
  std::string moved = temp_file("moved.json", a.out);
  Outcome id = run({"identify", moved});
  ASSERT_EQ(id.code, 0) << id.err;
  EXPECT_EQ(nlohmann::json::parse(id.out)["id"], "c3");
}

TEST(Cli, IdentifyExtendsField) {
  // 231+321 is c3 only after adjoining sqrt(-1)
  Field q = Field::rationals();
  StructureVector v = from_relations(q, {{2, 3, basis_column(q, 1)}, {3, 2, basis_column(q, 1)}});
  Outcome r = run({"identify", temp_file("chat3.json", v.to_json().dump())});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["id"], "c3");
}

TEST(Cli, IdentifyRejectsNonNilpotent) {
  std::string f = temp_file("e11.json", R"({"entries":[{"i":1,"j":1,"k":1,"c":"1"}]})");
  EXPECT_EQ(run({"identify", f}).code, 1);
}

TEST(Cli, FieldSpecs) {
  EXPECT_EQ(parse_field_spec("Q").characteristic(), 0u);
  EXPECT_EQ(*parse_field_spec("9").order(), 9);
  EXPECT_EQ(*parse_field_spec("8").order(), 8);
  EXPECT_EQ(*parse_field_spec("13").order(), 13);
  EXPECT_ANY_THROW(parse_field_spec("12"));
  EXPECT_ANY_THROW(parse_field_spec("x"));
}
