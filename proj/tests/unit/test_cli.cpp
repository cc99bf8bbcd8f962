#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

using namespace chorefair;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "chorefair");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::path(testing::TempDir()) / name;
  std::ofstream(path) << content;
  return path.string();
}

}  // namespace

TEST(Cli, SolveRejectsWrongClass) {
  const auto ternary = temp_file("ternary.json", serialize_instance(builtin("ternary-no-efxpo")));
  const auto r = run({"solve", "--input", ternary, "--algorithm", "additive"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("wrong class"), std::string::npos);
}

TEST(Cli, SolveCapFiveIsEfxButNotPo) {
  const auto cap5 = temp_file("cap5.json", serialize_instance(builtin("cancelable-cap5-n2")));
  const auto r = run({"solve", "--input", cap5, "--algorithm", "cancelable", "--verify"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.err.find("guarantee: EFX"), std::string::npos);
  EXPECT_NE(r.err.find("not PO"), std::string::npos);
  const auto x = parse_allocation(r.out);
  EXPECT_EQ(x[0].size(), 5);
}

TEST(Cli, SolveAdditiveAutoVerifies) {
  const auto add = temp_file("additive42.json", serialize_instance(generate(Family::binary_additive, 3, 9, 42)));
  const auto r = run({"solve", "--input", add, "--algorithm", "auto", "--verify", "--json"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.err.find("guarantee: EFX_AND_PO"), std::string::npos);
  const auto j = Json::parse(r.out);
  EXPECT_EQ(j["guarantee"], "EFX_AND_PO");
  EXPECT_EQ(j["verification"]["ok"], true);
  EXPECT_EQ(j["verification"]["pareto"]["po"], true);
}

TEST(Cli, SolveWritesOutputAndTrace) {
  const auto out = (std::filesystem::path(testing::TempDir()) / "x.json").string();
  const auto trace = (std::filesystem::path(testing::TempDir()) / "trace.jsonl").string();
  const auto r = run({"solve", "--builtin", "appendixA-submodular-4", "--output", out, "--trace", trace});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(parse_allocation(ss.str()).bundles.size(), 1U);
  EXPECT_TRUE(std::filesystem::exists(trace));
}

TEST(Cli, VerifySpecExamples) {
  const auto ternary = temp_file("ternary.json", serialize_instance(builtin("ternary-no-efxpo")));
  const auto bad = temp_file("bad.json", R"({"bundles":[[0,2],[1]],"unallocated":[]})");
  auto r = run({"verify", "--input", ternary, "--allocation", bad, "--criteria", "efx"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("agent 0 envies agent 1 after removing item 2"), std::string::npos);

  const auto empty = temp_file("empty.json", R"({"bundles":[[],[]],"unallocated":[0,1,2]})");
  r = run({"verify", "--input", ternary, "--allocation", empty, "--criteria", "ef"});
  EXPECT_EQ(r.code, 0);

  const auto cap5 = temp_file("cap5.json", serialize_instance(builtin("cancelable-cap5-n2")));
  const auto split = temp_file("split.json", R"({"bundles":[[0,1,2,3,4],[5,6,7,8,9]],"unallocated":[]})");
  r = run({"verify", "--input", cap5, "--allocation", split, "--criteria", "po"});
  EXPECT_EQ(r.code, 1);
  const auto j = Json::parse(r.out);
  EXPECT_EQ(j["dominating_allocation"]["bundles"][1].size(), 0U);
}

TEST(Cli, VerifyAlphaCriteria) {
  const auto inst = temp_file("c5m5.json", serialize_instance(Instance(
      5, std::vector<CostFunction>(2, CostFunction::cardinality(5, 5)), FunctionClass::cancelable)));
  const auto x = temp_file("c5x.json", R"({"bundles":[[0,2,4],[1,3]]})");
  EXPECT_EQ(run({"verify", "-i", inst, "-x", x, "-c", "alpha-ef:2/1,social-cost"}).code, 0);
  EXPECT_EQ(run({"verify", "-i", inst, "-x", x, "-c", "alpha-ef:4/3"}).code, 1);
  EXPECT_EQ(run({"verify", "-i", inst, "-x", x, "-c", "alpha-ef:1/2"}).code, 2);
  EXPECT_EQ(run({"verify", "-i", inst, "-x", x, "-c", "envy"}).code, 2);
}

TEST(Cli, VerifyRejectsInconsistentAllocation) {
  const auto ternary = temp_file("ternary.json", serialize_instance(builtin("ternary-no-efxpo")));
  const auto bad = temp_file("overlap.json", R"({"bundles":[[0,1],[1,2]]})");
  EXPECT_EQ(run({"verify", "-i", ternary, "-x", bad, "-c", "ef"}).code, 2);
}

TEST(Cli, CheckClass) {
  const auto r = run({"check-class", "--builtin", "appendixA-cap5-function"});
  EXPECT_EQ(r.code, 0);
  const auto j = Json::parse(r.out);
  EXPECT_EQ(j["agents"][0]["cancelable"], true);
  EXPECT_EQ(j["agents"][0]["additive"], false);
  const auto s = Json::parse(run({"check-class", "-b", "appendixA-submodular-4", "--samples", "500"}).out);
  EXPECT_EQ(s["agents"][0]["exhaustive"], false);
}

TEST(Cli, EnumerateEfxPo) {
  const auto dump = (std::filesystem::path(testing::TempDir()) / "cex.json").string();
  const auto r = run({"enumerate", "--builtin", "ternary-no-efxpo", "--report", "efx-po", "--jobs", "3",
                      "--dump-counterexample", dump});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(Json::parse(r.out)["exists"], false);
  EXPECT_TRUE(std::filesystem::exists(dump));
  EXPECT_EQ(run({"enumerate", "-b", "cancelable-cap5-n2", "--limit", "100"}).code, 2);
}

TEST(Cli, GenerateIsDeterministic) {
  const auto a = run({"generate", "--family", "table", "-n", "2", "-m", "4", "--seed", "3"});
  const auto b = run({"generate", "--family", "table", "-n", "2", "-m", "4", "--seed", "3"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(parse_instance(a.out), generate(Family::table, 2, 4, 3));
  EXPECT_EQ(run({"generate", "--family", "nope"}).code, 2);
}

TEST(Cli, Bench) {
  const auto r = run({"bench", "--sizes", "2x4..3x8", "--reps", "2", "--json"});
  EXPECT_EQ(r.code, 0);
  const auto j = Json::parse(r.out);
  EXPECT_EQ(j["rows"].size(), 4U);
  EXPECT_EQ(cli::parse_sizes("2x8..6x24").size(), 15U);
  EXPECT_THROW(cli::parse_sizes("2by8"), InvalidInput);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"solve"}).code, 2);
  EXPECT_EQ(run({"solve", "-b", "ternary-no-efxpo", "-a", "magic"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
  const auto broken = temp_file("broken.json", R"({"n":1,"m":1,"declared_class":"additive","agents":[{"type":"additive","costs":[3]}]})");
  const auto r = run({"solve", "-i", broken});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("/agents/0"), std::string::npos);
}
