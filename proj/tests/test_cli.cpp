#include <gtest/gtest.h>

#include <fstream>

#include "support.hpp"

using namespace dicontainer;
using cli::run;
using support::parse_doc;
using support::pattern_path;
using support::temp_path;

namespace {

std::string pat(const char* name) { return pattern_path(name); }

void write(const std::string& path, const std::string& text) { std::ofstream(path, std::ios::binary) << text; }

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST(Cli, ConditionAExample) {
  const auto o = run({"condition-a", "--pattern", pat("dk3.dg"), "--a", "2"});
  ASSERT_EQ(o.exit_code, 0) << o.diagnostic;
  const auto doc = parse_doc(o);
  EXPECT_EQ(doc["manifest"]["command"], "condition-a");
  EXPECT_EQ(doc["manifest"]["tool_version"], "0.1.0");
  EXPECT_FALSE(doc["results"]["verdict"].get<bool>());
  EXPECT_EQ(doc["results"]["witness"]["density"], "6/3 > 2/2");
  EXPECT_TRUE(run({"condition-a", "--pattern", pat("dk3.dg"), "--a", "4"}).exit_code == 0);
  EXPECT_TRUE(parse_doc(run({"condition-a", "--pattern", pat("c3.dg")}))["results"]["verdict"].get<bool>());
}

TEST(Cli, DensityReport) {
  const auto doc = parse_doc(run({"density", "--pattern", pat("dk3.dg")}));
  EXPECT_EQ(doc["results"]["m"], "5/1");
  EXPECT_TRUE(doc["results"]["m_excluded_two_vertex_subgraphs"].get<bool>());
  EXPECT_EQ(parse_doc(run({"density", "--pattern", pat("c3.dg")}))["results"]["c_of_h"], "55296");
  EXPECT_EQ(parse_doc(run({"density", "--pattern", pat("two_cycle.dg")}))["results"]["m"], "inf");
}

TEST(Cli, ExWritesWitnesses) {
  const auto dir = temp_path("");
  const auto o = run({"ex", "--pattern", pat("c3.dg"), "--n", "4", "--mode", "canonical", "--witness-dir", dir});
  ASSERT_EQ(o.exit_code, 0) << o.diagnostic;
  const auto doc = parse_doc(o);
  EXPECT_EQ(doc["results"]["value"], "8");
  EXPECT_TRUE(doc["checks"]["witnesses_h_free"].get<bool>());
  const auto first = slurp(dir + "/witness_0.dg");
  EXPECT_EQ(first, doc["results"]["witnesses"][0]["edges"].get<std::string>());
  EXPECT_FALSE(support::c3().occurs_in(parse_digraph(first)));
  // log weights come out as an approximation object
  const auto lg = parse_doc(run({"ex", "--pattern", pat("c3.dg"), "--n", "3", "--a", "log2(3)"}));
  EXPECT_TRUE(lg["results"]["value"].is_object());
}

TEST(Cli, CountRatioSupersat) {
  EXPECT_EQ(parse_doc(run({"count-free", "--pattern", pat("t3.dg"), "--n", "4"}))["results"]["count"], "921");
  const auto r = parse_doc(run({"ratio", "--pattern", pat("c3.dg"), "--n", "4", "--mode", "canonical"}));
  EXPECT_EQ(r["results"]["count"], "1699");
  EXPECT_EQ(r["results"]["ex2"], "8");
  const auto s = run({"supersat", "--pattern", pat("dk3.dg"), "--n", "4", "--k-max", "4"});
  ASSERT_EQ(s.exit_code, 0);
  const auto sd = parse_doc(s);
  EXPECT_EQ(sd["results"]["points"][0]["max_ea"], "10");
  EXPECT_EQ(sd["results"]["points"][4]["max_ea"], "12");
  EXPECT_TRUE(sd["checks"]["nondecreasing_in_k"].get<bool>());
}

TEST(Cli, HypergraphExport) {
  const auto file = temp_path("d3.txt");
  const auto o = run({"hypergraph", "--pattern", pat("c3.dg"), "--N", "3", "--export", file});
  ASSERT_EQ(o.exit_code, 0);
  EXPECT_EQ(slurp(file), "N=3 r=3 edges=2\n0 3 4\n1 2 5\n");
  EXPECT_EQ(parse_doc(o)["results"]["hyperedges"], 2);
}

TEST(Cli, CodegreeAndLemma) {
  const auto c = run({"codegree", "--pattern", pat("c3.dg"), "--N", "6"});
  ASSERT_EQ(c.exit_code, 0) << c.diagnostic;
  EXPECT_EQ(parse_doc(c)["results"]["codegree_sums"].size(), 2U);
  const auto l = run({"verify-lemma", "--pattern", pat("t3.dg"), "--N-range", "6..8", "--gamma", "1/2"});
  ASSERT_EQ(l.exit_code, 0);
  EXPECT_EQ(parse_doc(l)["results"]["rows"].size(), 3U);
  EXPECT_EQ(run({"verify-lemma", "--pattern", pat("dk3.dg"), "--N-range", "6"}).exit_code, 2);
  EXPECT_EQ(run({"verify-lemma", "--pattern", pat("dk3.dg"), "--N-range", "4", "--accept-excluded-two-cycles"}).exit_code,
            0);
  EXPECT_EQ(run({"codegree", "--pattern", pat("c3.dg"), "--N", "6", "--tau", "2"}).exit_code, 2);
  EXPECT_EQ(run({"codegree", "--pattern", pat("c3.dg"), "--N", "6", "--normalization", "median"}).exit_code, 1);
}

TEST(Cli, ContainersThenVerifyFamily) {
  const auto file = temp_path("fam4.txt");
  const auto o = run({"containers", "--pattern", pat("c3.dg"), "--N", "4", "--export", file});
  ASSERT_EQ(o.exit_code, 0) << o.diagnostic;
  const auto v = run({"verify-family", "--pattern", pat("c3.dg"), "--family", file});
  ASSERT_EQ(v.exit_code, 0) << v.diagnostic;
  EXPECT_EQ(parse_doc(v)["results"]["checked"], "1699");
  const auto s = run({"verify-family", "--pattern", pat("c3.dg"), "--family", file, "--mode", "sampled", "--samples", "300"});
  EXPECT_EQ(s.exit_code, 0);
  EXPECT_EQ(parse_doc(s)["results"]["checked"], "300");
}

TEST(Cli, TruncatedFamilyExitsThree) {
  const auto file = temp_path("fam_trunc.txt");
  ASSERT_EQ(run({"containers", "--pattern", pat("c3.dg"), "--N", "4", "--export", file}).exit_code, 0);
  auto fam = import_family(slurp(file));
  const auto f = fam.fingerprints.front().members(fam.universe_size);
  auto& c = fam.containers[fam.fingerprints.front().container];
  for (auto x = c.find_first(); x != UniverseSet::npos; x = c.find_next(x))
    if (!f.test(x)) {
      c.reset(x);
      break;
    }
  write(file, export_family(fam));
  const auto o = run({"verify-family", "--pattern", pat("c3.dg"), "--family", file});
  EXPECT_EQ(o.exit_code, 3);
  EXPECT_NE(o.diagnostic.find("witness"), std::string::npos);
  EXPECT_EQ(o.diagnostic.find('\n'), std::string::npos);
  EXPECT_TRUE(parse_doc(o)["results"]["witness"].is_string());
}

TEST(Cli, PipelineRefusals) {
  const auto a2 = run({"pipeline", "--pattern", pat("dk3.dg"), "--N", "4", "--a", "2"});
  EXPECT_EQ(a2.exit_code, 2);
  EXPECT_NE(a2.diagnostic.find("6/3"), std::string::npos);
  EXPECT_EQ(run({"pipeline", "--pattern", pat("dk3.dg"), "--N", "4", "--a", "4"}).exit_code, 2);
  const auto ok = run({"pipeline", "--pattern", pat("c3.dg"), "--N", "4"});
  ASSERT_EQ(ok.exit_code, 0) << ok.diagnostic;
  const auto doc = parse_doc(ok);
  EXPECT_TRUE(doc["checks"]["a_coverage"].get<bool>());
  EXPECT_EQ(doc["results"]["ex_a"], "8");
}

TEST(Cli, UsageErrorsExitOne) {
  EXPECT_EQ(run({}).exit_code, 1);
  EXPECT_EQ(run({"frobnicate"}).exit_code, 1);
  EXPECT_EQ(run({"density"}).exit_code, 1);
  EXPECT_EQ(run({"density", "--pattern", temp_path("missing.dg")}).exit_code, 1);
  EXPECT_EQ(run({"ex", "--pattern", pat("c3.dg")}).exit_code, 1);  // --n required
  EXPECT_EQ(run({"ex", "--pattern", pat("c3.dg"), "--n", "four"}).exit_code, 1);
  EXPECT_EQ(run({"ex", "--pattern", pat("c3.dg"), "--n", "3", "--mode", "smart"}).exit_code, 1);
  EXPECT_EQ(run({"verify-lemma", "--pattern", pat("c3.dg"), "--N-range", "a..b"}).exit_code, 1);
  const auto bad = temp_path("loop.dg");
  write(bad, "n=3\n0 1\n2 2\n");
  const auto o = run({"density", "--pattern", bad});
  EXPECT_EQ(o.exit_code, 1);
  EXPECT_NE(o.diagnostic.find("line 3"), std::string::npos);
  EXPECT_EQ(o.diagnostic.find('\n'), std::string::npos);
  write(bad, "garbage\n");
  EXPECT_EQ(run({"verify-family", "--pattern", pat("c3.dg"), "--family", bad}).exit_code, 1);
}

TEST(Cli, PreconditionAndBudgetErrorsExitTwo) {
  EXPECT_EQ(run({"ex", "--pattern", pat("c3.dg"), "--n", "6"}).exit_code, 2);
  EXPECT_EQ(run({"ex", "--pattern", pat("c3.dg"), "--n", "3", "--a", "1/2"}).exit_code, 2);
  EXPECT_EQ(run({"density", "--pattern", pat("c3.dg"), "--a", "1/2"}).exit_code, 2);
  EXPECT_EQ(run({"containers", "--pattern", pat("c3.dg"), "--N", "4", "--eps", "1/2"}).exit_code, 2);
  EXPECT_EQ(run({"hypergraph", "--pattern", pat("c3.dg"), "--N", "2"}).exit_code, 2);
  EXPECT_EQ(run({"containers", "--pattern", pat("two_cycle.dg"), "--N", "4"}).exit_code, 2);
  const auto single = temp_path("single.dg");
  write(single, "n=2\n0 1\n");
  EXPECT_EQ(run({"density", "--pattern", single}).exit_code, 2);
}

TEST(Cli, OutFileMatchesDocumentAndIsDeterministic) {
  const auto p1 = temp_path("out1.json"), p2 = temp_path("out2.json");
  const auto a = run({"containers", "--pattern", pat("t3.dg"), "--N", "4", "--out", p1});
  const auto b = run({"containers", "--pattern", pat("t3.dg"), "--N", "4", "--out", p2});
  ASSERT_EQ(a.exit_code, 0);
  EXPECT_EQ(slurp(p1), a.document);
  EXPECT_EQ(slurp(p1), slurp(p2));
  EXPECT_EQ(run({"ex", "--pattern", pat("c3.dg"), "--n", "3", "--out", temp_path("no/such/dir.json")}).exit_code, 1);
}

TEST(Cli, MalformedNumbersAreUsageErrors) {
  EXPECT_EQ(run({"condition-a", "--pattern", pat("c3.dg"), "--a", "two"}).exit_code, 1);
  EXPECT_EQ(run({"condition-a", "--pattern", pat("c3.dg"), "--a", "log2(x)"}).exit_code, 1);
  EXPECT_EQ(run({"containers", "--pattern", pat("c3.dg"), "--N", "4", "--eps", "0.1.2"}).exit_code, 1);
  EXPECT_EQ(run({"verify-lemma", "--pattern", pat("c3.dg"), "--N-range", "6", "--gamma", "log2(3)"}).exit_code, 1);
  EXPECT_EQ(run({"condition-a", "--pattern", pat("c3.dg"), "--a", "log2_3"}).exit_code, 0);
  EXPECT_EQ(run({"containers", "--pattern", pat("c3.dg"), "--N", "4", "--eps", "0.1"}).exit_code, 0);
}
