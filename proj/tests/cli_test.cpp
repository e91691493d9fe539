#include "causalcheck/cli.hpp"

#include <gtest/gtest.h>

#include <json.hpp>
#include <sstream>

#include "causalcheck/history.hpp"
#include "support/samples.hpp"

namespace causalcheck::cli {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args, const std::string& input = "") {
  args.insert(args.begin(), "causalcheck");
  std::istringstream in(input);
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string sample_b() { return serialize_history(testing::samples()[1].history); }

std::size_t lines(const std::string& text) {
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

TEST(Cli, CheckSampleBAgainstCcv) {
  const Result r = invoke({"check", "--model", "ccv", "--json"}, sample_b());
  EXPECT_EQ(r.code, kViolation);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["pattern"], "CyclicCF");
  EXPECT_EQ(j["model"], "CCv");
}

TEST(Cli, CheckSampleBAgainstCmAllEngines) {
  for (const char* engine : {"native", "datalog", "cross"}) {
    EXPECT_EQ(invoke({"check", "--model", "cm", "--engine", engine}, sample_b()).code, kConforming);
  }
}

TEST(Cli, CheckEmptyInputConforms) {
  EXPECT_EQ(invoke({"check", "--model", "cc"}, "").code, kConforming);
}

TEST(Cli, MalformedInputIsUsageError) {
  const Result r = invoke({"check", "--model", "cc"}, "{not json\n");
  EXPECT_EQ(r.code, kUsageError);
  EXPECT_NE(r.err.find("line 1"), std::string::npos);
}

TEST(Cli, BadFlagsAreUsageErrors) {
  EXPECT_EQ(invoke({"check", "--model", "sc"}, sample_b()).code, kUsageError);
  EXPECT_EQ(invoke({"check", "--engine", "z3"}, sample_b()).code, kUsageError);
  EXPECT_EQ(invoke({"check", "--frobnicate"}, sample_b()).code, kUsageError);
  EXPECT_EQ(invoke({}).code, kUsageError);
  EXPECT_EQ(invoke({"generate", "--events", "3"}).code, kUsageError);
  EXPECT_EQ(invoke({"mutate"}, sample_b()).code, kUsageError);
  EXPECT_EQ(invoke({"check", "--input", "/nonexistent/file"}).code, kUsageError);
}

TEST(Cli, GenerateCountsOperations) {
  const Result r = invoke({"generate", "--clients", "4", "--transactions", "25", "--variables", "5",
                           "--seed", "7"});
  EXPECT_EQ(r.code, kConforming);
  EXPECT_EQ(lines(r.out), 100u);
  EXPECT_FALSE(parse_history(r.out).is_executed());
}

TEST(Cli, GenerateExecuteCheckPipeline) {
  const Result gen = invoke({"generate", "--clients", "3", "--transactions", "10", "--seed", "4"});
  const Result exec = invoke({"execute", "--seed", "4"}, gen.out);
  ASSERT_EQ(exec.code, kConforming);
  EXPECT_TRUE(parse_history(exec.out).is_executed());
  for (const char* model : {"cc", "ccv", "cm1", "cm2"}) {
    EXPECT_EQ(invoke({"check", "--model", model, "--engine", "cross"}, exec.out).code, kConforming);
  }
  const Result mut = invoke({"mutate", "--pattern", "ThinAirRead", "--seed", "1"}, exec.out);
  ASSERT_EQ(mut.code, kConforming);
  const Result check = invoke({"check", "--model", "cc", "--json"}, mut.out);
  EXPECT_EQ(check.code, kViolation);
  EXPECT_EQ(nlohmann::json::parse(check.out)["pattern"], "ThinAirRead");
}

TEST(Cli, UnknownPatternIsUsageError) {
  EXPECT_EQ(invoke({"mutate", "--pattern", "Nope"}, sample_b()).code, kUsageError);
}

TEST(Cli, BenchPrintsOneRowPerSize) {
  const Result r = invoke({"bench", "--ops-min", "10", "--ops-max", "30", "--step", "10",
                           "--processes", "2", "--runs", "2"});
  EXPECT_EQ(r.code, kConforming);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "ops,CC,CCv,CM1,CM2");
  EXPECT_EQ(lines(r.out), 4u);
  const Result single = invoke({"bench", "--ops-min", "10", "--ops-max", "30", "--step", "100",
                                "--processes", "2", "--runs", "1"});
  EXPECT_EQ(lines(single.out), 2u);
}

TEST(Cli, BenchCm2FasterThanCm1At600) {
  const Result r = invoke({"bench", "--ops-min", "600", "--ops-max", "600", "--processes", "4",
                           "--runs", "5"});
  ASSERT_EQ(r.code, kConforming);
  std::istringstream csv(r.out.substr(r.out.find('\n') + 1));
  std::vector<double> cols;
  for (std::string cell; std::getline(csv, cell, ',');) cols.push_back(std::stod(cell));
  ASSERT_EQ(cols.size(), 5u);
  EXPECT_LT(cols[4], cols[3]);
}

TEST(Cli, DumpDatalogCc) {
  const Result r = invoke({"dump-datalog", "--model", "cc"}, sample_b());
  EXPECT_EQ(r.code, kConforming);
  EXPECT_NE(r.out.find(":- co(X,X)."), std::string::npos);
  EXPECT_NE(r.out.find("sv(\"w(x,1,id0)\",\"r(x,2,id1)\")."), std::string::npos);
}

TEST(Cli, DumpDatalogCm2AnchorsOnlyPoMaximal) {
  const Result r = invoke({"dump-datalog", "--model", "cm2", "--fidelity", "listing"}, sample_b());
  EXPECT_EQ(r.code, kConforming);
  EXPECT_NE(r.out.find("hb(X,\"r(x,1,id3)\",\"r(x,1,id3)\")"), std::string::npos);
  EXPECT_NE(r.out.find("hb(X,\"r(x,2,id1)\",\"r(x,2,id1)\")"), std::string::npos);
  EXPECT_EQ(r.out.find("hb(X,\"w(x,1,id0)\""), std::string::npos);
  EXPECT_EQ(invoke({"dump-datalog", "--fidelity", "fast"}, sample_b()).code, kUsageError);
}

TEST(Cli, DumpDatalogEmptyHistoryIsRulesOnly) {
  const Result r = invoke({"dump-datalog", "--model", "cc"}, "");
  EXPECT_EQ(r.code, kConforming);
  EXPECT_NE(r.out.find("co(X,Y) :- po(X,Y)."), std::string::npos);
  std::istringstream text(r.out);
  for (std::string line; std::getline(text, line);) {
    if (!line.empty()) EXPECT_NE(line.find(":-"), std::string::npos) << line;
  }
}

TEST(Cli, JsonOutputIsStableAcrossRuns) {
  auto strip = [](std::string s) {
    auto j = nlohmann::json::parse(s);
    j.erase("elapsed_ms");
    return j.dump();
  };
  const std::string a = invoke({"check", "--model", "cm1", "--json"}, sample_b()).out;
  const std::string b = invoke({"check", "--model", "cm1", "--json"}, sample_b()).out;
  EXPECT_EQ(strip(a), strip(b));
}

TEST(Cli, HelpExitsZero) {
  EXPECT_EQ(invoke({"--help"}).code, kConforming);
}

}  // namespace
}  // namespace causalcheck::cli
