#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "ramify/app.hpp"

namespace fs = std::filesystem;
using ramify::Json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = ramify::app::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string &name) {
  auto p = fs::temp_directory_path() / ("ramify-test-" + name + "-" + std::to_string(::getpid()));
  fs::remove_all(p);
  return p;
}

} // namespace

TEST(Cli, Count) {
  const auto r = run({"count", "--k", "3", "--l", "5"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "10\n");
  EXPECT_EQ(run({"count", "--k", "4", "--l", "8"}).out, "19448\n");
}

TEST(Cli, CountRefusesRankTwo) {
  const auto r = run({"count", "--k", "2", "--l", "5"});
  EXPECT_EQ(r.code, 1);
  EXPECT_TRUE(r.out.empty());
  EXPECT_NE(r.err.find("k >= 3"), std::string::npos);
}

TEST(Cli, ParseErrorsExitOne) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"count", "--k", "3"}).code, 1);
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  EXPECT_EQ(run({"census", "--k", "3", "--r1", "6", "--r2", "6", "--method", "magic"}).code, 1);
  EXPECT_EQ(run({"bounds", "--nu", "1", "--alpha", "0.5", "--k-min", "3", "--k-max", "4"}).code, 1);
}

TEST(Cli, CensusRankTwo) {
  const auto r = run({"census", "--k", "2", "--r1", "6", "--r2", "6"});
  ASSERT_EQ(r.code, 0);
  const auto j = Json::parse(r.out);
  EXPECT_EQ(j["class_count"], "0");
  EXPECT_EQ(j["tau1"], "(2^6)");
}

TEST(Cli, CensusRankThree) {
  const auto r = run({"census", "--k", "3", "--r1", "6", "--r2", "6", "--method", "key"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(Json::parse(r.out)["class_count"], "1");
  const auto o = run({"census", "--k", "3", "--r1", "6", "--r2", "8", "--ordered-pairs"});
  ASSERT_EQ(o.code, 0);
  EXPECT_EQ(Json::parse(o.out)["unordered_pair"], false);
  EXPECT_EQ(Json::parse(o.out)["class_count"], "3");
}

TEST(Cli, CensusBudgetRefusalAndOverrun) {
  EXPECT_EQ(run({"census", "--k", "4", "--r1", "8", "--r2", "8", "--budget-nodes", "10"}).code, 1);
  const auto dir = scratch("budget");
  const auto r = run({"census", "--k", "3", "--r1", "8", "--r2", "8", "--budget-seconds", "0", "--cache",
                      dir.string()});
  EXPECT_EQ(r.code, 2);
  // The partial record is stored but never served as a hit.
  ASSERT_EQ(std::distance(fs::directory_iterator(dir), fs::directory_iterator{}), 1);
  const auto again = run({"census", "--k", "3", "--r1", "8", "--r2", "8", "--budget-seconds", "0",
                          "--cache", dir.string()});
  EXPECT_EQ(again.code, 2);
  fs::remove_all(dir);
}

TEST(Cli, ConstructIsDeterministicAndValid) {
  const auto a = run({"construct", "--k", "3", "--l", "5"});
  const auto b = run({"construct", "--k", "3", "--l", "5"});
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const auto j = Json::parse(a.out);
  ASSERT_EQ(j.size(), 10u);
  for (const auto &s : j) {
    const auto parsed = ramify::structure_from_json(s);
    EXPECT_EQ(parsed.invariants().chi, 32);
  }
  EXPECT_EQ(run({"construct", "--k", "3", "--l", "5", "--format", "csv"}).code, 1);
}

TEST(Cli, CacheRoundTripIsByteIdentical) {
  const auto dir = scratch("cache");
  const auto fresh = run({"construct", "--k", "3", "--l", "5"});
  const auto store = run({"construct", "--k", "3", "--l", "5", "--cache", dir.string()});
  const auto hit = run({"construct", "--k", "3", "--l", "5", "--cache", dir.string()});
  EXPECT_EQ(store.out, fresh.out);
  EXPECT_EQ(hit.out, fresh.out);
  EXPECT_NE(hit.err.find("cache hit"), std::string::npos);

  const auto c1 = run({"census", "--k", "3", "--r1", "5", "--r2", "6", "--cache", dir.string()});
  const auto c2 = run({"census", "--k", "3", "--r1", "5", "--r2", "6", "--cache", dir.string()});
  EXPECT_EQ(c1.out, c2.out);
  EXPECT_EQ(c2.out, run({"census", "--k", "3", "--r1", "5", "--r2", "6"}).out);
  fs::remove_all(dir);
}

TEST(Cli, CacheRejectsTamperedFingerprint) {
  const auto dir = scratch("tamper");
  run({"construct", "--k", "3", "--l", "5", "--cache", dir.string()});
  auto file = fs::directory_iterator(dir)->path();
  {
    std::ifstream in(file);
    auto j = Json::parse(in);
    j["version"] = "0.0.0";
    j["payload"] = "bogus";
    std::ofstream(file) << j.dump();
  }
  const auto r = run({"construct", "--k", "3", "--l", "5", "--cache", dir.string()});
  EXPECT_EQ(r.out, run({"construct", "--k", "3", "--l", "5"}).out);
  fs::remove_all(dir);
}

TEST(Cli, OutFile) {
  const auto dir = scratch("out");
  fs::create_directories(dir);
  const auto path = (dir / "fam.json").string();
  const auto r = run({"construct", "--k", "3", "--l", "5", "--out", path});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), run({"construct", "--k", "3", "--l", "5"}).out);
  fs::remove_all(dir);
}

TEST(Cli, VerifyFamily) {
  const auto r = run({"verify-family", "--k", "3", "--l", "5"});
  ASSERT_EQ(r.code, 0);
  const auto j = Json::parse(r.out);
  EXPECT_EQ(j["distinct_keys"], "10");
  EXPECT_EQ(j["family_count"], "10");
  EXPECT_EQ(j["all_distinct"], true);
}

TEST(Cli, BoundsCsvAndJson) {
  const auto csv = run({"bounds", "--nu", "1", "--k-min", "3", "--k-max", "6", "--format", "csv"});
  ASSERT_EQ(csv.code, 0);
  EXPECT_EQ(csv.out.rfind("k,l,log2_h,", 0), 0u);
  EXPECT_NE(csv.out.find("\n3,9,"), std::string::npos);
  const auto json = run({"bounds", "--nu", "1", "--alpha", "2/5", "--k-min", "3", "--k-max", "6"});
  ASSERT_EQ(json.code, 0);
  const auto j = Json::parse(json.out);
  ASSERT_EQ(j.size(), 4u);
  EXPECT_EQ(j[0]["k"], 3);
  EXPECT_EQ(j[0]["euler"], "2048");
  EXPECT_EQ(j[2]["k_star"], true);
}

TEST(Cli, VerifySuites) {
  const auto r = run({"verify", "--suite", "all", "--seed", "7"});
  EXPECT_EQ(r.code, 0);
  for (const auto &name : ramify::verify::suite_names())
    EXPECT_NE(r.out.find(name + ": "), std::string::npos);
  EXPECT_EQ(r.out, run({"verify", "--suite", "all", "--seed", "7"}).out);
  EXPECT_EQ(run({"verify", "--suite", "nope"}).code, 1);
}
