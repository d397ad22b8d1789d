#include <zerosum/cli.hpp>

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

using namespace zerosum;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "zerosum");
  std::vector<const char *> argv;
  for (const auto &a : args)
    argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

Json parse_one(const std::string &text) {
  auto j = Json::parse(text, nullptr, false);
  EXPECT_FALSE(j.is_discarded()) << text;
  return j;
}

std::vector<Json> parse_lines(const std::string &text) {
  std::vector<Json> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line))
    if (!line.empty())
      out.push_back(parse_one(line));
  return out;
}

std::filesystem::path temp_path(const std::string &name) {
  auto p = std::filesystem::temp_directory_path() /
           ("zerosum_test_" + std::to_string(::getpid()) + "_" + name);
  std::filesystem::remove(p);
  return p;
}

} // namespace

TEST(Cli, BetaSepSmallGroup) {
  auto r = invoke({"beta-sep", "2,2"});
  EXPECT_EQ(r.code, 0) << r.err;
  auto j = parse_one(r.out);
  EXPECT_EQ(j["value"], 3);
  EXPECT_EQ(j["complete"], true);
  EXPECT_EQ(j["witness"]["length"], 3);
  EXPECT_TRUE(j.contains("supports_examined"));
  EXPECT_TRUE(j["meta"].contains("elapsed_ms"));
}

TEST(Cli, VerifyPasses) {
  auto r = invoke({"verify", "3,3"});
  EXPECT_EQ(r.code, 0) << r.err;
  auto j = parse_one(r.out);
  EXPECT_EQ(j["status"], "PASS");
  EXPECT_EQ(j["computed_beta_sep"], 4);
  EXPECT_EQ(j["formula_beta_sep"], 4);
  EXPECT_EQ(j["computed_davenport"], 5);
  EXPECT_EQ(j["d_star"], 5);
}

TEST(Cli, VerifyCyclicHasNoFormula) {
  auto r = invoke({"verify", "4"});
  EXPECT_EQ(r.code, 0) << r.err;
  auto j = parse_one(r.out);
  EXPECT_EQ(j["status"], "PASS");
  EXPECT_EQ(j["computed_beta_sep"], 4);
  EXPECT_EQ(j["formula_source"], "n/a, rank 1");
}

TEST(Cli, InvalidChainIsUsageError) {
  auto r = invoke({"dstar", "1,4"});
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(r.out.empty());
  EXPECT_FALSE(r.err.empty());
  EXPECT_EQ(invoke({"dstar", "2,3"}).code, 2);
  EXPECT_EQ(invoke({"dstar", "two"}).code, 2);
  EXPECT_EQ(invoke({}).code, 2);
  EXPECT_EQ(invoke({"frobnicate", "2"}).code, 2);
}

TEST(Cli, ConfigValidation) {
  EXPECT_EQ(invoke({"beta-sep", "2,2", "--threads", "0"}).code, 2);
  EXPECT_EQ(invoke({"beta-sep", "2,2", "--budget", "10"}).code, 2);
  EXPECT_EQ(invoke({"beta-sep", "2,2", "--format", "xml"}).code, 2);
  EXPECT_EQ(invoke({"beta-sep", "2,2", "--max-support-size", "2"}).code, 2);
  auto r = invoke({"beta-sep", "2,2", "--max-support-size", "4"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.err.find("experimental"), std::string::npos);
  EXPECT_EQ(parse_one(r.out)["value"], 3);
}

TEST(Cli, DStarAndBounds) {
  auto d = invoke({"dstar", "2,2,2"});
  EXPECT_EQ(d.code, 0);
  EXPECT_EQ(parse_one(d.out)["d_star"], 4);

  auto b = invoke({"bounds", "2,2,4,8"});
  EXPECT_EQ(b.code, 0);
  auto j = parse_one(b.out);
  EXPECT_EQ(j["d_star"], 1 + 1 + 3 + 7 + 1);
  EXPECT_EQ(j["theorem"]["kind"], "upper_bound_only");
  EXPECT_EQ(j["theorem"]["value"], 13);
  EXPECT_EQ(j["corollary"], 13);
}

TEST(Cli, DavenportAndAtoms) {
  auto d = invoke({"davenport", "3,3"});
  EXPECT_EQ(d.code, 0);
  EXPECT_EQ(parse_one(d.out)["davenport"], 5);

  auto s = invoke({"davenport", "4", "--support", "(1) (2)"});
  EXPECT_EQ(s.code, 0);
  EXPECT_EQ(parse_one(s.out)["davenport"], 4);

  auto a = invoke({"atoms", "4", "--support", "(1) (2)", "--max-len", "4"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(parse_one(a.out)["count"], 3);

  EXPECT_EQ(invoke({"atoms", "4", "--support", "(0)"}).code, 2);
  EXPECT_EQ(invoke({"atoms", "4", "--support", "(1"}).code, 2);
}

TEST(Cli, BudgetExhaustionIsIncomplete) {
  auto r = invoke({"beta-sep", "4,8", "--budget", "10000"});
  EXPECT_EQ(r.code, 3);
  auto j = parse_one(r.out);
  EXPECT_EQ(j["complete"], false);

  EXPECT_EQ(invoke({"davenport", "4,8", "--budget", "10000"}).code, 3);
}

TEST(Cli, TableFormat) {
  auto r = invoke({"dstar", "2,4", "--format", "table"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("d_star\t5"), std::string::npos) << r.out;
}

TEST(Cli, EmptyCorpus) {
  auto manifest = temp_path("empty.manifest");
  std::ofstream(manifest) << "# nothing here\n\n";
  auto r = invoke({"corpus", manifest.string()});
  EXPECT_EQ(r.code, 0) << r.err;
  auto lines = parse_lines(r.out);
  ASSERT_EQ(lines.size(), 1u);
  EXPECT_EQ(lines[0]["summary"]["total"], 0);
  std::filesystem::remove(manifest);
}

TEST(Cli, CorpusServesRepeatsFromCache) {
  auto manifest = temp_path("twice.manifest");
  auto cache = temp_path("cache.jsonl");
  std::ofstream(manifest) << "2,2\n2,2\n";
  auto r = invoke({"corpus", manifest.string(), "--cache", cache.string()});
  EXPECT_EQ(r.code, 0) << r.err;
  auto lines = parse_lines(r.out);
  ASSERT_EQ(lines.size(), 3u);
  EXPECT_EQ(lines[0]["meta"]["cached"], false);
  EXPECT_EQ(lines[1]["meta"]["cached"], true);
  EXPECT_EQ(without_meta(lines[0]).dump(), without_meta(lines[1]).dump());
  EXPECT_EQ(lines[2]["summary"]["cached"], 1);
  EXPECT_EQ(lines[2]["summary"]["pass"], 2);

  // a second process reads the persisted cache
  auto again = invoke({"corpus", manifest.string(), "--cache", cache.string()});
  auto lines2 = parse_lines(again.out);
  ASSERT_EQ(lines2.size(), 3u);
  EXPECT_EQ(lines2[0]["meta"]["cached"], true);
  EXPECT_EQ(without_meta(lines2[0]).dump(), without_meta(lines[0]).dump());
  std::filesystem::remove(manifest);
  std::filesystem::remove(cache);
}

TEST(Cli, CorpusRecordsBadEntriesAndContinues) {
  auto manifest = temp_path("bad.manifest");
  std::ofstream(manifest) << "2,3\n2\n";
  auto r = invoke({"corpus", manifest.string()});
  EXPECT_EQ(r.code, 1);
  auto lines = parse_lines(r.out);
  ASSERT_EQ(lines.size(), 3u);
  EXPECT_EQ(lines[0]["status"], "ERROR");
  EXPECT_EQ(lines[1]["status"], "PASS");
  std::filesystem::remove(manifest);
}

TEST(Cli, MissingManifestIsUsageError) {
  EXPECT_EQ(invoke({"corpus", "/nonexistent/zerosum.manifest"}).code, 2);
}

TEST(Cli, DataStreamIsAlwaysJson) {
  for (auto args : std::vector<std::vector<std::string>>{
           {"dstar", "2,2"}, {"bounds", "6,6,6,6"}, {"beta-sep", "3,3", "--budget", "10000"},
           {"dstar", "1,4"}, {"verify", "2,2,2"}, {"atoms", "2,2"}}) {
    auto r = invoke(args);
    if (r.out.empty())
      continue;
    EXPECT_FALSE(Json::parse(r.out, nullptr, false).is_discarded()) << r.out;
  }
}
