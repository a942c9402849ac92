#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "koszul/cli.hpp"

using namespace koszul;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path fresh_cache_dir(const std::string& name) {
  auto d = fs::temp_directory_path() / ("koszul-test-" + name + "-" + std::to_string(::getpid()));
  fs::remove_all(d);
  return d;
}

}  // namespace

TEST(Cli, KlA2IsAllOnes) {
  auto dir = fresh_cache_dir("kl");
  auto r = run_cli({"kl", "--type", "a2.json", "--max-length", "3", "--cache-dir", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["command"], "kl");
  // every pair u <= w in A2 (19 comparable pairs up to length 3)
  EXPECT_EQ(j["rows"].size(), 19u);
  for (auto& row : j["rows"]) EXPECT_EQ(row[2], "1");
  fs::remove_all(dir);
}

TEST(Cli, MissingGcmFileIsUsageError) {
  auto r = run_cli({"kl", "--type", "/nonexistent/x.json"});
  EXPECT_EQ(r.code, 2);
  auto j = nlohmann::json::parse(r.err);
  EXPECT_EQ(j["error"]["kind"], "invalid_input");
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run_cli({}).code, 2);
  EXPECT_EQ(run_cli({"frobnicate"}).code, 2);
  EXPECT_EQ(run_cli({"kl", "--type", "a2.json", "--format", "xml"}).code, 2);
  EXPECT_EQ(run_cli({"mult", "0", "--type", "a2.json"}).code, 2);
  EXPECT_EQ(run_cli({"mult", "0", "7", "--type", "a2.json"}).code, 2);
  EXPECT_EQ(run_cli({"--help"}).code, 0);
}

TEST(Cli, DualityCheckPassesOnA2) {
  auto r = run_cli({"duality", "check", "--type", "a2.json", "--max-length", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["meta"]["all_pass"], true);
  EXPECT_EQ(j["meta"]["pairs"], 25);
}

TEST(Cli, DeterministicAndCacheRoundTrip) {
  auto dir = fresh_cache_dir("rt");
  std::vector<std::string> args{"kl", "--type", "b2.json", "--max-length", "4", "--cache-dir", dir.string()};
  auto cold = run_cli(args);
  ASSERT_EQ(cold.code, 0);
  ASSERT_FALSE(fs::is_empty(dir));
  auto warm = run_cli(args);
  EXPECT_EQ(cold.out, warm.out);
  auto trusted = args;
  trusted.push_back("--trust-cache");
  EXPECT_EQ(run_cli(trusted).out, cold.out);
  auto none = args;
  none.push_back("--no-cache");
  EXPECT_EQ(run_cli(none).out, cold.out);
  fs::remove_all(dir);
}

TEST(Cli, CorruptedCacheIsDetected) {
  auto dir = fresh_cache_dir("bad");
  std::vector<std::string> args{"kl", "--type", "b2.json", "--max-length", "4", "--cache-dir", dir.string()};
  ASSERT_EQ(run_cli(args).code, 0);
  fs::path file = *fs::directory_iterator(dir);
  std::ifstream in(file);
  std::stringstream ss;
  ss << in.rdbuf();
  std::string text = ss.str();
  in.close();
  auto pos = text.rfind("\"p\":[1]");
  ASSERT_NE(pos, std::string::npos);
  text.replace(pos, 7, "\"p\":[2]");
  std::ofstream(file) << text;
  auto r = run_cli(args);
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("check_failed"), std::string::npos);
  fs::remove_all(dir);
}

TEST(Cli, StaleHeaderIsRecomputed) {
  auto dir = fresh_cache_dir("stale");
  std::vector<std::string> args{"kl", "--type", "a2.json", "--max-length", "2", "--cache-dir", dir.string()};
  auto cold = run_cli(args);
  fs::path file = *fs::directory_iterator(dir);
  std::ofstream(file) << "{\"kind\":\"header\",\"engine\":\"old\"}\n";
  auto again = run_cli(args);
  EXPECT_EQ(again.code, 0);
  EXPECT_EQ(again.out, cold.out);
  fs::remove_all(dir);
}

TEST(Cli, CsvAndLatex) {
  auto csv = run_cli({"parabolic", "push", "--theta", "0", "--type", "a2.json", "--max-length", "2", "--csv"});
  ASSERT_EQ(csv.code, 0);
  EXPECT_NE(csv.out.find("\"0,1\",1,-1,-1"), std::string::npos);
  auto tex = run_cli({"pairing", "0", "0", "--type", "a1.json", "--latex"});
  ASSERT_EQ(tex.code, 0);
  EXPECT_NE(tex.out.find("\\begin{tabular}"), std::string::npos);
  EXPECT_NE(tex.out.find("$1 + v^{2}$"), std::string::npos);
}

TEST(Cli, BimodCommands) {
  auto hom = run_cli({"bimod", "hom", "0", "0", "--type", "a1.json", "--json"});
  ASSERT_EQ(hom.code, 0) << hom.err;
  auto j = nlohmann::json::parse(hom.out);
  EXPECT_EQ(j["meta"]["graded_rank"], "1 + v^2");
  EXPECT_EQ(j["meta"]["matches_prediction"], true);

  auto dec = run_cli({"bimod", "decompose", "00", "--type", "a1.json"});
  ASSERT_EQ(dec.code, 0) << dec.err;
  auto d = nlohmann::json::parse(dec.out);
  EXPECT_EQ(d["meta"]["matches_hecke"], true);
  EXPECT_EQ(d["rows"].size(), 2u);

  auto bs = run_cli({"bimod", "bs", "0", "--side", "monodromic", "--type", "a1.json"});
  ASSERT_EQ(bs.code, 0) << bs.err;
  auto b = nlohmann::json::parse(bs.out);
  EXPECT_EQ(b["meta"]["bimodule"]["generators"][1]["weight"], -2);

  auto bound = run_cli({"bimod", "hom", "0", "0", "--type", "a2.json", "--degree-bound", "3"});
  EXPECT_EQ(bound.code, 1);
  EXPECT_NE(bound.err.find("degree_bound_exceeded"), std::string::npos);
}

TEST(Cli, ParabolicNotFiniteType) {
  auto r = run_cli({"parabolic", "average", "--theta", "0,1", "--type", "affine_a1.json"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("not_finite_type"), std::string::npos);
}

TEST(Cli, ParabolicMatchAndFlag) {
  auto r = run_cli({"parabolic", "match", "--theta", "0", "--type", "a2.json"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["rows"].size(), 3u);
  EXPECT_EQ(j["meta"]["projective_flag"].size(), 2u);
}

TEST(Cli, SelfFlagRejectsNonSymmetrizable) {
  fs::path f = fs::temp_directory_path() / "koszul-test-nonsym.json";
  std::ofstream(f) << R"({"cartan": [[2,-1,-1],[-2,2,-1],[-1,-1,2]]})";
  auto r = run_cli({"duality", "check", "--type", f.string(), "--max-length", "0", "--symmetrizable-self"});
  EXPECT_EQ(r.code, 2);
  fs::remove(f);
}

TEST(Realization, ExplicitDocumentMatchesCartan) {
  auto re = load_realization("affine_a1_explicit.json");
  EXPECT_EQ(re.dim_h, 3);
  EXPECT_THROW(realization_from_json(nlohmann::json::parse(R"({"cartan": [[2,-1],[-1,2]], "dim_h": 5})")),
               InputError);
  EXPECT_THROW(realization_from_json(nlohmann::json::parse(R"({"cartan": [[2,1],[-1,2]]})")), InvalidCartanMatrix);
  EXPECT_THROW(realization_from_json(nlohmann::json::parse(
                   R"({"cartan": [[2,-1],[-1,2]], "roots": [[2,-1],[-1,2]], "coroots": [[1,0],[0,2]]})")),
               InvalidCartanMatrix);
  EXPECT_EQ(parse_word("0,1,0", 2), (Word{0, 1, 0}));
  EXPECT_EQ(parse_word("010", 2), (Word{0, 1, 0}));
  EXPECT_EQ(parse_word("e", 2), Word{});
  EXPECT_THROW(parse_word("2", 2), InputError);
}
