#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>

#include "gsp4/cli.hpp"

using namespace gsp4;
using namespace gsp4::cli;

namespace {

bool mentions(const json& notes, const std::string& needle) {
  for (const auto& n : notes)
    if (n.get<std::string>().find(needle) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST(Cli, FindPair37) {
  const auto r = cmd_find_pair(37);
  EXPECT_EQ(r.exit_code, kExitOk);
  const auto& d = r.document;
  EXPECT_EQ(d["p"], 37);
  EXPECT_EQ(d["e_p"], 1);
  EXPECT_EQ(d["e"], 1);
  EXPECT_EQ(d["E_bar"], json::array({0, 1, 18, 32}));
  EXPECT_TRUE(d["bound_holds"].get<bool>());
  EXPECT_FALSE(d["witness_pair"].is_null());
  EXPECT_EQ(d["lemma54_mismatches"], 0);
  EXPECT_TRUE(d["lie_checks_passed"].get<bool>());
  EXPECT_GE(d["valid_pair_count"].get<std::int64_t>(), d["lower_bound"].get<std::int64_t>());
  EXPECT_TRUE(mentions(d["convention_notes"], "39"));
  EXPECT_TRUE(mentions(d["convention_notes"], "chi^7"));
  EXPECT_TRUE(mentions(d["convention_notes"], "eigenspace convention"));
}

TEST(Cli, FindPairExitCodes) {
  EXPECT_EQ(cmd_find_pair(5).exit_code, kExitNoWitness);
  EXPECT_TRUE(cmd_find_pair(5).document["witness_pair"].is_null());
  EXPECT_THROW(cmd_find_pair(4), NotPrime);
}

TEST(Cli, VerifyPair) {
  const auto r = cmd_verify_pair(37, 12, 5);
  EXPECT_EQ(r.exit_code, kExitOk);
  EXPECT_EQ(r.document["i_set"], json::array({7, 10, 12, 17, 19, 24, 26, 29}));
  EXPECT_EQ(r.document["p_minus_i_set"], json::array({8, 11, 13, 18, 20, 25, 27, 30}));
  EXPECT_TRUE(r.document["hypotheses"]["all"].get<bool>());
  EXPECT_TRUE(r.document["lines"]["a"].get<bool>());
  EXPECT_TRUE(r.document["lines"]["b"].get<bool>());

  const auto z = cmd_verify_pair(37, 0, 0);
  EXPECT_EQ(z.exit_code, kExitNoWitness);
  EXPECT_FALSE(z.document["hypotheses"]["distinct_weights"].get<bool>());
  EXPECT_FALSE(z.document["lines"]["a"].get<bool>());

  const auto alt = cmd_verify_pair(37, 1, 6);
  EXPECT_EQ(alt.exit_code, kExitOk);
  EXPECT_THROW(cmd_verify_pair(37, 36, 0), OutOfRange);
}

TEST(Cli, CountAndLemma) {
  const auto c = cmd_count_pairs(101);
  EXPECT_TRUE(c.document["count_meets_bound"].get<bool>());
  const auto l = cmd_verify_lemma54(37);
  EXPECT_EQ(l.document["pairs_scanned"], 1296);
  EXPECT_EQ(l.document["lemma54_mismatches"], 0);
}

TEST(Cli, LieCheck) {
  const auto r5 = cmd_lie_check(5, 100, 42);
  EXPECT_EQ(r5.exit_code, kExitOk);
  EXPECT_EQ(r5.document["eigenvalue_passed"], 100);
  EXPECT_EQ(r5.document["filtration_passed"], 100);
  // The (1, p-1) torus sample kills a + b on X(1,1) and X(-1,-1) for every p.
  for (const auto& v : r5.document["vanishing_torus_constants"]) {
    EXPECT_NE(v["a"], v["b"]);
    EXPECT_EQ(std::abs(v["root"][0].get<int>()), 1);
    EXPECT_EQ(v["root"][0], v["root"][1]);
  }
  EXPECT_EQ(r5.document["vanishing_torus_constants"].size(), 2u);
  const auto r3 = cmd_lie_check(3, 10, 0);
  EXPECT_EQ(r3.exit_code, kExitOk);
  EXPECT_FALSE(r3.document["vanishing_torus_constants"].empty());
  EXPECT_THROW(cmd_lie_check(9, 1, 0), NotPrime);
}

TEST(Cli, DeterministicOutput) {
  EXPECT_EQ(cmd_find_pair(37).document.dump(), cmd_find_pair(37).document.dump());
  EXPECT_EQ(cmd_lie_check(37, 50, 7).document.dump(), cmd_lie_check(37, 50, 7).document.dump());
  // Keys come out sorted.
  const auto s = cmd_verify_pair(37, 12, 5).document.dump();
  EXPECT_LT(s.find("\"E\""), s.find("\"E_bar\""));
  EXPECT_LT(s.find("\"e\""), s.find("\"i_set\""));
}

TEST(Cli, LargeNumbersBecomeStrings) {
  EXPECT_TRUE(number(std::uint64_t{1} << 53).is_string());
  EXPECT_EQ(number(std::uint64_t{1} << 53), "9007199254740992");
  EXPECT_TRUE(number(std::uint64_t{12}).is_number());
  EXPECT_TRUE(number(std::int64_t{-14}).is_number());
}

TEST(Cli, IrregularStreamAndCacheDir) {
  const auto dir = std::filesystem::temp_directory_path() / "gsp4-test-cli-cache";
  std::filesystem::remove_all(dir);
  std::vector<json> lines;
  EXPECT_EQ(cmd_irregular(40, dir, [&](const json& j) { lines.push_back(j); }), kExitOk);
  ASSERT_EQ(lines.size(), 11u);  // 3, 5, ..., 37
  for (const auto& l : lines) EXPECT_EQ(l["e_p"], l["p"] == 37 ? 1 : 0);
  EXPECT_EQ(lines.back()["k"], json::array({32}));
  EXPECT_TRUE(std::filesystem::exists(dir / "bernoulli_37.txt"));

  lines.clear();
  cmd_irregular(3, dir, [&](const json& j) { lines.push_back(j); });
  ASSERT_EQ(lines.size(), 1u);
  EXPECT_EQ(lines[0]["p"], 3);
  EXPECT_THROW(cmd_irregular(2, dir, [](const json&) {}), OutOfRange);

  const auto env_dir = std::filesystem::temp_directory_path() / "gsp4-test-cli-env";
  std::filesystem::remove_all(env_dir);
  const char* old = std::getenv("GSP4_CACHE_DIR");
  const std::string saved = old ? old : "";
  ::setenv("GSP4_CACHE_DIR", env_dir.c_str(), 1);
  EXPECT_EQ(resolve_cache_dir(std::nullopt), env_dir);
  EXPECT_EQ(resolve_cache_dir(std::filesystem::path("x")), std::filesystem::path("x"));
  cmd_verify_pair(41, 1, 2);
  EXPECT_TRUE(std::filesystem::exists(env_dir / "bernoulli_41.txt"));
  if (old) ::setenv("GSP4_CACHE_DIR", saved.c_str(), 1);
  else ::unsetenv("GSP4_CACHE_DIR");
}
