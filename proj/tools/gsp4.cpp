// gsp4: irregularity data, exponent-pair search and matrix-level checks for
// diagonal residual representations into GSp4(F_p).

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "gsp4/cli.hpp"

namespace {

void print(const gsp4::cli::json& doc) { std::cout << doc.dump(2) << '\n'; }

}  // namespace

int main(int argc, char** argv) {
  using namespace gsp4::cli;

  CLI::App app{"Irregular primes and unobstructed diagonal GSp4 residual representations"};
  app.require_subcommand(1);

  std::uint64_t max_p = 0;
  std::string cache;
  auto* irregular = app.add_subcommand("irregular", "List e_p and E for every odd prime up to N");
  irregular->add_option("--max-p", max_p, "Largest prime to report")->required();
  irregular->add_option("--cache", cache, "Bernoulli cache directory (default $GSP4_CACHE_DIR)");

  std::uint64_t p = 0, alpha = 0, beta = 0, trials = 100, seed = 0;
  bool allow_large = false;

  auto* find = app.add_subcommand("find-pair", "Find the least valid exponent pair and report");
  find->add_option("-p", p, "Odd prime")->required();
  find->add_flag("--allow-large", allow_large, "Permit exhaustive scans above p = 2000");

  auto* verify = app.add_subcommand("verify-pair", "Evaluate all hypotheses on one pair");
  verify->add_option("-p", p, "Odd prime")->required();
  verify->add_option("-a", alpha, "alpha mod p-1")->required();
  verify->add_option("-b", beta, "beta mod p-1")->required();

  auto* count = app.add_subcommand("count-pairs", "Count valid odd-parity pairs");
  count->add_option("-p", p, "Odd prime")->required();
  count->add_flag("--allow-large", allow_large, "Permit exhaustive scans above p = 2000");

  auto* lie = app.add_subcommand("lie-check", "Bracket table, eigenvalue and congruence checks");
  lie->add_option("-p", p, "Odd prime")->required();
  lie->add_option("--trials", trials, "Randomized rounds per check");
  lie->add_option("--seed", seed, "Generator seed");

  auto* lemma = app.add_subcommand("verify-lemma54",
                                   "Check both condition families agree on every pair");
  lemma->add_option("-p", p, "Odd prime")->required();
  lemma->add_flag("--allow-large", allow_large, "Permit exhaustive scans above p = 2000");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    CommandResult result;
    if (*irregular) {
      std::optional<std::filesystem::path> dir;
      if (!cache.empty()) dir = cache;
      return cmd_irregular(max_p, dir, [](const json& line) { std::cout << line.dump() << '\n'; });
    }
    if (*find) result = cmd_find_pair(p, allow_large);
    if (*verify) result = cmd_verify_pair(p, alpha, beta);
    if (*count) result = cmd_count_pairs(p, allow_large);
    if (*lie) result = cmd_lie_check(p, trials, seed);
    if (*lemma) result = cmd_verify_lemma54(p, allow_large);
    print(result.document);
    return result.exit_code;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", e.what()}}.dump() << '\n';
    return kExitError;
  }
}
