// Acceptance run: one PASS/FAIL line per criterion, each under its time
// budget. Exit status is nonzero if any line fails.

#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <string>
#include <vector>

#include "gsp4/cli.hpp"
#include "gsp4/gsp4.hpp"
#include "oracles.hpp"

using namespace gsp4;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

oracle::Mat to_oracle(const RingMatrix& m) {
  oracle::Mat out{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out[i][j] = static_cast<std::int64_t>(m(i, j));
  return out;
}

Outcome ac1() {
  Outcome o;
  const auto irr = compute_sets(PrimeContext(37));
  o.require(irr.e_p == 1, "e_p != 1");
  o.require(4 * irr.e + 8 == 12 && theorem_bound_holds(irr), "bound 12 < 18 failed");
  const ExponentPair pair(12, 5, 37);
  o.require(pair.odd_parity() && condition_123(pair, irr).all(), "(12,5) fails (1)-(3)");
  const auto abc = condition_abc(pair, irr);
  o.require(abc.first && abc.second, "(12,5) fails (a),(b)");
  const auto s = i_set(pair);
  o.require(s.elements == ResidueSet{7, 10, 12, 17, 19, 24, 26, 29}, "I(12,5) wrong");
  o.require(p_minus_set(s, 37) == ResidueSet{8, 11, 13, 18, 20, 25, 27, 30}, "p - I wrong");
  bool flagged = false;
  for (const auto& n : cli::convention_notes(irr)) flagged = flagged || n.find("39") != std::string::npos;
  o.require(flagged, "39 not flagged");
  return o;
}

Outcome ac2() {
  Outcome o;
  std::vector<std::uint64_t> irregular;
  for (std::uint64_t p : odd_primes_up_to(500)) {
    if (p < 5) continue;
    const auto rec = bernoulli_recurrence(p);
    o.require(rec == bernoulli_worpitzky(p), "routes disagree at p = " + std::to_string(p));
    for (const auto& [k, v] : rec)
      if (v == 0) {
        irregular.push_back(p);
        break;
      }
  }
  for (std::uint64_t q : {37u, 59u, 67u, 101u, 103u})
    o.require(std::find(irregular.begin(), irregular.end(), q) != irregular.end(),
              std::to_string(q) + " missing");
  return o;
}

Outcome ac3() {
  Outcome o;
  for (std::uint64_t p : {5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    const auto r = scan_lemma54(compute_sets(PrimeContext(p)));
    o.require(r.pairs_scanned == (p - 1) * (p - 1), "scan incomplete at p = " + std::to_string(p));
    o.require(r.mismatches == 0 && r.mismatches_odd == 0,
              "mismatch at p = " + std::to_string(p));
  }
  return o;
}

Outcome ac4() {
  Outcome o;
  for (std::uint64_t p : odd_primes_up_to(200)) {
    const auto irr = compute_sets(PrimeContext(p));
    const auto count = static_cast<std::int64_t>(enumerate_valid_pairs(irr).size());
    o.require(count >= count_lower_bound(p, irr.e), "below bound at p = " + std::to_string(p));
    if (4 * irr.e + 8 < (p - 1) / 2.0)
      o.require(count > 0, "no pair although bound holds at p = " + std::to_string(p));
  }
  return o;
}

Outcome ac5() {
  Outcome o;
  for (std::uint64_t p : {5u, 13u, 37u}) {
    try {
      verify_bracket_table(p, default_torus_samples(p));
    } catch (const IdentityViolation& e) {
      o.require(false, e.what());
    }
    Rng rng(p);
    for (int t = 0; t < 100; ++t) {
      const residue_t c = 1 + uniform_below(rng, p - 1);
      const auto a = uniform_below(rng, p - 1), b = uniform_below(rng, p - 1);
      o.require(eigenvalue_table_holds(p, c, a, b), "eigen table at p = " + std::to_string(p));
      const auto x = random_ad_element(rng, p);
      const auto want = oracle::conjugation_display(
          to_oracle(x.matrix()), static_cast<std::int64_t>(c), static_cast<std::int64_t>(a),
          static_cast<std::int64_t>(b), static_cast<std::int64_t>(p));
      o.require(to_oracle(adjoint_action(c, a, b, x).matrix()) == want,
                "conjugation display at p = " + std::to_string(p));
    }
  }
  return o;
}

Outcome ac6() {
  Outcome o;
  for (std::uint64_t p : {5u, 37u}) {
    Rng rng(1000 + p);
    for (int t = 0; t < 1000; ++t) {
      const auto c = random_ad_element(rng, p), d = random_ad_element(rng, p);
      const auto l = static_cast<unsigned>(1 + uniform_below(rng, 3));
      const auto m = static_cast<unsigned>(1 + uniform_below(rng, 3));
      const unsigned k = l + m + 1;
      const auto s1 = random_matrix(rng, p, k), t1 = random_matrix(rng, p, k);
      const auto s2 = random_matrix(rng, p, k), t2 = random_matrix(rng, p, k);
      o.require(filtration_commutator_check(c, d, s1, t1, l, m),
                "congruence fails at p = " + std::to_string(p));
      o.require(filtration_commutator(c, d, s1, t1, l, m) == filtration_commutator(c, d, s2, t2, l, m),
                "depends on S, T at p = " + std::to_string(p));
    }
  }
  return o;
}

Outcome ac7() {
  Outcome o;
  for (std::uint64_t p : {5u, 37u}) {
    Rng rng(2000 + p);
    for (int t = 0; t < 100; ++t) {
      const auto m = static_cast<unsigned>(1 + uniform_below(rng, 3));
      const auto r = random_gsp4(rng, p, m + 1);
      const residue_t n = r.modulus();
      const residue_t psi = mul_mod(*similitude(r), 1 + (n / p) * uniform_below(rng, p), n);
      const auto adj = similitude_adjust(r, psi);
      o.require(similitude(adj.adjusted) == psi, "nu(A^s R) != psi");
      o.require(adj.adjusted.reduced(m) == r.reduced(m), "adjusted differs from R mod p^m");
      int hits = 0;
      std::uint64_t found = 0;
      for (residue_t s = 0; s < p; ++s) {
        if (similitude(power(similitude_step_matrix(p, m), s) * r) == psi) {
          ++hits;
          found = s;
        }
      }
      o.require(hits == 1 && found == adj.s, "s not unique at p = " + std::to_string(p));
    }
  }
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    const char* what;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> all{
      {"AC1", "p=37 end-to-end example", 1, ac1},
      {"AC2", "Bernoulli routes agree for 5 <= p <= 500", 120, ac2},
      {"AC3", "condition families agree on every pair", 30, ac3},
      {"AC4", "counting bound for p <= 200", 60, ac4},
      {"AC5", "bracket table and eigenvalue table", 10, ac5},
      {"AC6", "filtration commutator congruence", 30, ac6},
      {"AC7", "similitude adjustment", 10, ac7},
  };
  int failures = 0;
  for (const auto& c : all) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.ok && secs >= c.budget_s) {
      o.ok = false;
      o.detail = "over time budget";
    }
    failures += !o.ok;
    std::printf("%s %s: %s (%.3f s, limit %.0f s)%s%s\n", o.ok ? "PASS" : "FAIL", c.name, c.what,
                secs, c.budget_s, o.ok ? "" : " - ", o.detail.c_str());
  }
  return failures == 0 ? 0 : 1;
}
