#pragma once

// Exponent pairs (alpha, beta) for the diagonal residual representation
// diag(chi^a, chi^b, chi^-a, chi^-b), the two equivalent families of
// admissibility conditions on them, and exhaustive scans over (Z/(p-1))^2.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gsp4/irregularity.hpp"

namespace gsp4 {

/// Largest p for which the O(p^2) scans run without an explicit override.
inline constexpr std::uint64_t kScanLimit = 2000;

struct Root {
  int d1;
  int d2;
  friend constexpr bool operator==(Root, Root) = default;
};

/// D = {(d1, d2) : |d1| + |d2| = 2}, in the fixed order used everywhere.
inline constexpr std::array<Root, 8> kRoots{{{2, 0},
                                             {-2, 0},
                                             {0, 2},
                                             {0, -2},
                                             {1, 1},
                                             {1, -1},
                                             {-1, 1},
                                             {-1, -1}}};

struct ExponentPair {
  std::uint64_t alpha = 0;
  std::uint64_t beta = 0;
  std::uint64_t p = 0;

  ExponentPair() = default;
  ExponentPair(std::uint64_t a, std::uint64_t b, std::uint64_t prime) : alpha(a), beta(b), p(prime) {
    if (p < 3 || a >= p - 1 || b >= p - 1) {
      throw OutOfRange("exponent pair (" + std::to_string(a) + ", " + std::to_string(b) +
                       ") is not a pair of residues mod " + std::to_string(p - 1));
    }
  }

  std::uint64_t modulus() const noexcept { return p - 1; }
  bool odd_parity() const noexcept { return ((alpha + beta) & 1U) != 0; }

  friend bool operator==(const ExponentPair&, const ExponentPair&) = default;
};

/// d1*alpha + d2*beta mod p-1.
inline std::uint64_t root_weight(Root r, std::uint64_t alpha, std::uint64_t beta, std::uint64_t n) {
  const auto a = static_cast<std::int64_t>(alpha % n);
  const auto b = static_cast<std::int64_t>(beta % n);
  return reduce_signed(r.d1 * a + r.d2 * b, n);
}

struct ISet {
  ResidueSet elements;
  std::array<std::uint64_t, 8> raw{};  ///< weights in kRoots order
};

inline ISet i_set(const ExponentPair& pair) {
  ISet out;
  for (std::size_t i = 0; i < kRoots.size(); ++i) {
    out.raw[i] = root_weight(kRoots[i], pair.alpha, pair.beta, pair.modulus());
    out.elements.insert(out.raw[i]);
  }
  return out;
}

/// {(p - eps) mod (p-1) : eps in I}.
inline ResidueSet p_minus_set(const ISet& s, std::uint64_t p) {
  ResidueSet out;
  for (std::uint64_t eps : s.elements) out.insert(sub_mod(p % (p - 1), eps, p - 1));
  return out;
}

struct ConditionTriple {
  bool first = false;
  bool second = false;
  bool third = false;

  bool all() const noexcept { return first && second && third; }
  friend bool operator==(const ConditionTriple&, const ConditionTriple&) = default;
};

/// (1) |I| = 8; (2) 1 not in I; (3) (p - eps) mod (p-1) is outside E for
/// every eps in I.
inline ConditionTriple condition_123(const ExponentPair& pair, const IrregularityData& irr) {
  const std::uint64_t n = pair.modulus();
  const ISet s = i_set(pair);
  ConditionTriple out;
  out.first = s.elements.size() == 8;
  out.second = s.elements.count(1 % n) == 0;
  out.third = true;
  for (std::uint64_t eps : s.elements) {
    if (irr.E.count(sub_mod(pair.p % n, eps, n)) != 0) {
      out.third = false;
      break;
    }
  }
  return out;
}

/// (a) 2a, 2b avoid +-E_bar; (b) b avoids +-a +- E_bar; (c) b != +-3a and
/// 3b != +-a. All congruences mod p-1.
inline ConditionTriple condition_abc(const ExponentPair& pair, const IrregularityData& irr) {
  const std::uint64_t n = pair.modulus();
  const std::uint64_t a = pair.alpha, b = pair.beta;
  ConditionTriple out{true, true, true};
  for (std::uint64_t eps : irr.E_bar) {
    for (const std::uint64_t target : {eps % n, neg_mod(eps, n)}) {
      if ((2 * a) % n == target || (2 * b) % n == target) out.first = false;
      for (const std::uint64_t plus_minus_a : {a, neg_mod(a, n)}) {
        if (b == add_mod(plus_minus_a, target, n)) out.second = false;
      }
    }
  }
  const std::uint64_t three_a = mul_mod(3, a, n), three_b = mul_mod(3, b, n);
  out.third = b != three_a && b != neg_mod(three_a, n) && three_b != a && three_b != neg_mod(a, n);
  return out;
}

/// The hypotheses on a pair under which the deformation problem is
/// unobstructed: alpha + beta odd together with (1)-(3).
inline bool pair_is_valid(const ExponentPair& pair, const IrregularityData& irr) {
  if (!pair.odd_parity()) return false;
  const auto abc = condition_abc(pair, irr);
  return abc.first && abc.second;
}

namespace detail {

inline void require_scan_size(std::uint64_t p, bool allow_large) {
  if (p > kScanLimit && !allow_large) {
    throw OutOfRange("p = " + std::to_string(p) + " exceeds the exhaustive-scan limit " +
                     std::to_string(kScanLimit) + "; pass an explicit override");
  }
}

}  // namespace detail

struct Lemma54Report {
  std::uint64_t p = 0;
  std::uint64_t pairs_scanned = 0;
  std::uint64_t count_123 = 0;       ///< pairs satisfying (1)-(3)
  std::uint64_t count_abc = 0;       ///< pairs satisfying (a)-(c)
  std::uint64_t odd_pairs = 0;
  std::uint64_t count_123_odd = 0;
  std::uint64_t count_ab_odd = 0;    ///< odd pairs satisfying (a), (b)
  std::uint64_t mismatches = 0;      ///< (1)-(3) vs (a)-(c), all pairs
  std::uint64_t mismatches_odd = 0;  ///< (1)-(3) vs (a),(b), odd pairs
  std::uint64_t parity_c_failures = 0;  ///< odd pairs where (c) fails
  std::optional<ExponentPair> counterexample;

  std::uint64_t total_mismatches() const noexcept {
    return mismatches + mismatches_odd + parity_c_failures;
  }
};

/// Classifies all (p-1)^2 pairs under both condition families.
inline Lemma54Report scan_lemma54(const IrregularityData& irr, bool allow_large = false) {
  detail::require_scan_size(irr.p, allow_large);
  Lemma54Report r;
  r.p = irr.p;
  const std::uint64_t n = irr.p - 1;
  for (std::uint64_t a = 0; a < n; ++a) {
    for (std::uint64_t b = 0; b < n; ++b) {
      const ExponentPair pair(a, b, irr.p);
      const bool lhs = condition_123(pair, irr).all();
      const auto abc = condition_abc(pair, irr);
      ++r.pairs_scanned;
      r.count_123 += lhs;
      r.count_abc += abc.all();
      bool bad = lhs != abc.all();
      r.mismatches += bad;
      if (pair.odd_parity()) {
        ++r.odd_pairs;
        const bool ab = abc.first && abc.second;
        r.count_123_odd += lhs;
        r.count_ab_odd += ab;
        r.mismatches_odd += lhs != ab;
        r.parity_c_failures += !abc.third;
        bad = bad || lhs != ab || !abc.third;
      }
      if (bad && !r.counterexample) r.counterexample = pair;
    }
  }
  return r;
}

/// scan_lemma54, throwing EquivalenceViolation on the first disagreement.
inline Lemma54Report verify_lemma54(const IrregularityData& irr, bool allow_large = false) {
  auto r = scan_lemma54(irr, allow_large);
  if (r.total_mismatches() != 0) {
    const auto& c = *r.counterexample;
    throw EquivalenceViolation("condition families disagree for p = " + std::to_string(irr.p) +
                               " at (" + std::to_string(c.alpha) + ", " + std::to_string(c.beta) +
                               ")");
  }
  return r;
}

/// Odd-parity pairs satisfying (a) and (b), lexicographic in (alpha, beta).
inline std::vector<ExponentPair> enumerate_valid_pairs(const IrregularityData& irr,
                                                       bool allow_large = false) {
  detail::require_scan_size(irr.p, allow_large);
  std::vector<ExponentPair> out;
  const std::uint64_t n = irr.p - 1;
  for (std::uint64_t a = 0; a < n; ++a) {
    for (std::uint64_t b = (a + 1) & 1U; b < n; b += 2) {
      const ExponentPair pair(a, b, irr.p);
      if (pair_is_valid(pair, irr)) out.push_back(pair);
    }
  }
  return out;
}

/// (p-1)^2/2 - 4(p-1)(2+e): the union-bound lower estimate of the count.
inline std::int64_t count_lower_bound(std::uint64_t p, std::uint64_t e) {
  const auto n = static_cast<std::int64_t>(p) - 1;
  return n * n / 2 - 4 * n * (2 + static_cast<std::int64_t>(e));
}

/// Lexicographically least valid pair, if any.
inline std::optional<ExponentPair> find_pair(const IrregularityData& irr, bool allow_large = false) {
  detail::require_scan_size(irr.p, allow_large);
  const std::uint64_t n = irr.p - 1;
  for (std::uint64_t a = 0; a < n; ++a) {
    for (std::uint64_t b = (a + 1) & 1U; b < n; b += 2) {
      const ExponentPair pair(a, b, irr.p);
      if (pair_is_valid(pair, irr)) return pair;
    }
  }
  return std::nullopt;
}

}  // namespace gsp4
