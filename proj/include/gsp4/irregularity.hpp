#pragma once

// Eigenspace exponent sets of the mod-p class group of Q(mu_p), read off
// from Bernoulli residues.
//
// Convention: for odd i, the chi^i eigenspace is nonzero iff p | B_{p-i}.
// Even eigenspaces are assumed to vanish (Vandiver) and i = 1 never occurs.

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>

#include "gsp4/modarith.hpp"

namespace gsp4 {

/// A set of residues mod p-1, ordered.
using ResidueSet = std::set<std::uint64_t>;

struct IrregularityData {
  std::uint64_t p = 0;
  ResidueSet E;       ///< odd i with a nonzero chi^i eigenspace
  std::uint64_t e_p = 0;
  ResidueSet E_star;  ///< {(p - i) mod (p-1) : i in E} minus {0, (p-1)/2}
  std::uint64_t e = 0;
  ResidueSet E_bar;   ///< E_star together with 0, 1 and (p-1)/2

  friend bool operator==(const IrregularityData&, const IrregularityData&) = default;
};

/// { i odd, 3 <= i <= p-2 : B_{p-i} = 0 mod p }.
inline ResidueSet compute_E(const PrimeContext& ctx) {
  ResidueSet out;
  const std::uint64_t p = ctx.p();
  for (const auto& [k, value] : ctx.bernoulli()) {
    if (value == 0) out.insert(p - k);
  }
  return out;
}

inline std::uint64_t irregularity_index(const PrimeContext& ctx) { return compute_E(ctx).size(); }

/// Builds every set from E. For p = 3 the three special residues collapse to
/// {0, 1}, so |E_bar| = e + 3 only holds from p = 5 on.
inline IrregularityData compute_sets(const PrimeContext& ctx) {
  IrregularityData d;
  d.p = ctx.p();
  const std::uint64_t n = d.p - 1;
  const std::uint64_t half = n / 2;
  d.E = compute_E(ctx);
  d.e_p = d.E.size();
  for (std::uint64_t eps : d.E) {
    const std::uint64_t r = (d.p - eps) % n;
    if (r != 0 && r != half) d.E_star.insert(r);
  }
  d.e = d.E_star.size();
  d.E_bar = d.E_star;
  d.E_bar.insert({0, 1 % n, half});

  if (d.p >= 5) {
    if (d.E_star.count(1) != 0 || d.E_bar.size() != d.e + 3) {
      throw std::logic_error("compute_sets: E_bar is not a disjoint union for p = " +
                             std::to_string(d.p));
    }
  }
  return d;
}

/// 4e + 8 < (p-1)/2, or <= when `strict` is false.
inline bool theorem_bound_holds(const IrregularityData& data, bool strict = true) {
  const std::uint64_t lhs = 4 * data.e + 8;
  const std::uint64_t rhs = (data.p - 1) / 2;
  return strict ? lhs < rhs : lhs <= rhs;
}

}  // namespace gsp4
