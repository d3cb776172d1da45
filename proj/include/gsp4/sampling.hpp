#pragma once

// Seeded random generation of sp4 elements, matrices and GSp4 elements.
// Only the raw 64-bit output of std::mt19937_64 is used, which the standard
// pins down exactly, so every draw is reproducible across platforms.

#include <cstdint>
#include <random>

#include "gsp4/symplectic.hpp"

namespace gsp4 {

using Rng = std::mt19937_64;

/// Uniform draw from [0, n) by rejection.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

/// A unit of Z/p^m.
inline residue_t random_unit(Rng& rng, std::uint64_t p, unsigned m) {
  const residue_t n = checked_prime_power(p, m);
  residue_t x;
  do {
    x = uniform_below(rng, n);
  } while (x % p == 0);
  return x;
}

inline RingMatrix random_matrix(Rng& rng, std::uint64_t p, unsigned m) {
  RingMatrix out(p, m);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out.set(i, j, uniform_below(rng, out.modulus()));
  return out;
}

inline AdElement random_ad_element(Rng& rng, std::uint64_t p) {
  AdCoords c{};
  for (auto& v : c) v = uniform_below(rng, p);
  return AdElement::from_coords(p, c);
}

/// A product of `factors` random generators of GSp4(Z/p^m): diagonal
/// similitudes diag(a, b, lambda/a, lambda/b) and unipotents 1 + t X_delta.
/// Every root vector squares to zero, so 1 + t X_delta = exp(t X_delta) is
/// exactly symplectic.
inline RingMatrix random_gsp4(Rng& rng, std::uint64_t p, unsigned m, unsigned factors = 6) {
  auto out = RingMatrix::identity(p, m);
  const residue_t n = out.modulus();
  for (unsigned f = 0; f < factors; ++f) {
    if (uniform_below(rng, 3) == 0) {
      const residue_t a = random_unit(rng, p, m), b = random_unit(rng, p, m);
      const residue_t lambda = random_unit(rng, p, m);
      out = out * RingMatrix::diagonal(p, m,
                                       {a, b, mul_mod(lambda, mod_inv(a, n), n),
                                        mul_mod(lambda, mod_inv(b, n), n)});
    } else {
      const Root r = kRoots[uniform_below(rng, kRoots.size())];
      const residue_t t = uniform_below(rng, n);
      out = out * (RingMatrix::identity(p, m) + t * root_vector(p, r, m));
    }
  }
  return out;
}

}  // namespace gsp4
