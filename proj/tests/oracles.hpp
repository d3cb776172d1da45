#pragma once

// Test-only reference computations. Nothing here calls into the code paths
// it is used to check.

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

/// Exact B_0..B_n (B_1 = -1/2) via the Akiyama-Tanigawa algorithm.
inline std::vector<cpp_rational> exact_bernoulli(unsigned n) {
  std::vector<cpp_rational> out(n + 1), a(n + 1);
  for (unsigned m = 0; m <= n; ++m) {
    a[m] = cpp_rational(1, m + 1);
    for (unsigned j = m; j >= 1; --j) a[j - 1] = j * (a[j - 1] - a[j]);
    out[m] = a[0];  // this yields B_1 = +1/2
  }
  if (n >= 1) out[1] = cpp_rational(-1, 2);
  return out;
}

/// Reduce a p-integral rational modulo p.
inline std::uint64_t rational_mod(const cpp_rational& q, std::uint64_t p) {
  cpp_int num = boost::multiprecision::numerator(q) % p;
  cpp_int den = boost::multiprecision::denominator(q) % p;
  if (num < 0) num += p;
  if (den < 0) den += p;
  // Brute-force inverse: p is small in every use.
  for (std::uint64_t inv = 1; inv < p; ++inv) {
    if ((den * inv) % p == 1) return static_cast<std::uint64_t>((num * inv) % p);
  }
  throw std::runtime_error("rational_mod: denominator divisible by p");
}

inline std::uint64_t naive_pow(std::uint64_t a, unsigned e, std::uint64_t n) {
  std::uint64_t r = 1 % n;
  for (unsigned i = 0; i < e; ++i) r = r * (a % n) % n;
  return r;
}

using Mat = std::array<std::array<std::int64_t, 4>, 4>;

inline Mat mat_mul(const Mat& a, const Mat& b, std::int64_t n) {
  Mat out{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      __int128 acc = 0;
      for (int k = 0; k < 4; ++k) acc += static_cast<__int128>(a[i][k]) * b[k][j];
      std::int64_t v = static_cast<std::int64_t>(acc % n);
      out[i][j] = v < 0 ? v + n : v;
    }
  return out;
}

/// Entrywise form of conjugation by diag(c^a, c^b, c^-a, c^-b): entry (i, j)
/// picks up c^(w_i - w_j) with weights w = (a, b, -a, -b).
inline Mat conjugation_display(const Mat& x, std::int64_t c, std::int64_t a, std::int64_t b,
                               std::int64_t p) {
  const std::array<std::int64_t, 4> w{a, b, -a, -b};
  Mat out{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      std::int64_t e = (w[i] - w[j]) % (p - 1);
      if (e < 0) e += p - 1;
      std::int64_t s = 1;
      for (std::int64_t k = 0; k < e; ++k) s = s * c % p;
      out[i][j] = x[i][j] * s % p;
    }
  return out;
}

/// Whether alpha solves some "2x = +-eps" by enumerating the full solution
/// set of each equation.
inline bool on_doubling_line(std::int64_t v, const std::vector<std::int64_t>& eps_set, std::int64_t n) {
  for (std::int64_t eps : eps_set)
    for (std::int64_t sign : {1, -1})
      for (std::int64_t x = 0; x < n; ++x)
        if (((2 * x - sign * eps) % n + n) % n == 0 && x == v) return true;
  return false;
}

}  // namespace oracle
