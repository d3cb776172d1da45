#pragma once

// Exact arithmetic modulo machine-width integers, Bernoulli numbers mod p
// by two independent routes, and the on-disk Bernoulli cache.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "gsp4/errors.hpp"

namespace gsp4 {

using residue_t = std::uint64_t;

/// Bernoulli residues B_k mod p keyed by even k in [2, p-3].
using BernoulliTable = std::map<std::uint32_t, residue_t>;

inline residue_t mul_mod(residue_t a, residue_t b, residue_t n) {
  return static_cast<residue_t>(static_cast<unsigned __int128>(a) * b % n);
}

inline residue_t add_mod(residue_t a, residue_t b, residue_t n) {
  a %= n;
  b %= n;
  return a >= n - b ? a - (n - b) : a + b;
}

inline residue_t sub_mod(residue_t a, residue_t b, residue_t n) {
  a %= n;
  b %= n;
  return a >= b ? a - b : a + (n - b);
}

inline residue_t neg_mod(residue_t a, residue_t n) { return sub_mod(0, a, n); }

/// Reduce a signed integer into [0, n).
inline residue_t reduce_signed(std::int64_t a, residue_t n) {
  const auto r = static_cast<std::int64_t>(
      a % static_cast<std::int64_t>(n));
  return static_cast<residue_t>(r < 0 ? r + static_cast<std::int64_t>(n) : r);
}

/// a^e mod n by square-and-multiply; 0^0 = 1. Requires n >= 2.
inline residue_t mod_pow(residue_t a, std::uint64_t e, residue_t n) {
  residue_t result = 1 % n;
  a %= n;
  while (e != 0) {
    if (e & 1U) result = mul_mod(result, a, n);
    a = mul_mod(a, a, n);
    e >>= 1U;
  }
  return result;
}

/// Inverse of a modulo n; throws NotInvertible unless gcd(a, n) = 1.
inline residue_t mod_inv(residue_t a, residue_t n) {
  using wide = __int128;
  wide old_r = static_cast<wide>(a % n), r = static_cast<wide>(n);
  wide old_s = 1, s = 0;
  while (r != 0) {
    const wide q = old_r / r;
    wide tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1 || n == 1) {
    throw NotInvertible("mod_inv: " + std::to_string(a) + " is not a unit mod " +
                        std::to_string(n));
  }
  old_s %= static_cast<wide>(n);
  if (old_s < 0) old_s += static_cast<wide>(n);
  return static_cast<residue_t>(old_s);
}

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL,
                          23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL,
                          23ULL, 29ULL, 31ULL, 37ULL}) {
    residue_t x = mod_pow(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

inline void require_odd_prime(std::uint64_t p) {
  if (p < 3 || !is_prime(p)) {
    throw NotPrime(std::to_string(p) + " is not an odd prime");
  }
}

/// All odd primes in [3, max_p], ascending.
inline std::vector<std::uint64_t> odd_primes_up_to(std::uint64_t max_p) {
  std::vector<std::uint64_t> out;
  if (max_p < 3) return out;
  std::vector<bool> composite(max_p + 1, false);
  for (std::uint64_t i = 2; i * i <= max_p; ++i) {
    if (composite[i]) continue;
    for (std::uint64_t j = i * i; j <= max_p; j += i) composite[j] = true;
  }
  for (std::uint64_t i = 3; i <= max_p; i += 2) {
    if (!composite[i]) out.push_back(i);
  }
  return out;
}

namespace detail {

// Factorials and inverse factorials mod p up to p-1.
struct FactorialTable {
  std::vector<residue_t> fact, inv_fact;
  residue_t p;

  explicit FactorialTable(residue_t prime) : fact(prime), inv_fact(prime), p(prime) {
    fact[0] = 1;
    for (residue_t i = 1; i < p; ++i) fact[i] = mul_mod(fact[i - 1], i, p);
    inv_fact[p - 1] = mod_inv(fact[p - 1], p);
    for (residue_t i = p - 1; i > 0; --i) inv_fact[i - 1] = mul_mod(inv_fact[i], i, p);
  }

  residue_t binom(residue_t n, residue_t k) const {
    if (k > n) return 0;
    return mul_mod(fact[n], mul_mod(inv_fact[k], inv_fact[n - k], p), p);
  }
};

}  // namespace detail

/// B_k mod p for even k in [2, p-3] from the classical recurrence
/// sum_{j=0}^{n} C(n+1, j) B_j = 0, with B_1 = -1/2.
///
/// Every B_n with n <= p-3 is p-integral, and every denominator n+1 that
/// appears is at most p-2, so all arithmetic stays inside F_p. The odd
/// values B_3, B_5, ... are computed as well and must come out zero.
inline BernoulliTable bernoulli_recurrence(std::uint64_t p) {
  require_odd_prime(p);
  BernoulliTable table;
  if (p == 3) return table;

  const std::uint64_t top = p - 3;
  std::vector<residue_t> b(top + 1, 0);
  // Row n+1 of Pascal's triangle mod p, advanced in place.
  std::vector<residue_t> row{1, 1};
  b[0] = 1;
  for (std::uint64_t n = 1; n <= top; ++n) {
    std::vector<residue_t> next(n + 2, 1);
    for (std::uint64_t j = 1; j <= n; ++j) next[j] = add_mod(row[j - 1], row[j], p);
    row = std::move(next);

    residue_t acc = 0;
    for (std::uint64_t j = 0; j < n; ++j) acc = add_mod(acc, mul_mod(row[j], b[j], p), p);
    b[n] = neg_mod(mul_mod(acc, mod_inv(n + 1, p), p), p);

    if (n >= 3 && (n & 1U) && b[n] != 0) {
      throw std::logic_error("bernoulli_recurrence: nonzero odd Bernoulli residue B_" +
                             std::to_string(n) + " mod " + std::to_string(p));
    }
  }
  for (std::uint64_t k = 2; k <= top; k += 2) table.emplace(static_cast<std::uint32_t>(k), b[k]);
  return table;
}

/// Same table through the explicit double sum
/// B_n = sum_{m=0}^{n} 1/(m+1) sum_{j=0}^{m} (-1)^j C(m, j) j^n.
///
/// The sum is reordered as sum_j (-1)^j j^n W_n(j) with
/// W_n(j) = sum_{m=j}^{n} C(m, j)/(m+1); W grows by two terms per even step,
/// so the whole table costs O(p^2).
inline BernoulliTable bernoulli_worpitzky(std::uint64_t p) {
  require_odd_prime(p);
  BernoulliTable table;
  if (p == 3) return table;

  const std::uint64_t top = p - 3;
  const detail::FactorialTable ft(p);
  std::vector<residue_t> inv(top + 2, 0);
  for (std::uint64_t m = 1; m <= top + 1; ++m) inv[m] = mod_inv(m, p);

  std::vector<residue_t> weight(top + 1, 0);
  std::vector<residue_t> power(top + 1, 1);  // j^n, starting at n = 0

  auto add_row = [&](std::uint64_t m) {
    for (std::uint64_t j = 0; j <= m; ++j) {
      weight[j] = add_mod(weight[j], mul_mod(ft.binom(m, j), inv[m + 1], p), p);
    }
  };
  add_row(0);
  add_row(1);
  for (std::uint64_t n = 2; n <= top; n += 2) {
    add_row(n);
    for (std::uint64_t j = 0; j <= top; ++j) power[j] = mul_mod(power[j], mul_mod(j, j, p), p);
    residue_t acc = 0;
    for (std::uint64_t j = 1; j <= n; ++j) {
      const residue_t term = mul_mod(power[j], weight[j], p);
      acc = (j & 1U) ? sub_mod(acc, term, p) : add_mod(acc, term, p);
    }
    table.emplace(static_cast<std::uint32_t>(n), acc);
    if (n + 1 <= top) add_row(n + 1);
  }
  return table;
}

/// An odd prime together with its Bernoulli residues. Immutable.
class PrimeContext {
 public:
  /// Computes the table with the recurrence.
  explicit PrimeContext(std::uint64_t p) : p_(p) {
    require_odd_prime(p);
    bernoulli_ = bernoulli_recurrence(p);
  }

  /// Adopts an existing table after validating it.
  PrimeContext(std::uint64_t p, BernoulliTable table) : p_(p), bernoulli_(std::move(table)) {
    require_odd_prime(p);
    validate();
  }

  std::uint64_t p() const noexcept { return p_; }
  const BernoulliTable& bernoulli() const noexcept { return bernoulli_; }

  /// B_k mod p for even k in [2, p-3].
  residue_t bernoulli_at(std::uint32_t k) const {
    const auto it = bernoulli_.find(k);
    if (it == bernoulli_.end()) {
      throw OutOfRange("B_" + std::to_string(k) + " is not stored for p = " + std::to_string(p_));
    }
    return it->second;
  }

  friend bool operator==(const PrimeContext&, const PrimeContext&) = default;

 private:
  void validate() const {
    std::uint64_t expected = 2;
    for (const auto& [k, v] : bernoulli_) {
      if (k != expected || v >= p_) {
        throw FormatError("Bernoulli table for p = " + std::to_string(p_) +
                          " has a bad entry at k = " + std::to_string(k));
      }
      expected += 2;
    }
    const std::uint64_t count = p_ == 3 ? 0 : (p_ - 3) / 2;
    if (bernoulli_.size() != count) {
      throw FormatError("Bernoulli table for p = " + std::to_string(p_) + " has " +
                        std::to_string(bernoulli_.size()) + " entries, expected " +
                        std::to_string(count));
    }
  }

  std::uint64_t p_;
  BernoulliTable bernoulli_;
};

// Cache file layout: "p=<p>\n" followed by "<k>,<residue>\n" for every even
// k in [2, p-3], ascending.

inline std::string cache_serialize(const PrimeContext& ctx) {
  std::string out = "p=" + std::to_string(ctx.p()) + "\n";
  for (const auto& [k, v] : ctx.bernoulli()) {
    out += std::to_string(k);
    out += ',';
    out += std::to_string(v);
    out += '\n';
  }
  return out;
}

namespace detail {

inline std::uint64_t parse_decimal(const std::string& text, const std::string& what) {
  if (text.empty() || text.size() > 19) throw FormatError("cache: bad " + what + " '" + text + "'");
  std::uint64_t v = 0;
  for (char c : text) {
    if (c < '0' || c > '9') throw FormatError("cache: bad " + what + " '" + text + "'");
    v = v * 10 + static_cast<std::uint64_t>(c - '0');
  }
  return v;
}

}  // namespace detail

/// Parse a cache file body; throws FormatError or PrimeMismatch.
inline PrimeContext cache_parse(const std::string& body, std::uint64_t p) {
  if (body.empty() || body.back() != '\n') throw FormatError("cache: missing final newline");
  std::istringstream in(body);
  std::string line;
  std::getline(in, line);
  if (line.rfind("p=", 0) != 0) throw FormatError("cache: missing 'p=' header");
  const std::uint64_t file_p = detail::parse_decimal(line.substr(2), "prime");
  if (file_p != p) {
    throw PrimeMismatch("cache file is for p = " + std::to_string(file_p) + ", requested p = " +
                        std::to_string(p));
  }
  BernoulliTable table;
  std::uint64_t last = 0;
  while (std::getline(in, line)) {
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw FormatError("cache: malformed record '" + line + "'");
    const auto k = detail::parse_decimal(line.substr(0, comma), "index");
    const auto v = detail::parse_decimal(line.substr(comma + 1), "residue");
    if (k > 0xffffffffULL) throw FormatError("cache: index out of range");
    if (k <= last) throw FormatError("cache: index " + std::to_string(k) + " out of order");
    last = k;
    table.emplace(static_cast<std::uint32_t>(k), v);
  }
  return PrimeContext(p, std::move(table));
}

inline void cache_write(const PrimeContext& ctx, const std::filesystem::path& path) {
  std::error_code ec;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cache: cannot create " + path.parent_path().string() + ": " + ec.message());
  }
  // Write-then-rename so concurrent readers never see a partial file.
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cache: cannot open " + tmp.string() + " for writing");
    out << cache_serialize(ctx);
    if (!out.flush()) throw IoError("cache: write to " + tmp.string() + " failed");
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cache: cannot rename into " + path.string() + ": " + ec.message());
}

inline PrimeContext cache_read(const std::filesystem::path& path, std::uint64_t p) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cache: cannot open " + path.string());
  std::ostringstream body;
  body << in.rdbuf();
  if (in.bad()) throw IoError("cache: read of " + path.string() + " failed");
  return cache_parse(body.str(), p);
}

inline std::filesystem::path cache_file(const std::filesystem::path& dir, std::uint64_t p) {
  return dir / ("bernoulli_" + std::to_string(p) + ".txt");
}

/// Reads p's table from `dir` when present and valid, otherwise computes and
/// stores it. A corrupt or mismatched file is recomputed and overwritten.
inline PrimeContext load_or_compute(std::uint64_t p, const std::optional<std::filesystem::path>& dir) {
  require_odd_prime(p);
  if (!dir) return PrimeContext(p);
  const auto file = cache_file(*dir, p);
  if (std::filesystem::exists(file)) {
    try {
      return cache_read(file, p);
    } catch (const FormatError&) {
    } catch (const PrimeMismatch&) {
    }
  }
  PrimeContext ctx(p);
  cache_write(ctx, file);
  return ctx;
}

}  // namespace gsp4
