#pragma once

// 4x4 matrices over Z/p^m: GSp4 membership and the similitude character,
// the sp4 root decomposition under a diagonal torus, Lie brackets, and the
// congruence-level commutator and similitude-correction computations.
//
// J = [[0, I2], [-I2, 0]]. An element of gsp4 satisfies X^t J + J X = w J
// with w = omega(X); sp4 is the kernel of omega, i.e. the matrices
// [[A, B], [C, -A^t]] with B and C symmetric.

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gsp4/modarith.hpp"
#include "gsp4/pairsearch.hpp"

namespace gsp4 {

/// p^k, throwing OutOfRange if it does not fit in 62 bits.
inline residue_t checked_prime_power(std::uint64_t p, unsigned k) {
  residue_t q = 1;
  for (unsigned i = 0; i < k; ++i) {
    if (q > (residue_t{1} << 62U) / p) {
      throw OutOfRange(std::to_string(p) + "^" + std::to_string(k) + " exceeds 62 bits");
    }
    q *= p;
  }
  return q;
}

/// A 4x4 matrix with entries in Z/p^m, always stored reduced.
class RingMatrix {
 public:
  using Entries = std::array<std::array<residue_t, 4>, 4>;

  RingMatrix(std::uint64_t p, unsigned m) : p_(p), m_(m), modulus_(checked_prime_power(p, m)) {
    if (m == 0) throw OutOfRange("RingMatrix: precision must be positive");
  }

  RingMatrix(std::uint64_t p, unsigned m, const std::array<std::array<std::int64_t, 4>, 4>& values)
      : RingMatrix(p, m) {
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) e_[i][j] = reduce_signed(values[i][j], modulus_);
  }

  static RingMatrix identity(std::uint64_t p, unsigned m) { return scalar(p, m, 1); }

  static RingMatrix scalar(std::uint64_t p, unsigned m, residue_t s) {
    RingMatrix out(p, m);
    for (int i = 0; i < 4; ++i) out.e_[i][i] = s % out.modulus_;
    return out;
  }

  static RingMatrix diagonal(std::uint64_t p, unsigned m, const std::array<residue_t, 4>& d) {
    RingMatrix out(p, m);
    for (int i = 0; i < 4; ++i) out.e_[i][i] = d[i] % out.modulus_;
    return out;
  }

  /// E_{ij} with 1-based row and column.
  static RingMatrix unit(std::uint64_t p, unsigned m, int row, int col) {
    RingMatrix out(p, m);
    out.e_[row - 1][col - 1] = 1 % out.modulus_;
    return out;
  }

  std::uint64_t p() const noexcept { return p_; }
  unsigned precision() const noexcept { return m_; }
  residue_t modulus() const noexcept { return modulus_; }
  const Entries& entries() const noexcept { return e_; }

  residue_t operator()(int i, int j) const { return e_[i][j]; }
  void set(int i, int j, residue_t v) { e_[i][j] = v % modulus_; }

  RingMatrix& operator+=(const RingMatrix& o) {
    check_same(o);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) e_[i][j] = add_mod(e_[i][j], o.e_[i][j], modulus_);
    return *this;
  }

  RingMatrix& operator-=(const RingMatrix& o) {
    check_same(o);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) e_[i][j] = sub_mod(e_[i][j], o.e_[i][j], modulus_);
    return *this;
  }

  friend RingMatrix operator+(RingMatrix a, const RingMatrix& b) { return a += b; }
  friend RingMatrix operator-(RingMatrix a, const RingMatrix& b) { return a -= b; }

  friend RingMatrix operator-(const RingMatrix& a) {
    RingMatrix out(a.p_, a.m_);
    return out -= a;
  }

  friend RingMatrix operator*(const RingMatrix& a, const RingMatrix& b) {
    a.check_same(b);
    RingMatrix out(a.p_, a.m_);
    const residue_t n = a.modulus_;
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        unsigned __int128 acc = 0;
        for (int k = 0; k < 4; ++k) acc += static_cast<unsigned __int128>(a.e_[i][k]) * b.e_[k][j];
        out.e_[i][j] = static_cast<residue_t>(acc % n);
      }
    }
    return out;
  }

  friend RingMatrix operator*(residue_t s, const RingMatrix& a) {
    RingMatrix out(a.p_, a.m_);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) out.e_[i][j] = mul_mod(s % a.modulus_, a.e_[i][j], a.modulus_);
    return out;
  }

  RingMatrix transpose() const {
    RingMatrix out(p_, m_);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) out.e_[i][j] = e_[j][i];
    return out;
  }

  /// Image under Z/p^m -> Z/p^k for k <= m.
  RingMatrix reduced(unsigned k) const {
    if (k == 0 || k > m_) throw OutOfRange("RingMatrix::reduced: bad precision");
    RingMatrix out(p_, k);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) out.e_[i][j] = e_[i][j] % out.modulus_;
    return out;
  }

  /// Canonical lift (entries read as integers in [0, p^m)) to precision k >= m.
  RingMatrix lifted(unsigned k) const {
    if (k < m_) throw OutOfRange("RingMatrix::lifted: bad precision");
    RingMatrix out(p_, k);
    out.e_ = e_;
    return out;
  }

  bool is_zero() const {
    for (const auto& row : e_)
      for (residue_t v : row)
        if (v != 0) return false;
    return true;
  }

  friend bool operator==(const RingMatrix&, const RingMatrix&) = default;

 private:
  void check_same(const RingMatrix& o) const {
    if (p_ != o.p_ || m_ != o.m_) throw OutOfRange("RingMatrix: operands live over different rings");
  }

  std::uint64_t p_;
  unsigned m_;
  residue_t modulus_;
  Entries e_{};
};

inline RingMatrix j_matrix(std::uint64_t p, unsigned m) {
  RingMatrix j(p, m);
  j.set(0, 2, 1);
  j.set(1, 3, 1);
  j.set(2, 0, j.modulus() - 1);
  j.set(3, 1, j.modulus() - 1);
  return j;
}

/// X^t J + J X.
inline RingMatrix symplectic_defect(const RingMatrix& x) {
  const auto j = j_matrix(x.p(), x.precision());
  return x.transpose() * j + j * x;
}

namespace detail {

// Gauss-Jordan over F_p on the reduction of `m`.
inline RingMatrix inverse_mod_p(const RingMatrix& m) {
  const std::uint64_t p = m.p();
  std::array<std::array<residue_t, 8>, 4> aug{};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) aug[i][j] = m(i, j) % p;
    aug[i][4 + i] = 1;
  }
  for (int col = 0; col < 4; ++col) {
    int pivot = -1;
    for (int r = col; r < 4; ++r) {
      if (aug[r][col] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) throw NotInvertible("matrix is singular mod " + std::to_string(p));
    std::swap(aug[col], aug[pivot]);
    const residue_t inv = mod_inv(aug[col][col], p);
    for (auto& v : aug[col]) v = mul_mod(v, inv, p);
    for (int r = 0; r < 4; ++r) {
      if (r == col || aug[r][col] == 0) continue;
      const residue_t f = aug[r][col];
      for (int c = 0; c < 8; ++c) aug[r][c] = sub_mod(aug[r][c], mul_mod(f, aug[col][c], p), p);
    }
  }
  RingMatrix out(p, 1);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out.set(i, j, aug[i][4 + j]);
  return out;
}

}  // namespace detail

/// Inverse over Z/p^m: invert mod p, then Newton-lift X <- X(2 - MX),
/// doubling the p-adic precision each step.
inline RingMatrix inverse(const RingMatrix& m) {
  RingMatrix x = detail::inverse_mod_p(m).lifted(m.precision());
  const auto two = RingMatrix::scalar(m.p(), m.precision(), 2);
  for (unsigned prec = 1; prec < m.precision(); prec *= 2) x = x * (two - m * x);
  if (!(m * x == RingMatrix::identity(m.p(), m.precision()))) {
    throw std::logic_error("inverse: Newton lift did not converge");
  }
  return x;
}

inline RingMatrix power(RingMatrix base, std::uint64_t e) {
  RingMatrix out = RingMatrix::identity(base.p(), base.precision());
  while (e != 0) {
    if (e & 1U) out = out * base;
    base = base * base;
    e >>= 1U;
  }
  return out;
}

/// nu(M): the unit lambda with M^t J M = lambda J, or nullopt if M is not in GSp4.
inline std::optional<residue_t> similitude(const RingMatrix& m) {
  const auto j = j_matrix(m.p(), m.precision());
  const auto form = m.transpose() * j * m;
  const residue_t lambda = form(0, 2);
  if (lambda % m.p() == 0) return std::nullopt;
  if (!(form == lambda * j)) return std::nullopt;
  return lambda;
}

/// omega(X): the scalar w with X^t J + J X = w J, or nullopt if X is not in gsp4.
inline std::optional<residue_t> omega(const RingMatrix& x) {
  const auto defect = symplectic_defect(x);
  const residue_t w = defect(0, 2);
  if (!(defect == w * j_matrix(x.p(), x.precision()))) return std::nullopt;
  return w;
}

// --- sp4 over F_p --------------------------------------------------------

/// Coordinates: t1, t2, then the root coefficients in kRoots order.
using AdCoords = std::array<residue_t, 10>;

inline RingMatrix torus_generator(std::uint64_t p, int which) {
  std::array<residue_t, 4> d{};
  d[which] = 1;
  d[which + 2] = p - 1;
  return RingMatrix::diagonal(p, 1, d);
}

/// The fixed representative X_delta of each root space, over Z/p^m.
inline RingMatrix root_vector(std::uint64_t p, Root r, unsigned m = 1) {
  auto u = [p, m](int i, int j) { return RingMatrix::unit(p, m, i, j); };
  if (r == Root{2, 0}) return u(1, 3);
  if (r == Root{-2, 0}) return u(3, 1);
  if (r == Root{0, 2}) return u(2, 4);
  if (r == Root{0, -2}) return u(4, 2);
  if (r == Root{1, 1}) return u(1, 4) + u(2, 3);
  if (r == Root{-1, -1}) return u(4, 1) + u(3, 2);
  if (r == Root{1, -1}) return u(1, 2) - u(4, 3);
  if (r == Root{-1, 1}) return u(2, 1) - u(3, 4);
  throw OutOfRange("root_vector: (" + std::to_string(r.d1) + ", " + std::to_string(r.d2) +
                   ") is not a root");
}

inline std::size_t root_index(Root r) {
  for (std::size_t i = 0; i < kRoots.size(); ++i)
    if (kRoots[i] == r) return i;
  throw OutOfRange("root_index: not a root");
}

/// T1, T2, X_(2,0), X_(-2,0), X_(0,2), X_(0,-2), X_(1,1), X_(1,-1), X_(-1,1), X_(-1,-1).
inline std::array<RingMatrix, 10> ad_basis(std::uint64_t p) {
  return {torus_generator(p, 0),       torus_generator(p, 1),       root_vector(p, kRoots[0]),
          root_vector(p, kRoots[1]),   root_vector(p, kRoots[2]),   root_vector(p, kRoots[3]),
          root_vector(p, kRoots[4]),   root_vector(p, kRoots[5]),   root_vector(p, kRoots[6]),
          root_vector(p, kRoots[7])};
}

inline RingMatrix reassemble(std::uint64_t p, const AdCoords& coords) {
  const auto basis = ad_basis(p);
  RingMatrix out(p, 1);
  for (std::size_t i = 0; i < basis.size(); ++i) out += coords[i] * basis[i];
  return out;
}

/// An element of sp4(F_p) with its coordinates in the root basis.
class AdElement {
 public:
  static AdElement from_coords(std::uint64_t p, AdCoords coords) {
    for (auto& c : coords) c %= p;
    return AdElement(reassemble(p, coords), coords);
  }

  static AdElement torus(std::uint64_t p, residue_t a, residue_t b) {
    AdCoords c{};
    c[0] = a;
    c[1] = b;
    return from_coords(p, c);
  }

  static AdElement root(std::uint64_t p, Root r, residue_t scale = 1) {
    AdCoords c{};
    c[2 + root_index(r)] = scale;
    return from_coords(p, c);
  }

  const RingMatrix& matrix() const noexcept { return matrix_; }
  const AdCoords& coords() const noexcept { return coords_; }
  std::uint64_t p() const noexcept { return matrix_.p(); }

  residue_t torus_coord(int which) const { return coords_[which]; }
  residue_t root_coord(Root r) const { return coords_[2 + root_index(r)]; }

  friend bool operator==(const AdElement&, const AdElement&) = default;

 private:
  friend std::optional<AdElement> decompose(const RingMatrix& x);
  AdElement(RingMatrix m, AdCoords c) : matrix_(std::move(m)), coords_(c) {}

  RingMatrix matrix_;
  AdCoords coords_;
};

/// Coordinates of X in the root basis, or nullopt if X is not in sp4(F_p).
inline std::optional<AdElement> decompose(const RingMatrix& x) {
  if (x.precision() != 1) throw OutOfRange("decompose: expects a matrix over F_p");
  if (!symplectic_defect(x).is_zero()) return std::nullopt;
  // Torus part from the upper-left diagonal, root parts from the entry
  // positions of each representative.
  const AdCoords c{x(0, 0), x(1, 1), x(0, 2), x(2, 0), x(1, 3), x(3, 1),
                   x(0, 3), x(0, 1), x(1, 0), x(3, 0)};
  AdElement out(reassemble(x.p(), c), c);
  if (!(out.matrix() == x)) throw std::logic_error("decompose: reassembly mismatch");
  return out;
}

inline AdElement to_ad(const RingMatrix& x, const char* what) {
  auto d = decompose(x);
  if (!d) throw NotInAlgebra(std::string(what) + ": result is not in sp4");
  return *d;
}

/// Conjugation by diag(c^a, c^b, c^-a, c^-b) for a unit c mod p.
inline AdElement adjoint_action(residue_t chi_val, std::uint64_t alpha, std::uint64_t beta,
                                const AdElement& x) {
  const std::uint64_t p = x.p();
  const std::uint64_t n = p - 1;
  if (chi_val % p == 0) throw NotInvertible("adjoint_action: character value must be a unit");
  const std::array<std::uint64_t, 4> exps{alpha % n, beta % n, neg_mod(alpha, n), neg_mod(beta, n)};
  std::array<residue_t, 4> d{}, d_inv{};
  for (int i = 0; i < 4; ++i) {
    d[i] = mod_pow(chi_val, exps[i], p);
    d_inv[i] = mod_pow(chi_val, exps[i] == 0 ? 0 : n - exps[i], p);
  }
  const auto g = RingMatrix::diagonal(p, 1, d);
  const auto g_inv = RingMatrix::diagonal(p, 1, d_inv);
  return to_ad(g * x.matrix() * g_inv, "adjoint_action");
}

inline AdElement bracket(const AdElement& x, const AdElement& y) {
  if (x.p() != y.p()) throw OutOfRange("bracket: operands over different primes");
  const auto& a = x.matrix();
  const auto& b = y.matrix();
  return to_ad(a * b - b * a, "bracket");
}

/// True iff every root vector scales by c^(d1*alpha + d2*beta) under
/// adjoint_action and the torus is fixed.
inline bool eigenvalue_table_holds(std::uint64_t p, residue_t chi_val, std::uint64_t alpha,
                                   std::uint64_t beta) {
  const std::uint64_t n = p - 1;
  for (int t = 0; t < 2; ++t) {
    AdCoords c{};
    c[t] = 1;
    const auto x = AdElement::from_coords(p, c);
    if (!(adjoint_action(chi_val, alpha, beta, x) == x)) return false;
  }
  for (Root r : kRoots) {
    const residue_t scale = mod_pow(chi_val, root_weight(r, alpha, beta, n), p);
    if (!(adjoint_action(chi_val, alpha, beta, AdElement::root(p, r)) == AdElement::root(p, r, scale)))
      return false;
  }
  return true;
}

// --- bracket table ----------------------------------------------------------

/// The scalar by which w = a T1 + b T2 acts on one root vector.
struct RootConstant {
  residue_t a = 0;
  residue_t b = 0;
  Root root{};
  residue_t constant = 0;  ///< d1*a + d2*b mod p
  bool vanishes = false;   ///< X_(+-1,+-1) constant is 0 although a != b
};

struct BracketTableReport {
  std::uint64_t p = 0;
  std::uint64_t identities_checked = 0;
  std::vector<RootConstant> constants;

  std::vector<RootConstant> vanishing() const {
    std::vector<RootConstant> out;
    for (const auto& c : constants)
      if (c.vanishes) out.push_back(c);
    return out;
  }
};

/// Torus samples (a, b) used by default: (1,0), (0,1), (1,2), (2,1), (1,-1).
inline std::vector<std::pair<residue_t, residue_t>> default_torus_samples(std::uint64_t p) {
  std::vector<std::pair<residue_t, residue_t>> out;
  for (std::pair<residue_t, residue_t> s :
       {std::pair<residue_t, residue_t>{1, 0}, {0, 1}, {1, 2 % p}, {2 % p, 1}, {1, p - 1}}) {
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  }
  return out;
}

/// Checks the commutator identities among root vectors used to generate
/// sp4 from the rank-one pieces, and the torus action on each root.
/// Throws IdentityViolation naming the first failing identity.
inline BracketTableReport verify_bracket_table(
    std::uint64_t p, const std::vector<std::pair<residue_t, residue_t>>& torus_samples) {
  require_odd_prime(p);
  BracketTableReport report;
  report.p = p;
  auto X = [p](int d1, int d2, residue_t s = 1) { return AdElement::root(p, Root{d1, d2}, s); };
  auto expect = [&report](const AdElement& got, const AdElement& want, const std::string& name) {
    ++report.identities_checked;
    if (!(got == want)) throw IdentityViolation("bracket identity failed: " + name);
  };
  const residue_t minus_two = p - 2;

  expect(bracket(X(1, 1), X(1, -1)), X(2, 0, minus_two), "[X(1,1),X(1,-1)] = -2X(2,0)");
  expect(bracket(X(-1, -1), X(-1, 1)), X(-2, 0, 2), "[X(-1,-1),X(-1,1)] = 2X(-2,0)");
  expect(bracket(X(1, 1), X(-1, 1)), X(0, 2, minus_two), "[X(1,1),X(-1,1)] = -2X(0,2)");
  expect(bracket(X(-1, -1), X(1, -1)), X(0, -2, 2), "[X(-1,-1),X(1,-1)] = 2X(0,-2)");
  expect(bracket(X(1, 1), X(-1, -1)), AdElement::torus(p, 1, 1),
         "[X(1,1),X(-1,-1)] = diag(1,1,-1,-1)");
  expect(bracket(X(1, -1), X(-1, 1)), AdElement::torus(p, 1, p - 1),
         "[X(1,-1),X(-1,1)] = diag(1,-1,-1,1)");

  for (const auto& [a, b] : torus_samples) {
    const auto w = AdElement::torus(p, a, b);
    for (Root r : kRoots) {
      const residue_t c = add_mod(mul_mod(reduce_signed(r.d1, p), a, p),
                                  mul_mod(reduce_signed(r.d2, p), b, p), p);
      expect(bracket(w, AdElement::root(p, r)), AdElement::root(p, r, c),
             "[w,X(" + std::to_string(r.d1) + "," + std::to_string(r.d2) + ")] = cX with a = " +
                 std::to_string(a) + ", b = " + std::to_string(b));
      const bool mixed_root = r.d1 != 0 && r.d2 != 0;
      report.constants.push_back({a, b, r, c, mixed_root && c == 0 && a % p != b % p});
    }
  }
  return report;
}

// --- congruence-level computations ----------------------------------------

/// C D C^-1 D^-1 over Z/p^(l+m+1) for C = 1 + p^l c + p^(l+1) S and
/// D = 1 + p^m d + p^(m+1) T, where c and d are canonically lifted.
/// S and T may have any precision; they are reduced to the working one.
inline RingMatrix filtration_commutator(const AdElement& c, const AdElement& d, const RingMatrix& s,
                                        const RingMatrix& t, unsigned l, unsigned m) {
  if (l == 0 || m == 0) throw OutOfRange("filtration_commutator: levels must be positive");
  const std::uint64_t p = c.p();
  const unsigned k = l + m + 1;
  auto at_precision = [k](const RingMatrix& x) {
    return x.precision() >= k ? x.reduced(k) : x.lifted(k);
  };
  const auto one = RingMatrix::identity(p, k);
  const residue_t pl = checked_prime_power(p, l), pm = checked_prime_power(p, m);
  const auto big_c = one + pl * c.matrix().lifted(k) + (pl * p) * at_precision(s);
  const auto big_d = one + pm * d.matrix().lifted(k) + (pm * p) * at_precision(t);
  return big_c * big_d * inverse(big_c) * inverse(big_d);
}

/// Whether the commutator equals 1 + p^(l+m) [c, d] mod p^(l+m+1).
inline bool filtration_commutator_check(const AdElement& c, const AdElement& d, const RingMatrix& s,
                                        const RingMatrix& t, unsigned l, unsigned m) {
  const auto comm = filtration_commutator(c, d, s, t, l, m);
  const unsigned k = l + m + 1;
  const auto expected = RingMatrix::identity(c.p(), k) +
                        checked_prime_power(c.p(), l + m) * bracket(c, d).matrix().lifted(k);
  return comm == expected;
}

/// diag(1 + p^m, 1, 1, 1 + p^m) over Z/p^(m+1).
inline RingMatrix similitude_step_matrix(std::uint64_t p, unsigned m) {
  const residue_t u = 1 + checked_prime_power(p, m);
  return RingMatrix::diagonal(p, m + 1, {u, 1, 1, u});
}

struct SimilitudeAdjustment {
  residue_t s = 0;
  RingMatrix adjusted;
};

/// For R in GSp4(Z/p^(m+1)) with nu(R) = psi mod p^m, the unique s mod p with
/// nu(A^s R) = psi, where A = diag(1 + p^m, 1, 1, 1 + p^m).
inline SimilitudeAdjustment similitude_adjust(const RingMatrix& r, residue_t psi) {
  const std::uint64_t p = r.p();
  if (r.precision() < 2) throw OutOfRange("similitude_adjust: R must live mod p^(m+1), m >= 1");
  const unsigned m = r.precision() - 1;
  const auto nu = similitude(r);
  if (!nu) throw NotInGroup("similitude_adjust: R is not in GSp4");
  const residue_t n = r.modulus();
  const residue_t pm = n / p;
  const residue_t ratio = mul_mod(psi % n, mod_inv(*nu, n), n);
  if (ratio % pm != 1 % pm) {
    throw SimilitudeMismatch("similitude_adjust: nu(R) and psi differ mod p^" + std::to_string(m));
  }
  // nu(A^s R) = (1 + s p^m) nu(R) mod p^(m+1).
  const residue_t s = ((ratio + n - 1) % n) / pm;
  return {s, power(similitude_step_matrix(p, m), s) * r};
}

}  // namespace gsp4
