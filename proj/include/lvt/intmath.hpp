#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "lvt/errors.hpp"

// Overflow-checked fixed-width arithmetic for lattice coordinates. Exponents
// are int64; intermediate determinants and inner products use __int128.
namespace lvt::intmath {

using Wide = __int128;

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw ArithmeticOverflow("int64 addition overflow");
  return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw ArithmeticOverflow("int64 subtraction overflow");
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticOverflow("int64 multiplication overflow");
  return r;
}

inline Wide wide_add(Wide a, Wide b) {
  Wide r;
  if (__builtin_add_overflow(a, b, &r)) throw ArithmeticOverflow("int128 addition overflow");
  return r;
}

inline Wide wide_sub(Wide a, Wide b) {
  Wide r;
  if (__builtin_sub_overflow(a, b, &r)) throw ArithmeticOverflow("int128 subtraction overflow");
  return r;
}

inline Wide wide_mul(Wide a, Wide b) {
  Wide r;
  if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticOverflow("int128 multiplication overflow");
  return r;
}

inline Wide wide_abs(Wide a) { return a < 0 ? -a : a; }

inline Wide wide_gcd(Wide a, Wide b) {
  a = wide_abs(a);
  b = wide_abs(b);
  while (b != 0) {
    Wide t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline std::int64_t narrow(Wide v) {
  if (v > INT64_MAX || v < INT64_MIN) throw ArithmeticOverflow("value does not fit in int64");
  return static_cast<std::int64_t>(v);
}

inline mpz_class to_mpz(Wide v) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1
                            : static_cast<unsigned __int128>(v);
  mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64)));
  mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
  mpz_class r = (hi << 64) + lo;
  return neg ? mpz_class(-r) : r;
}

// Floor division and non-negative remainder for a positive divisor.
inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline std::int64_t gcd_of(std::span<const std::int64_t> v) {
  std::int64_t g = 0;
  for (auto x : v) g = std::gcd(g, x < 0 ? -x : x);
  return g;
}

inline bool is_primitive(std::span<const std::int64_t> v) { return gcd_of(v) == 1; }

// Divides out the gcd; the zero vector is returned unchanged.
inline std::vector<std::int64_t> primitive(std::span<const std::int64_t> v) {
  std::vector<std::int64_t> out(v.begin(), v.end());
  std::int64_t g = gcd_of(v);
  if (g > 1)
    for (auto& x : out) x /= g;
  return out;
}

inline Wide dot(std::span<const Wide> a, std::span<const std::int64_t> b) {
  Wide s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s = wide_add(s, wide_mul(a[i], b[i]));
  return s;
}

inline std::int64_t dot(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s = checked_add(s, checked_mul(a[i], b[i]));
  return s;
}

// Extended Euclid: returns g = gcd(a, b) >= 0 and sets x, y with a x + b y = g.
inline std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& x, std::int64_t& y) {
  std::int64_t old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::int64_t tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  x = old_s;
  y = old_t;
  return old_r;
}

// Exact determinant of a square matrix (Bareiss elimination over GMP).
mpz_class determinant(const std::vector<std::vector<mpz_class>>& m);

// Pivot columns of the row echelon form, in increasing order.
std::vector<std::size_t> pivot_columns(std::vector<std::vector<mpz_class>> rows);

// Exact rank of an arbitrary integer matrix.
std::size_t rank(std::vector<std::vector<mpz_class>> rows);

// Fixed-width variants of determinant(), rank() and friends for the small matrices
// of hull computations; none when an intermediate value overflows int128,
// in which case callers fall back to the GMP versions.
std::optional<Wide> determinant_small(std::vector<std::vector<Wide>> m);
std::optional<std::size_t> rank_small(std::vector<std::vector<Wide>> rows);
std::optional<std::vector<std::size_t>> pivot_columns_small(std::vector<std::vector<Wide>> rows);
std::optional<std::vector<std::vector<Wide>>> kernel_basis_small(const std::vector<std::vector<Wide>>& rows,
                                                                 std::size_t cols);

// Basis of the integer kernel {x : rows * x = 0}, each vector primitive.
std::vector<std::vector<mpz_class>> kernel_basis(const std::vector<std::vector<mpz_class>>& rows,
                                                 std::size_t cols);

}  // namespace lvt::intmath
