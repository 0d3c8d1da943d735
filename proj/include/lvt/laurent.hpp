#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "lvt/errors.hpp"

namespace lvt {

using Integer = mpz_class;
using Exponent = std::vector<std::int64_t>;

// Sparse Laurent polynomial with integer coefficients in a fixed number of
// variables. Zero coefficients are never stored; iteration over terms() is
// in lexicographic exponent order.
class LaurentPoly {
 public:
  using TermMap = std::map<Exponent, Integer>;

  explicit LaurentPoly(std::size_t dim = 2);

  static LaurentPoly monomial(Exponent e, Integer c = 1);
  static LaurentPoly constant(std::size_t dim, Integer c);
  // x_i, zero-based.
  static LaurentPoly variable(std::size_t dim, std::size_t i);

  std::size_t dim() const { return dim_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  // Zero when the exponent is not in the support.
  Integer coefficient(const Exponent& e) const;

  // Accumulates c into the coefficient of x^e.
  void add_term(const Exponent& e, const Integer& c);

  std::vector<Exponent> support() const;

  LaurentPoly& operator+=(const LaurentPoly& g);
  LaurentPoly& operator-=(const LaurentPoly& g);

  friend LaurentPoly operator+(LaurentPoly f, const LaurentPoly& g) { return f += g; }
  friend LaurentPoly operator-(LaurentPoly f, const LaurentPoly& g) { return f -= g; }
  friend LaurentPoly operator*(const LaurentPoly& f, const LaurentPoly& g);
  friend bool operator==(const LaurentPoly& f, const LaurentPoly& g) {
    return f.dim_ == g.dim_ && f.terms_ == g.terms_;
  }

  // Human-readable form such as "x0*x1 + 2*x1^-1"; for diagnostics only.
  std::string to_string() const;

 private:
  void check_dim(const LaurentPoly& g) const;

  std::size_t dim_;
  TermMap terms_;
};

LaurentPoly add(const LaurentPoly& f, const LaurentPoly& g);
LaurentPoly mul(const LaurentPoly& f, const LaurentPoly& g);
LaurentPoly mul_monomial(const LaurentPoly& f, const Exponent& e, const Integer& c);

// Integer n x n matrix with determinant +1 or -1, acting on exponent vectors
// by v -> M v.
class UnimodularMap {
 public:
  using Matrix = std::vector<std::vector<std::int64_t>>;

  // Throws NotUnimodular if the matrix is not square or det is not +-1.
  explicit UnimodularMap(Matrix m);

  static UnimodularMap identity(std::size_t n);

  std::size_t dim() const { return m_.size(); }
  const Matrix& matrix() const { return m_; }
  int determinant() const { return det_; }

  Exponent apply(const Exponent& v) const;
  UnimodularMap inverse() const;

  // (a * b).apply(v) == a.apply(b.apply(v))
  friend UnimodularMap operator*(const UnimodularMap& a, const UnimodularMap& b);
  friend bool operator==(const UnimodularMap& a, const UnimodularMap& b) { return a.m_ == b.m_; }

 private:
  Matrix m_;
  int det_ = 1;
};

LaurentPoly apply_unimodular(const LaurentPoly& f, const UnimodularMap& m);

// Linear grading <w, e>: degree -> the terms of f at that degree (full
// exponents kept, so the pieces sum back to f).
std::map<std::int64_t, LaurentPoly> grade(const LaurentPoly& f, const Exponent& w);

enum class MutationSign { Minus, Plus };

// Grading vector w and factor exponent u (both primitive, <w,u> = 0).
// Minus divides the degree-i piece by (1 + x^u)^i for i > 0 and multiplies
// negative pieces; Plus is the inverse transformation.
struct MutationDatum {
  Exponent w;
  Exponent u;
  MutationSign sign = MutationSign::Minus;

  // Throws InvalidMutationDatum when the invariants fail.
  MutationDatum(Exponent w, Exponent u, MutationSign sign = MutationSign::Minus);

  // The normalized datum: grading by x_1 (second coordinate), factor 1 + x_0.
  static MutationDatum standard(std::size_t dim, MutationSign sign = MutationSign::Minus);

  MutationDatum inverse() const;

  friend bool operator==(const MutationDatum&, const MutationDatum&) = default;
};

// Divisibility failure: the degree at which it failed and the remainder of
// that graded piece modulo the required power of (1 + x^u).
class NotMutable : public Error {
 public:
  NotMutable(std::int64_t degree, LaurentPoly remainder);
  std::int64_t degree() const { return degree_; }
  const LaurentPoly& remainder() const { return remainder_; }

 private:
  std::int64_t degree_;
  LaurentPoly remainder_;
};

// Sum over degrees i of (1 + x^u)^(+-i) f_i. Throws NotMutable when a division
// is not exact.
LaurentPoly mutate(const LaurentPoly& f, const MutationDatum& d);

// The first degree whose division would fail, or none when mutate(f, d)
// succeeds; skips the multiplications, so it is cheap to try many data.
std::optional<std::int64_t> mutation_obstruction(const LaurentPoly& f, const MutationDatum& d);

// Substitutes 1 for the listed (zero-based) variables; the result lives in
// the remaining variables in their original order.
LaurentPoly specialize_units(const LaurentPoly& f, const std::set<std::size_t>& vars);

// Coefficients of f at p, p + s, ..., q where s is the primitive step from p
// towards q. p == q yields the single coefficient at p.
std::vector<Integer> coefficients_along_segment(const LaurentPoly& f, const Exponent& p,
                                                const Exponent& q);

}  // namespace lvt
