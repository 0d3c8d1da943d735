#include "lvt/intmath.hpp"

#include <utility>

namespace lvt::intmath {

mpz_class determinant(const std::vector<std::vector<mpz_class>>& input) {
  const std::size_t n = input.size();
  if (n == 0) return 1;
  auto m = input;
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t swap = k + 1;
      while (swap < n && m[swap][k] == 0) ++swap;
      if (swap == n) return 0;
      std::swap(m[k], m[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class v = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        m[i][j] = v;
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

std::optional<Wide> determinant_small(std::vector<std::vector<Wide>> m) {
  const std::size_t n = m.size();
  if (n == 0) return Wide{1};
  Wide prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t swap = k + 1;
      while (swap < n && m[swap][k] == 0) ++swap;
      if (swap == n) return Wide{0};
      std::swap(m[k], m[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Wide a, b, v;
        if (__builtin_mul_overflow(m[i][j], m[k][k], &a) || __builtin_mul_overflow(m[i][k], m[k][j], &b) ||
            __builtin_sub_overflow(a, b, &v))
          return std::nullopt;
        m[i][j] = v / prev;  // exact by Sylvester's identity
      }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

namespace {

// Arithmetic used by the elimination routines below, for GMP integers and
// for int128 with overflow detection.
struct Overflow {};

struct BigOps {
  using T = mpz_class;
  static T mul(const T& a, const T& b) { return a * b; }
  static T sub(const T& a, const T& b) { return a - b; }
  static T gcd(const T& a, const T& b) { return ::gcd(a, b); }
  static T div(const T& a, const T& b) {
    T q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
  }
};

struct WideOps {
  using T = Wide;
  static T mul(T a, T b) {
    T r;
    if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
  static T sub(T a, T b) {
    T r;
    if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
  static T gcd(T a, T b) { return wide_gcd(a, b); }
  static T div(T a, T b) { return a / b; }
};

// Row echelon form by fraction-free elimination; returns pivot columns.
template <class Ops>
std::vector<std::size_t> echelon(std::vector<std::vector<typename Ops::T>>& rows, std::size_t cols) {
  using T = typename Ops::T;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const T g = Ops::gcd(rows[r][c], rows[i][c]);
      const T fa = Ops::div(rows[i][c], g), fb = Ops::div(rows[r][c], g);
      T content = 0;
      for (std::size_t j = 0; j < cols; ++j) {
        rows[i][j] = Ops::sub(Ops::mul(rows[i][j], fb), Ops::mul(rows[r][j], fa));
        content = Ops::gcd(content, rows[i][j]);
      }
      if (content > 1)
        for (auto& x : rows[i]) x = Ops::div(x, content);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class Ops>
std::vector<std::vector<typename Ops::T>> kernel(std::vector<std::vector<typename Ops::T>> rows, std::size_t cols) {
  using T = typename Ops::T;
  auto pivots = echelon<Ops>(rows, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;

  T scale = 1;
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    const T& p = rows[i][pivots[i]];
    scale = Ops::mul(Ops::div(scale, Ops::gcd(scale, p)), p < 0 ? Ops::sub(0, p) : p);
  }
  std::vector<std::vector<T>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    // Rows are reduced so row i reads piv_i * x_{p_i} + sum over free cols = 0.
    std::vector<T> v(cols, 0);
    v[free] = scale;
    for (std::size_t i = 0; i < pivots.size(); ++i)
      v[pivots[i]] = Ops::div(Ops::sub(0, Ops::mul(rows[i][free], scale)), rows[i][pivots[i]]);
    T g = 0;
    for (const auto& x : v) g = Ops::gcd(g, x);
    if (g > 1)
      for (auto& x : v) x = Ops::div(x, g);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace

std::optional<std::size_t> rank_small(std::vector<std::vector<Wide>> rows) {
  if (rows.empty()) return std::size_t{0};
  try {
    return echelon<WideOps>(rows, rows.front().size()).size();
  } catch (const Overflow&) {
    return std::nullopt;
  }
}

std::optional<std::vector<std::size_t>> pivot_columns_small(std::vector<std::vector<Wide>> rows) {
  if (rows.empty()) return std::vector<std::size_t>{};
  try {
    return echelon<WideOps>(rows, rows.front().size());
  } catch (const Overflow&) {
    return std::nullopt;
  }
}

std::optional<std::vector<std::vector<Wide>>> kernel_basis_small(const std::vector<std::vector<Wide>>& rows,
                                                                 std::size_t cols) {
  try {
    return kernel<WideOps>(rows, cols);
  } catch (const Overflow&) {
    return std::nullopt;
  }
}

std::vector<std::size_t> pivot_columns(std::vector<std::vector<mpz_class>> rows) {
  if (rows.empty()) return {};
  return echelon<BigOps>(rows, rows.front().size());
}

std::size_t rank(std::vector<std::vector<mpz_class>> rows) {
  if (rows.empty()) return 0;
  return echelon<BigOps>(rows, rows.front().size()).size();
}

std::vector<std::vector<mpz_class>> kernel_basis(const std::vector<std::vector<mpz_class>>& input,
                                                 std::size_t cols) {
  return kernel<BigOps>(input, cols);
}

}  // namespace lvt::intmath
