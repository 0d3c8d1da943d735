#include "lvt/laurent.hpp"

#include <algorithm>
#include <sstream>

#include "lvt/intmath.hpp"

namespace lvt {

using intmath::checked_add;
using intmath::checked_mul;
using intmath::checked_sub;

LaurentPoly::LaurentPoly(std::size_t dim) : dim_(dim) {}

LaurentPoly LaurentPoly::monomial(Exponent e, Integer c) {
  LaurentPoly p(e.size());
  p.add_term(e, c);
  return p;
}

LaurentPoly LaurentPoly::constant(std::size_t dim, Integer c) {
  return monomial(Exponent(dim, 0), std::move(c));
}

LaurentPoly LaurentPoly::variable(std::size_t dim, std::size_t i) {
  Exponent e(dim, 0);
  e.at(i) = 1;
  return monomial(e, 1);
}

Integer LaurentPoly::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Integer(0) : it->second;
}

void LaurentPoly::add_term(const Exponent& e, const Integer& c) {
  if (e.size() != dim_) throw DimensionMismatch("exponent length differs from polynomial dimension");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

std::vector<Exponent> LaurentPoly::support() const {
  std::vector<Exponent> out;
  out.reserve(terms_.size());
  for (const auto& [e, c] : terms_) out.push_back(e);
  return out;
}

void LaurentPoly::check_dim(const LaurentPoly& g) const {
  if (g.dim_ != dim_) throw DimensionMismatch("polynomials live in different dimensions");
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& g) {
  check_dim(g);
  for (const auto& [e, c] : g.terms_) add_term(e, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& g) {
  check_dim(g);
  for (const auto& [e, c] : g.terms_) add_term(e, -c);
  return *this;
}

LaurentPoly operator*(const LaurentPoly& f, const LaurentPoly& g) {
  f.check_dim(g);
  LaurentPoly out(f.dim_);
  Exponent e(f.dim_);
  for (const auto& [ef, cf] : f.terms_) {
    for (const auto& [eg, cg] : g.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = checked_add(ef[i], eg[i]);
      out.add_term(e, cf * cg);
    }
  }
  return out;
}

std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    Integer mag = abs(c);
    os << (first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + "));
    first = false;
    bool any_var = std::any_of(e.begin(), e.end(), [](auto x) { return x != 0; });
    if (mag != 1 || !any_var) os << mag.get_str() << (any_var ? "*" : "");
    bool first_var = true;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!first_var) os << "*";
      first_var = false;
      os << "x" << i;
      if (e[i] != 1) os << "^" << e[i];
    }
  }
  return os.str();
}

LaurentPoly add(const LaurentPoly& f, const LaurentPoly& g) { return f + g; }

LaurentPoly mul(const LaurentPoly& f, const LaurentPoly& g) { return f * g; }

LaurentPoly mul_monomial(const LaurentPoly& f, const Exponent& e, const Integer& c) {
  if (e.size() != f.dim()) throw DimensionMismatch("monomial exponent length differs");
  LaurentPoly out(f.dim());
  if (c == 0) return out;
  Exponent shifted(f.dim());
  for (const auto& [ef, cf] : f.terms()) {
    for (std::size_t i = 0; i < shifted.size(); ++i) shifted[i] = checked_add(ef[i], e[i]);
    out.add_term(shifted, cf * c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Unimodular maps

UnimodularMap::UnimodularMap(Matrix m) : m_(std::move(m)) {
  const std::size_t n = m_.size();
  std::vector<std::vector<mpz_class>> big(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (m_[i].size() != n) throw NotUnimodular("matrix is not square");
    for (auto x : m_[i]) big[i].emplace_back(static_cast<long>(x));
  }
  mpz_class det = intmath::determinant(big);
  if (det != 1 && det != -1) throw NotUnimodular("determinant is " + det.get_str());
  det_ = det == 1 ? 1 : -1;
}

UnimodularMap UnimodularMap::identity(std::size_t n) {
  Matrix m(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return UnimodularMap(std::move(m));
}

Exponent UnimodularMap::apply(const Exponent& v) const {
  if (v.size() != m_.size()) throw DimensionMismatch("unimodular map and vector dimensions differ");
  Exponent out(v.size(), 0);
  for (std::size_t i = 0; i < m_.size(); ++i) out[i] = intmath::dot(m_[i], v);
  return out;
}

UnimodularMap UnimodularMap::inverse() const {
  // adj(M) / det(M) with det = +-1.
  const std::size_t n = m_.size();
  Matrix inv(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<std::vector<mpz_class>> minor;
      for (std::size_t r = 0; r < n; ++r) {
        if (r == j) continue;
        std::vector<mpz_class> row;
        for (std::size_t c = 0; c < n; ++c)
          if (c != i) row.emplace_back(static_cast<long>(m_[r][c]));
        minor.push_back(std::move(row));
      }
      mpz_class cof = intmath::determinant(minor);
      if ((i + j) % 2 == 1) cof = -cof;
      cof *= det_;
      if (!cof.fits_slong_p()) throw ArithmeticOverflow("inverse entry exceeds int64");
      inv[i][j] = cof.get_si();
    }
  }
  return UnimodularMap(std::move(inv));
}

UnimodularMap operator*(const UnimodularMap& a, const UnimodularMap& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("composing maps of different dimension");
  const std::size_t n = a.dim();
  UnimodularMap::Matrix m(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        m[i][j] = checked_add(m[i][j], checked_mul(a.m_[i][k], b.m_[k][j]));
  return UnimodularMap(std::move(m));
}

LaurentPoly apply_unimodular(const LaurentPoly& f, const UnimodularMap& m) {
  if (m.dim() != f.dim()) throw DimensionMismatch("unimodular map and polynomial dimensions differ");
  LaurentPoly out(f.dim());
  for (const auto& [e, c] : f.terms()) out.add_term(m.apply(e), c);
  return out;
}

// ---------------------------------------------------------------------------
// Grading and mutation

std::map<std::int64_t, LaurentPoly> grade(const LaurentPoly& f, const Exponent& w) {
  if (w.size() != f.dim()) throw DimensionMismatch("grading vector length differs");
  std::map<std::int64_t, LaurentPoly> pieces;
  for (const auto& [e, c] : f.terms()) {
    std::int64_t deg = intmath::dot(w, e);
    auto it = pieces.try_emplace(deg, f.dim()).first;
    it->second.add_term(e, c);
  }
  return pieces;
}

MutationDatum::MutationDatum(Exponent w_, Exponent u_, MutationSign s)
    : w(std::move(w_)), u(std::move(u_)), sign(s) {
  if (w.size() != u.size()) throw InvalidMutationDatum("w and u have different lengths");
  if (!intmath::is_primitive(w)) throw InvalidMutationDatum("grading vector is not primitive");
  if (!intmath::is_primitive(u)) throw InvalidMutationDatum("factor exponent is not primitive");
  if (intmath::dot(w, u) != 0) throw InvalidMutationDatum("<w,u> != 0");
}

MutationDatum MutationDatum::standard(std::size_t dim, MutationSign sign) {
  if (dim < 2) throw DimensionTooSmall("mutation needs at least two variables");
  Exponent w(dim, 0), u(dim, 0);
  w[1] = 1;
  u[0] = 1;
  return MutationDatum(w, u, sign);
}

MutationDatum MutationDatum::inverse() const {
  return MutationDatum(w, u, sign == MutationSign::Minus ? MutationSign::Plus : MutationSign::Minus);
}

NotMutable::NotMutable(std::int64_t degree, LaurentPoly remainder)
    : Error("graded piece of degree " + std::to_string(degree) +
            " is not divisible; remainder " + remainder.to_string()),
      degree_(degree),
      remainder_(std::move(remainder)) {}

namespace {

// Terms on one line base + t*u, as a dense coefficient vector starting at t0.
struct Line {
  std::int64_t t0 = 0;
  std::vector<Integer> coef;
};

// Splits e = base + t*u with base canonical per coset of Z u.
struct LineSplitter {
  const Exponent& u;
  std::size_t pivot = 0;

  explicit LineSplitter(const Exponent& u_) : u(u_) {
    while (u[pivot] == 0) ++pivot;
  }

  std::int64_t param(const Exponent& e) const {
    std::int64_t s = u[pivot] < 0 ? -u[pivot] : u[pivot];
    std::int64_t r = e[pivot] - intmath::floor_div(e[pivot], s) * s;
    return (e[pivot] - r) / u[pivot];
  }

  Exponent point(const Exponent& base, std::int64_t t) const {
    Exponent out(base.size());
    for (std::size_t i = 0; i < base.size(); ++i) out[i] = checked_add(base[i], checked_mul(t, u[i]));
    return out;
  }
};

std::map<Exponent, Line> split_lines(const LaurentPoly& piece, const LineSplitter& split) {
  std::map<Exponent, std::map<std::int64_t, Integer>> sparse;
  for (const auto& [e, c] : piece.terms()) {
    std::int64_t t = split.param(e);
    sparse[split.point(e, checked_sub(0, t))][t] = c;
  }
  std::map<Exponent, Line> lines;
  for (auto& [base, coefs] : sparse) {
    Line line;
    line.t0 = coefs.begin()->first;
    std::int64_t t1 = coefs.rbegin()->first;
    line.coef.assign(static_cast<std::size_t>(t1 - line.t0 + 1), Integer(0));
    for (auto& [t, c] : coefs) line.coef[static_cast<std::size_t>(t - line.t0)] = std::move(c);
    lines.emplace(base, std::move(line));
  }
  return lines;
}

void multiply_by_one_plus_t(std::vector<Integer>& c, std::int64_t times) {
  for (std::int64_t k = 0; k < times; ++k) {
    c.emplace_back(0);
    for (std::size_t j = c.size() - 1; j > 0; --j) c[j] += c[j - 1];
  }
}

// Exact division by (1 + T)^times; false if some remainder is nonzero.
bool divide_by_one_plus_t(std::vector<Integer>& c, std::int64_t times) {
  if (static_cast<std::int64_t>(c.size()) <= times) return false;
  for (std::int64_t k = 0; k < times; ++k) {
    if (c.size() < 2) return false;
    const std::size_t d = c.size() - 1;
    std::vector<Integer> q(d);
    q[d - 1] = c[d];
    for (std::size_t j = d - 1; j > 0; --j) q[j - 1] = c[j] - q[j];
    if (c[0] != q[0]) return false;
    c = std::move(q);
  }
  return true;
}

// Remainder of c modulo (1 + T)^times, by long division against the monic
// divisor.
std::vector<Integer> remainder_mod_one_plus_t(std::vector<Integer> c, std::int64_t times) {
  std::vector<Integer> divisor(1, Integer(1));
  multiply_by_one_plus_t(divisor, times);
  const std::size_t k = divisor.size() - 1;
  for (std::size_t top = c.size(); top-- > k;) {
    Integer lead = c[top];
    if (lead == 0) continue;
    for (std::size_t j = 0; j <= k; ++j) c[top - k + j] -= lead * divisor[j];
  }
  if (c.size() > k) c.resize(k);
  return c;
}

}  // namespace

std::optional<std::int64_t> mutation_obstruction(const LaurentPoly& f, const MutationDatum& d) {
  if (d.w.size() != f.dim()) throw DimensionMismatch("mutation datum dimension differs");
  const LineSplitter split(d.u);
  for (auto& [deg, piece] : grade(f, d.w)) {
    if (deg == 0 || (d.sign == MutationSign::Minus) != (deg > 0)) continue;
    const std::int64_t k = deg < 0 ? -deg : deg;
    for (auto& [base, line] : split_lines(piece, split))
      if (!divide_by_one_plus_t(line.coef, k)) return deg;
  }
  return std::nullopt;
}

LaurentPoly mutate(const LaurentPoly& f, const MutationDatum& d) {
  if (d.w.size() != f.dim()) throw DimensionMismatch("mutation datum dimension differs");
  const LineSplitter split(d.u);
  LaurentPoly out(f.dim());
  for (auto& [deg, piece] : grade(f, d.w)) {
    if (deg == 0) {
      out += piece;
      continue;
    }
    const std::int64_t k = deg < 0 ? -deg : deg;
    const bool divide = (d.sign == MutationSign::Minus) == (deg > 0);
    auto lines = split_lines(piece, split);
    for (auto& [base, line] : lines) {
      if (divide) {
        if (!divide_by_one_plus_t(line.coef, k)) {
          LaurentPoly rem(f.dim());
          for (auto& [b2, l2] : split_lines(piece, split)) {
            auto r = remainder_mod_one_plus_t(l2.coef, k);
            for (std::size_t j = 0; j < r.size(); ++j)
              rem.add_term(split.point(b2, l2.t0 + static_cast<std::int64_t>(j)), r[j]);
          }
          throw NotMutable(deg, std::move(rem));
        }
      } else {
        multiply_by_one_plus_t(line.coef, k);
      }
      for (std::size_t j = 0; j < line.coef.size(); ++j)
        out.add_term(split.point(base, line.t0 + static_cast<std::int64_t>(j)), line.coef[j]);
    }
  }
  return out;
}

LaurentPoly specialize_units(const LaurentPoly& f, const std::set<std::size_t>& vars) {
  for (auto v : vars)
    if (v >= f.dim()) throw DimensionMismatch("specialized variable index out of range");
  LaurentPoly out(f.dim() - vars.size());
  Exponent kept(out.dim());
  for (const auto& [e, c] : f.terms()) {
    std::size_t j = 0;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (!vars.count(i)) kept[j++] = e[i];
    out.add_term(kept, c);
  }
  return out;
}

std::vector<Integer> coefficients_along_segment(const LaurentPoly& f, const Exponent& p,
                                                const Exponent& q) {
  if (p.size() != f.dim() || q.size() != f.dim())
    throw DimensionMismatch("segment endpoints have the wrong dimension");
  Exponent diff(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) diff[i] = checked_sub(q[i], p[i]);
  std::int64_t steps = intmath::gcd_of(diff);
  if (steps == 0) return {f.coefficient(p)};
  Exponent step = intmath::primitive(diff);
  std::vector<Integer> out;
  out.reserve(static_cast<std::size_t>(steps) + 1);
  Exponent cur = p;
  for (std::int64_t s = 0; s <= steps; ++s) {
    out.push_back(f.coefficient(cur));
    for (std::size_t i = 0; i < cur.size(); ++i) cur[i] += step[i];
  }
  return out;
}

}  // namespace lvt
