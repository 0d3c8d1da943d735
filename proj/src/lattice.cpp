#include "lvt/lattice.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace lvt {

using intmath::checked_add;
using intmath::checked_mul;
using intmath::checked_sub;
using intmath::Wide;

namespace {

mpz_class big(std::int64_t x) { return mpz_class(static_cast<long>(x)); }

Wide to_wide(const mpz_class& v) {
  // |v| < 2^126 keeps every later inner product check meaningful.
  if (mpz_sizeinbase(v.get_mpz_t(), 2) > 126) throw ArithmeticOverflow("normal vector exceeds int128");
  mpz_class a = abs(v);
  mpz_class hi = a >> 64;
  mpz_class lo = a - (hi << 64);
  unsigned __int128 u = (static_cast<unsigned __int128>(mpz_get_ui(hi.get_mpz_t())) << 64) |
                        mpz_get_ui(lo.get_mpz_t());
  Wide w = static_cast<Wide>(u);
  return sgn(v) < 0 ? -w : w;
}

std::vector<std::vector<mpz_class>> to_big(const std::vector<std::vector<Wide>>& rows) {
  std::vector<std::vector<mpz_class>> out;
  for (const auto& row : rows) {
    std::vector<mpz_class> b;
    for (auto x : row) b.push_back(intmath::to_mpz(x));
    out.push_back(std::move(b));
  }
  return out;
}

Point difference(const Point& a, const Point& b) {
  Point d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = checked_sub(a[i], b[i]);
  return d;
}

std::size_t affine_rank(const std::vector<Point>& pts) {
  if (pts.size() < 2) return 0;
  {
    std::vector<std::vector<Wide>> small;
    for (std::size_t i = 1; i < pts.size(); ++i) {
      std::vector<Wide> row;
      for (std::size_t j = 0; j < pts[i].size(); ++j) row.push_back(Wide(pts[i][j]) - Wide(pts[0][j]));
      small.push_back(std::move(row));
    }
    if (auto r = intmath::rank_small(std::move(small))) return *r;
  }
  std::vector<std::vector<mpz_class>> rows;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    std::vector<mpz_class> row;
    for (std::size_t j = 0; j < pts[i].size(); ++j) row.push_back(big(pts[i][j]) - big(pts[0][j]));
    rows.push_back(std::move(row));
  }
  return intmath::rank(rows);
}

// True when c lies on the line through a and b: every 2x2 minor of the
// differences vanishes.
bool collinear(const Point& a, const Point& b, const Point& c) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      const Wide u0 = Wide(b[i]) - a[i], u1 = Wide(b[j]) - a[j];
      const Wide v0 = Wide(c[i]) - a[i], v1 = Wide(c[j]) - a[j];
      if (u0 * v1 != u1 * v0) return false;
    }
  return true;
}

// Hyperplane through k points of Z^k, as a primitive normal; empty when the
// points are affinely dependent.
std::optional<std::vector<Wide>> hyperplane_normal_small(const std::vector<const Point*>& pts, std::size_t k) {
  std::vector<std::vector<Wide>> rows(pts.size() - 1, std::vector<Wide>(k));
  for (std::size_t i = 1; i < pts.size(); ++i)
    for (std::size_t j = 0; j < k; ++j) rows[i - 1][j] = Wide((*pts[i])[j]) - Wide((*pts[0])[j]);
  auto kernel = intmath::kernel_basis_small(rows, k);
  if (!kernel) return std::nullopt;
  // The primitive normal, up to sign; callers orient it.
  if (kernel->size() != 1) return std::vector<Wide>{};
  return std::move(kernel->front());
}

std::vector<Wide> hyperplane_normal(const std::vector<const Point*>& pts, std::size_t k) {
  if (auto small = hyperplane_normal_small(pts, k)) return *small;
  std::vector<std::vector<mpz_class>> rows;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    std::vector<mpz_class> row;
    for (std::size_t j = 0; j < k; ++j) row.push_back(big((*pts[i])[j]) - big((*pts[0])[j]));
    rows.push_back(std::move(row));
  }
  std::vector<mpz_class> normal(k);
  mpz_class g = 0;
  for (std::size_t col = 0; col < k; ++col) {
    std::vector<std::vector<mpz_class>> minor;
    for (const auto& row : rows) {
      std::vector<mpz_class> r;
      for (std::size_t j = 0; j < k; ++j)
        if (j != col) r.push_back(row[j]);
      minor.push_back(std::move(r));
    }
    normal[col] = intmath::determinant(minor);
    if (col % 2 == 1) normal[col] = -normal[col];
    g = gcd(g, normal[col]);
  }
  if (g == 0) return {};
  std::vector<Wide> out;
  for (auto& x : normal) out.push_back(to_wide(x / g));
  return out;
}

// Facets of the hull of full-dimensional points in Z^k, by checking every
// affinely independent k-subset.
std::vector<Facet> brute_force_facets(const std::vector<Point>& pts, std::size_t k) {
  std::set<std::pair<std::vector<Wide>, Wide>> found;
  const std::size_t n = pts.size();
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    std::vector<const Point*> subset;
    for (auto i : idx) subset.push_back(&pts[i]);
    auto normal = hyperplane_normal(subset, k);
    if (!normal.empty()) {
      Wide offset = intmath::dot(normal, pts[idx[0]]);
      bool pos = false, neg = false;
      for (const auto& p : pts) {
        Wide v = intmath::dot(normal, p);
        if (v > offset) pos = true;
        if (v < offset) neg = true;
        if (pos && neg) break;
      }
      if (!(pos && neg)) {
        if (pos) {
          for (auto& x : normal) x = -x;
          offset = -offset;
        }
        found.emplace(std::move(normal), offset);
      }
    }
    // next combination
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  std::vector<Facet> out;
  for (auto& [normal, offset] : found) out.push_back(Facet{normal, offset});
  return out;
}

std::vector<std::size_t> closure(const std::vector<std::vector<bool>>& incidence,
                                 const std::vector<std::size_t>& subset) {
  const std::size_t nf = incidence.empty() ? 0 : incidence.front().size();
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < incidence.size(); ++v) {
    bool in = true;
    for (std::size_t f = 0; f < nf && in; ++f) {
      bool common = std::all_of(subset.begin(), subset.end(),
                                [&](std::size_t s) { return incidence[s][f]; });
      if (common && !incidence[v][f]) in = false;
    }
    if (in) out.push_back(v);
  }
  return out;
}

}  // namespace

LatticePolytope LatticePolytope::hull(std::size_t dim, std::vector<Point> points) {
  if (points.empty()) throw EmptyPolynomial("convex hull of an empty point set");
  for (const auto& p : points)
    if (p.size() != dim) throw DimensionMismatch("point has the wrong dimension");
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  LatticePolytope out;
  out.dim_ = dim;

  // Affine hull: grow an affinely independent set, tracking the orthogonal
  // complement of its direction space.
  const Point& origin = points.front();
  std::vector<std::vector<Wide>> dirs;
  std::vector<std::vector<Wide>> complement;
  for (std::size_t i = 0; i < dim; ++i) {
    std::vector<Wide> e(dim, 0);
    e[i] = 1;
    complement.push_back(std::move(e));
  }
  std::vector<std::size_t> basis{0};
  for (std::size_t i = 1; i < points.size() && dirs.size() < dim; ++i) {
    Point d = difference(points[i], origin);
    bool inside = std::all_of(complement.begin(), complement.end(),
                              [&](const auto& c) { return intmath::dot(c, d) == 0; });
    if (inside) continue;
    dirs.emplace_back(d.begin(), d.end());
    basis.push_back(i);
    if (auto small = intmath::kernel_basis_small(dirs, dim)) {
      complement = std::move(*small);
      continue;
    }
    complement.clear();
    for (auto& c : intmath::kernel_basis(to_big(dirs), dim)) {
      std::vector<Wide> w;
      for (auto& x : c) w.push_back(to_wide(x));
      complement.push_back(std::move(w));
    }
  }
  const std::size_t k = dirs.size();
  out.affine_dim_ = k;
  for (auto& c : complement) out.equations_.push_back(Facet{c, intmath::dot(c, origin)});

  if (k == 0) {
    out.vertices_ = {origin};
    out.build_faces();
    return out;
  }

  // Coordinates on which the affine hull projects isomorphically.
  auto small_coords = intmath::pivot_columns_small(dirs);
  const auto coords = small_coords ? std::move(*small_coords) : intmath::pivot_columns(to_big(dirs));
  std::vector<Point> proj(points.size(), Point(k));
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = 0; j < k; ++j) proj[i][j] = points[i][coords[j]];

  // Refine: add the extreme point beyond each facet of the current candidate
  // hull until no input point lies outside.
  std::vector<std::size_t> cand = basis;
  std::vector<Facet> facets;
  while (true) {
    std::vector<Point> cand_pts;
    for (auto i : cand) cand_pts.push_back(proj[i]);
    facets = brute_force_facets(cand_pts, k);
    std::set<std::size_t> added;
    for (const auto& f : facets) {
      std::optional<std::size_t> best;
      Wide best_val = 0;
      for (std::size_t i = 0; i < proj.size(); ++i) {
        Wide v = intmath::dot(f.normal, proj[i]);
        if (v <= f.offset) continue;
        if (!best || v > best_val || (v == best_val && proj[i] > proj[*best])) {
          best = i;
          best_val = v;
        }
      }
      if (best) added.insert(*best);
    }
    if (added.empty()) break;
    cand.insert(cand.end(), added.begin(), added.end());
  }

  // Keep candidates whose tight facet normals have full rank.
  std::vector<Point> verts;
  for (auto i : cand) {
    std::vector<std::vector<Wide>> tight;
    for (const auto& f : facets)
      if (intmath::dot(f.normal, proj[i]) == f.offset) tight.push_back(f.normal);
    auto r = intmath::rank_small(tight);
    if (!r) r = intmath::rank(to_big(tight));
    if (*r == k) verts.push_back(points[i]);
  }
  std::sort(verts.begin(), verts.end());
  out.vertices_ = std::move(verts);

  for (const auto& f : facets) {
    std::vector<Wide> ambient(dim, 0);
    for (std::size_t j = 0; j < k; ++j) ambient[coords[j]] = f.normal[j];
    out.facets_.push_back(Facet{std::move(ambient), f.offset});
  }
  out.build_faces();
  return out;
}

void LatticePolytope::build_faces() {
  incidence_.assign(vertices_.size(), std::vector<bool>(facets_.size(), false));
  for (std::size_t v = 0; v < vertices_.size(); ++v)
    for (std::size_t f = 0; f < facets_.size(); ++f)
      incidence_[v][f] = intmath::dot(facets_[f].normal, vertices_[v]) == facets_[f].offset;

  edges_.clear();
  two_faces_.clear();
  if (affine_dim_ == 0) return;
  const std::size_t nv = vertices_.size();
  for (std::size_t i = 0; i < nv; ++i)
    for (std::size_t j = i + 1; j < nv; ++j)
      if (closure(incidence_, {i, j}).size() == 2) edges_.emplace_back(i, j);

  if (affine_dim_ < 2) return;
  std::set<std::vector<std::size_t>> seen;
  for (std::size_t i = 0; i < nv; ++i)
    for (std::size_t j = i + 1; j < nv; ++j)
      for (std::size_t l = j + 1; l < nv; ++l) {
        if (collinear(vertices_[i], vertices_[j], vertices_[l])) continue;
        auto face = closure(incidence_, {i, j, l});
        if (seen.count(face)) continue;
        std::vector<Point> pts;
        for (auto v : face) pts.push_back(vertices_[v]);
        if (affine_rank(pts) == 2) {
          seen.insert(face);
          two_faces_.push_back(face);
        }
      }
  std::sort(two_faces_.begin(), two_faces_.end());
}

std::vector<std::size_t> LatticePolytope::facets_at(std::size_t i) const {
  std::vector<std::size_t> out;
  for (std::size_t f = 0; f < facets_.size(); ++f)
    if (incidence_.at(i)[f]) out.push_back(f);
  return out;
}

bool LatticePolytope::contains(const Point& x) const {
  if (x.size() != dim_) throw DimensionMismatch("point has the wrong dimension");
  if (affine_dim_ == 0) return x == vertices_.front();
  for (const auto& e : equations_)
    if (intmath::dot(e.normal, x) != e.offset) return false;
  for (const auto& f : facets_)
    if (intmath::dot(f.normal, x) > f.offset) return false;
  return true;
}

bool LatticePolytope::strictly_contains(const Point& x) const {
  if (!contains(x)) return false;
  if (affine_dim_ == 0) return true;
  for (const auto& f : facets_)
    if (intmath::dot(f.normal, x) == f.offset) return false;
  return true;
}

LatticePolytope newton_polytope(const LaurentPoly& f) {
  if (f.is_zero()) throw EmptyPolynomial("Newton polytope of the zero polynomial");
  return LatticePolytope::hull(f.dim(), f.support());
}

FaceLattice faces(const LatticePolytope& p) { return FaceLattice{p.edges(), p.two_faces()}; }

std::int64_t affine_length(const Point& p, const Point& q) {
  if (p.size() != q.size()) throw DimensionMismatch("segment endpoints differ in dimension");
  std::int64_t g = intmath::gcd_of(difference(q, p));
  if (g == 0) throw DegenerateSegment("affine length of a degenerate segment");
  return g;
}

FanoReport is_fano(const LatticePolytope& p) {
  FanoReport r;
  r.full_dimensional = p.full_dimensional();
  r.origin_interior = r.full_dimensional && p.strictly_contains(Point(p.dim(), 0));
  for (const auto& v : p.vertices())
    if (intmath::gcd_of(v) != 1) r.non_primitive.push_back(v);
  r.primitive_vertices = r.non_primitive.empty();
  return r;
}

bool is_simplex(const LatticePolytope& p) {
  return p.full_dimensional() && p.vertices().size() == p.dim() + 1;
}

LatticePolytope combinatorial_mutate(const LatticePolytope& p, const MutationDatum& d) {
  const std::size_t n = p.dim();
  if (d.w.size() != n) throw DimensionMismatch("mutation datum dimension differs");
  // Height function for which nonnegative slices grow by h*[0,u].
  Exponent height = d.w;
  if (d.sign == MutationSign::Minus)
    for (auto& x : height) x = -x;

  auto shifted = [&](const Point& v, std::int64_t t) {
    Point out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = checked_add(v[i], checked_mul(t, d.u[i]));
    return out;
  };

  const auto& verts = p.vertices();
  std::vector<std::int64_t> h(verts.size());
  for (std::size_t i = 0; i < verts.size(); ++i) h[i] = intmath::dot(height, verts[i]);

  std::vector<Point> lattice_pts;
  for (std::size_t i = 0; i < verts.size(); ++i) {
    if (h[i] >= 0) {
      lattice_pts.push_back(verts[i]);
      lattice_pts.push_back(shifted(verts[i], h[i]));
      continue;
    }
    const std::int64_t k = -h[i];
    bool ok = false;
    if (p.contains(shifted(verts[i], k))) {
      lattice_pts.push_back(verts[i]);
      ok = true;
    }
    Point down = shifted(verts[i], -k);
    if (p.contains(down)) {
      lattice_pts.push_back(down);
      ok = true;
    }
    if (!ok) throw NotMutable(intmath::dot(d.w, verts[i]), LaurentPoly(n));
  }

  // Edges crossing height 0 meet it in possibly non-lattice points; scale
  // everything by a common denominator and divide back afterwards.
  struct Crossing {
    Point numer;
    std::int64_t denom;
  };
  std::vector<Crossing> crossings;
  std::int64_t scale = 1;
  for (const auto& [i, j] : p.edges()) {
    std::size_t a = i, b = j;
    if (h[a] < 0) std::swap(a, b);
    if (!(h[a] > 0 && h[b] < 0)) continue;
    const std::int64_t den = checked_sub(h[a], h[b]);
    Point num(n);
    for (std::size_t c = 0; c < n; ++c)
      num[c] = checked_sub(checked_mul(h[a], verts[b][c]), checked_mul(h[b], verts[a][c]));
    const std::int64_t g = std::gcd(intmath::gcd_of(num), den);
    for (auto& x : num) x /= g;
    crossings.push_back(Crossing{num, den / g});
    scale = std::lcm(scale, den / g);
  }

  std::vector<Point> scaled;
  for (const auto& q : lattice_pts) {
    Point s(n);
    for (std::size_t c = 0; c < n; ++c) s[c] = checked_mul(q[c], scale);
    scaled.push_back(std::move(s));
  }
  for (const auto& cr : crossings) {
    Point s(n);
    for (std::size_t c = 0; c < n; ++c) s[c] = checked_mul(cr.numer[c], scale / cr.denom);
    scaled.push_back(std::move(s));
  }
  auto scaled_hull = LatticePolytope::hull(n, std::move(scaled));
  std::vector<Point> result;
  for (const auto& v : scaled_hull.vertices()) {
    Point q(n);
    for (std::size_t c = 0; c < n; ++c) {
      if (v[c] % scale != 0) throw Error("combinatorial mutation produced a non-lattice vertex");
      q[c] = v[c] / scale;
    }
    result.push_back(std::move(q));
  }
  return LatticePolytope::hull(n, std::move(result));
}

LatticePolytope transform(const LatticePolytope& p, const UnimodularMap& m) {
  std::vector<Point> pts;
  for (const auto& v : p.vertices()) pts.push_back(m.apply(v));
  return LatticePolytope::hull(p.dim(), std::move(pts));
}

std::optional<UnimodularMap> unimodular_equivalent(const LatticePolytope& p,
                                                   const LatticePolytope& q) {
  if (!is_simplex(p) || !is_simplex(q))
    throw UnsupportedShape("unimodular equivalence is decided for full-dimensional simplices only");
  const std::size_t n = p.dim();
  if (q.dim() != n) return std::nullopt;
  const auto& pv = p.vertices();
  const auto& qv = q.vertices();

  // n linearly independent vertices of P as the columns of B; the left-out
  // vertex is checked afterwards.
  std::size_t left_out = n + 1;
  std::vector<std::vector<mpz_class>> basis;
  mpz_class det_b;
  for (std::size_t skip = 0; skip <= n; ++skip) {
    std::vector<std::vector<mpz_class>> b(n, std::vector<mpz_class>(n));
    std::size_t col = 0;
    for (std::size_t v = 0; v <= n; ++v) {
      if (v == skip) continue;
      for (std::size_t r = 0; r < n; ++r) b[r][col] = big(pv[v][r]);
      ++col;
    }
    det_b = intmath::determinant(b);
    if (det_b != 0) {
      basis = std::move(b);
      left_out = skip;
      break;
    }
  }
  if (left_out > n) return std::nullopt;  // vertices of P span a proper subspace

  // adj(B), so that B^{-1} = adj(B) / det(B).
  std::vector<std::vector<mpz_class>> adj(n, std::vector<mpz_class>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<std::vector<mpz_class>> minor;
      for (std::size_t r = 0; r < n; ++r) {
        if (r == j) continue;
        std::vector<mpz_class> row;
        for (std::size_t c = 0; c < n; ++c)
          if (c != i) row.push_back(basis[r][c]);
        minor.push_back(std::move(row));
      }
      adj[i][j] = intmath::determinant(minor);
      if ((i + j) % 2 == 1) adj[i][j] = -adj[i][j];
    }

  std::vector<std::size_t> order(n + 1);
  std::iota(order.begin(), order.end(), 0);
  // Each permutation of Q's vertices: the first n are the images of the basis
  // columns, the last one the image of the left-out vertex. Permutations that
  // differ only after position n repeat, which is harmless for n+1 elements.
  do {
    UnimodularMap::Matrix m(n, std::vector<std::int64_t>(n));
    bool integral = true;
    for (std::size_t r = 0; r < n && integral; ++r)
      for (std::size_t c = 0; c < n && integral; ++c) {
        mpz_class s = 0;
        for (std::size_t t = 0; t < n; ++t) s += big(qv[order[t]][r]) * adj[t][c];
        if (!mpz_divisible_p(s.get_mpz_t(), det_b.get_mpz_t())) {
          integral = false;
          break;
        }
        s /= det_b;
        if (!s.fits_slong_p()) {
          integral = false;
          break;
        }
        m[r][c] = s.get_si();
      }
    if (!integral) continue;
    std::optional<UnimodularMap> map;
    try {
      map.emplace(m);
    } catch (const NotUnimodular&) {
      continue;
    }
    if (map->apply(pv[left_out]) == qv[order[n]]) return map;
  } while (std::next_permutation(order.begin(), order.end()));
  return std::nullopt;
}

std::vector<std::vector<Point>> triangulate(const LatticePolytope& p) {
  const std::size_t k = p.affine_dim();
  const auto& verts = p.vertices();
  if (verts.size() == k + 1) return {verts};
  const Point& apex = verts.front();
  std::vector<std::vector<Point>> out;
  for (std::size_t f = 0; f < p.facets().size(); ++f) {
    std::vector<Point> on_facet;
    bool has_apex = false;
    for (std::size_t v = 0; v < verts.size(); ++v) {
      if (intmath::dot(p.facets()[f].normal, verts[v]) != p.facets()[f].offset) continue;
      if (v == 0) has_apex = true;
      on_facet.push_back(verts[v]);
    }
    if (has_apex) continue;
    auto facet_poly = LatticePolytope::hull(p.dim(), on_facet);
    for (auto& simplex : triangulate(facet_poly)) {
      simplex.push_back(apex);
      out.push_back(std::move(simplex));
    }
  }
  return out;
}

PolytopeInvariants invariants(const LatticePolytope& p) {
  if (!p.full_dimensional()) throw UnsupportedShape("invariants need a full-dimensional polytope");
  PolytopeInvariants inv;
  for (const auto& [i, j] : p.edges())
    inv.edge_lengths.push_back(affine_length(p.vertices()[i], p.vertices()[j]));
  std::sort(inv.edge_lengths.begin(), inv.edge_lengths.end());
  inv.vertex_count = p.vertices().size();
  inv.normalized_volume = 0;
  for (const auto& s : triangulate(p)) {
    std::vector<std::vector<mpz_class>> m;
    for (std::size_t i = 1; i < s.size(); ++i) {
      std::vector<mpz_class> row;
      for (std::size_t c = 0; c < p.dim(); ++c) row.push_back(big(s[i][c]) - big(s[0][c]));
      m.push_back(std::move(row));
    }
    inv.normalized_volume += abs(intmath::determinant(m));
  }
  return inv;
}

}  // namespace lvt
