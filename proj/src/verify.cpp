#include "lvt/verify.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <sstream>

namespace lvt {

namespace {

std::string join(const std::vector<std::int64_t>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

std::string point_string(const Point& p) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i];
  os << ")";
  return os.str();
}

std::vector<std::int64_t> sorted_entries(const MarkovTriple& t) {
  std::vector<std::int64_t> out;
  const auto s = t.sorted();
  for (const auto& e : s.entries()) out.push_back(e.fits_slong_p() ? e.get_si() : -1);
  return out;
}

Integer binomial(std::uint64_t n, std::uint64_t k) {
  Integer b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return b;
}

void set(Clause& c, bool passed, std::string detail) {
  c.passed = passed;
  c.detail = std::move(detail);
}

void skip(Clause& c, const std::string& why) {
  c.skipped = true;
  c.detail = why;
}

}  // namespace

bool VerificationReport::passed() const {
  for (const auto* c : clauses())
    if (!c->ok()) return false;
  return true;
}

VerificationReport verify_record(const PotentialRecord& rec, ViannaBuilder& builder) {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = rec.dim;
  VerificationReport r{rec.triple, n};
  r.terms = rec.poly.size();

  const auto newt = newton_polytope(rec.poly);
  const auto& verts = newt.vertices();
  r.vertices = verts;

  set(r.simplex, is_simplex(newt),
      std::to_string(verts.size()) + " vertices, affine dimension " + std::to_string(newt.affine_dim()));

  // Distinguished triangle: must be one of the 2-faces with the Markov lengths.
  const auto tri = distinguished_face(rec.poly);
  r.triangle = tri.vertices();
  for (const auto& [i, j] : tri.edges()) r.measured_lengths.push_back(affine_length(r.triangle[i], r.triangle[j]));
  std::sort(r.measured_lengths.begin(), r.measured_lengths.end());
  std::set<std::size_t> tri_idx;
  for (const auto& p : r.triangle) {
    auto it = std::find(verts.begin(), verts.end(), p);
    if (it != verts.end()) tri_idx.insert(static_cast<std::size_t>(it - verts.begin()));
  }
  const std::vector<std::size_t> tri_face(tri_idx.begin(), tri_idx.end());
  const bool is_face = tri_face.size() == 3 &&
                       std::find(newt.two_faces().begin(), newt.two_faces().end(), tri_face) != newt.two_faces().end();
  const auto want = sorted_entries(rec.triple);
  set(r.triangle_lengths, is_face && r.measured_lengths == want,
      std::string(is_face ? "2-face" : "not a 2-face") + " with lengths {" + join(r.measured_lengths) +
          "}, expected {" + join(want) + "}");

  // Edges leaving the triangle, and the apex vertices e_3..e_n.
  for (const auto& [i, j] : newt.edges())
    if (!(tri_idx.count(i) && tri_idx.count(j))) r.other_edge_lengths.push_back(affine_length(verts[i], verts[j]));
  std::sort(r.other_edge_lengths.begin(), r.other_edge_lengths.end());
  if (n == 2) {
    skip(r.unit_edges, "no lifted edges in two variables");
  } else {
    std::vector<Point> apex, expected;
    for (std::size_t v = 0; v < verts.size(); ++v)
      if (!tri_idx.count(v)) apex.push_back(verts[v]);
    for (std::size_t k = 2; k < n; ++k) {
      Point e(n, 0);
      e[k] = 1;
      expected.push_back(e);
    }
    std::sort(expected.begin(), expected.end());
    const bool units = std::all_of(r.other_edge_lengths.begin(), r.other_edge_lengths.end(),
                                   [](std::int64_t l) { return l == 1; });
    set(r.unit_edges, units && apex == expected,
        std::to_string(r.other_edge_lengths.size()) + " other edges, lengths {" + join(r.other_edge_lengths) +
            "}" + (apex == expected ? ", apex vertices are the inert unit vectors" : ", unexpected apex vertices"));
  }

  const auto fr = is_fano(newt);
  std::string fano_detail = fr.fano() ? "origin interior, vertices primitive" : "";
  if (!fr.origin_interior) fano_detail += "origin not interior; ";
  for (const auto& p : fr.non_primitive) fano_detail += "non-primitive " + point_string(p) + "; ";
  set(r.fano, fr.fano(), fano_detail);

  // Vertex coefficients are units; the signs are recorded, not prescribed.
  bool units = true;
  int positive = 0, negative = 0;
  for (const auto& v : verts) {
    Integer c = rec.poly.coefficient(v);
    r.vertex_coefficients.push_back(c);
    if (abs(c) != 1) units = false;
    (c > 0 ? positive : negative)++;
  }
  set(r.vertex_units, units,
      std::to_string(positive) + " vertices with +1, " + std::to_string(negative) + " with -1");

  // Triangle edges carry full binomial rows, signed like their endpoints.
  bool binomial_ok = true;
  std::string binomial_detail;
  for (const auto& [i, j] : tri.edges()) {
    const auto& p = r.triangle[i];
    const auto& q = r.triangle[j];
    const auto coefs = coefficients_along_segment(rec.poly, p, q);
    const std::uint64_t len = coefs.size() - 1;
    const int sign = sgn(rec.poly.coefficient(p)) < 0 ? -1 : 1;
    bool row_ok = true;
    for (std::uint64_t k = 0; k <= len && row_ok; ++k)
      if (coefs[k] != sign * binomial(len, k)) row_ok = false;
    if (!row_ok) {
      binomial_ok = false;
      binomial_detail += "edge " + point_string(p) + "-" + point_string(q) + " is not binomial; ";
    }
  }
  set(r.binomial_edges, binomial_ok,
      binomial_ok ? "rows of length " + join(r.measured_lengths) + " (+1)" : binomial_detail);

  if (n == 2) {
    skip(r.z_projection, "no inert variables");
    skip(r.lift_structure, "no inert variables");
  } else {
    const auto planar = builder.build(rec.triple, 2);
    std::set<std::size_t> inert;
    for (std::size_t k = 2; k < n; ++k) inert.insert(k);
    const auto got = specialize_units(rec.poly, inert);
    const auto expected = planar->poly + LaurentPoly::constant(2, static_cast<long>(n - 2));
    set(r.z_projection, got == expected,
        got == expected ? "inert variables at 1 give the planar potential + " + std::to_string(n - 2)
                        : std::to_string((got - expected).size()) + " differing terms");
    const auto lift = lift_report(rec);
    std::string detail;
    for (int c : lift.failing()) detail += "clause " + std::to_string(c) + " fails; ";
    set(r.lift_structure, lift.passed(), lift.passed() ? "all clauses hold" : detail);
  }

  r.normalized_volume = invariants(newt).normalized_volume;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

VerificationReport verify_theorem(const MarkovTriple& t, std::size_t n, ViannaBuilder& builder) {
  const auto start = std::chrono::steady_clock::now();
  auto rec = builder.build(t, n);
  auto r = verify_record(*rec, builder);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

VerificationReport verify_theorem(const MarkovTriple& t, std::size_t n) {
  return verify_theorem(t, n, default_builder());
}

LaurentPoly wall_crossing_difference(const LaurentPoly& child, const LaurentPoly& parent) {
  const std::size_t n = child.dim();
  if (parent.dim() != n) throw DimensionMismatch("wall-crossing potentials differ in dimension");
  // Clear denominators: multiply both sides by (1 + x)^k.
  std::int64_t k = 0;
  for (const auto& [e, c] : child.terms()) k = std::max<std::int64_t>(k, -e[1]);

  // Substituting y -> y(1+x) turns c x^a y^b into c x^a y^b (1+x)^b; after
  // clearing, (1+x)^(b+k) with b+k >= 0. Expanded term by term.
  LaurentPoly diff(n);
  for (const auto& [e, c] : child.terms()) {
    const std::uint64_t power = static_cast<std::uint64_t>(e[1] + k);
    Exponent x = e;
    for (std::uint64_t j = 0; j <= power; ++j) {
      diff.add_term(x, c * binomial(power, j));
      x[0] = intmath::checked_add(x[0], 1);
    }
  }
  for (const auto& [e, c] : parent.terms()) {
    Exponent x = e;
    for (std::uint64_t j = 0; j <= static_cast<std::uint64_t>(k); ++j) {
      diff.add_term(x, -c * binomial(static_cast<std::uint64_t>(k), j));
      x[0] = intmath::checked_add(x[0], 1);
    }
  }
  return diff;
}

void wall_crossing_check(const MarkovTriple& t, const MarkovTriple& t2, std::size_t n, ViannaBuilder& builder) {
  auto a = builder.build(t, n);
  auto b = builder.build(t2, n);
  const auto& parent = a->path.size() <= b->path.size() ? *a : *b;
  const auto& child = a->path.size() <= b->path.size() ? *b : *a;
  // Parent potential in the child's coordinates.
  const auto align = child.basis * parent.basis.inverse();
  const auto aligned = apply_unimodular(parent.poly, align);
  auto diff = wall_crossing_difference(child.poly, aligned);
  if (!diff.is_zero())
    throw IdentityFailed(std::move(diff), "wall-crossing identity fails between " + parent.triple.to_string() +
                                              " and " + child.triple.to_string());
}

void wall_crossing_check(const MarkovTriple& t, const MarkovTriple& t2, std::size_t n) {
  wall_crossing_check(t, t2, n, default_builder());
}

bool DistinguishResult::passed() const {
  for (const auto& row : matrix)
    for (const auto& c : row)
      if (!c.ok()) return false;
  return true;
}

DistinguishResult distinguish(const std::vector<MarkovTriple>& ts, std::size_t n, ViannaBuilder& builder) {
  DistinguishResult out{ts, n, {}};
  std::vector<LatticePolytope> polys;
  std::vector<PolytopeInvariants> invs;
  for (const auto& t : ts) {
    polys.push_back(newton_polytope(builder.build(t, n)->poly));
    invs.push_back(invariants(polys.back()));
  }
  out.matrix.assign(ts.size(), std::vector<PairCertificate>(ts.size()));
  for (std::size_t i = 0; i < ts.size(); ++i)
    for (std::size_t j = 0; j < ts.size(); ++j) {
      auto& c = out.matrix[i][j];
      c.same_class = ts[i].sorted() == ts[j].sorted();
      if (!c.same_class && invs[i].edge_lengths != invs[j].edge_lengths) {
        c.method = "edge-lengths";
        continue;
      }
      c.witness = unimodular_equivalent(polys[i], polys[j]);
      c.equivalent = c.witness.has_value();
      c.method = c.equivalent ? "witness" : "exhaustive";
    }
  return out;
}

DistinguishResult distinguish(const std::vector<MarkovTriple>& ts, std::size_t n) {
  return distinguish(ts, n, default_builder());
}

}  // namespace lvt
