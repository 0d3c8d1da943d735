#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "lvt/intmath.hpp"
#include "lvt/laurent.hpp"

namespace lvt {

using Point = std::vector<std::int64_t>;

// Relative facet <normal, x> <= offset, normal in ambient coordinates.
struct Facet {
  std::vector<intmath::Wide> normal;
  intmath::Wide offset = 0;
};

using Edge = std::pair<std::size_t, std::size_t>;

// Convex hull of finitely many lattice points, computed exactly. The
// polytope may be lower-dimensional; facets are then taken relative to its
// affine hull, which is cut out by equations().
class LatticePolytope {
 public:
  // Throws EmptyPolynomial on an empty point set.
  static LatticePolytope hull(std::size_t dim, std::vector<Point> points);

  std::size_t dim() const { return dim_; }
  std::size_t affine_dim() const { return affine_dim_; }
  bool full_dimensional() const { return affine_dim_ == dim_; }

  // Hull vertices in lexicographic order.
  const std::vector<Point>& vertices() const { return vertices_; }
  const std::vector<Facet>& facets() const { return facets_; }
  // Rows (a, b) meaning <a, x> = b on the affine hull.
  const std::vector<Facet>& equations() const { return equations_; }

  // Vertex-index pairs (i < j), lexicographic.
  const std::vector<Edge>& edges() const { return edges_; }
  // Sorted vertex-index sets of the 2-dimensional faces.
  const std::vector<std::vector<std::size_t>>& two_faces() const { return two_faces_; }

  // Indices of the facets containing vertex i.
  std::vector<std::size_t> facets_at(std::size_t i) const;

  bool contains(const Point& x) const;
  // In the relative interior.
  bool strictly_contains(const Point& x) const;

  friend bool operator==(const LatticePolytope& a, const LatticePolytope& b) {
    return a.dim_ == b.dim_ && a.vertices_ == b.vertices_;
  }

 private:
  void build_faces();

  std::size_t dim_ = 0;
  std::size_t affine_dim_ = 0;
  std::vector<Point> vertices_;
  std::vector<Facet> facets_;
  std::vector<Facet> equations_;
  std::vector<std::vector<bool>> incidence_;  // vertex x facet
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> two_faces_;
};

// Hull of the support. Throws EmptyPolynomial for the zero polynomial.
LatticePolytope newton_polytope(const LaurentPoly& f);

struct FaceLattice {
  std::vector<Edge> edges;
  std::vector<std::vector<std::size_t>> two_faces;
};

FaceLattice faces(const LatticePolytope& p);

// Lattice length of [p, q]: gcd of the coordinate differences. Throws
// DegenerateSegment for p == q.
std::int64_t affine_length(const Point& p, const Point& q);

struct FanoReport {
  bool convex = true;  // hull vertices by construction
  bool full_dimensional = false;
  bool origin_interior = false;
  bool primitive_vertices = false;
  std::vector<Point> non_primitive;

  bool fano() const { return convex && full_dimensional && origin_interior && primitive_vertices; }
};

FanoReport is_fano(const LatticePolytope& p);

bool is_simplex(const LatticePolytope& p);

// Combinatorial counterpart of mutate(). Throws NotMutable with the failing
// grading level when a negative slice lacks the required segment multiple.
LatticePolytope combinatorial_mutate(const LatticePolytope& p, const MutationDatum& d);

// M p for every vertex p.
LatticePolytope transform(const LatticePolytope& p, const UnimodularMap& m);

// A linear unimodular M with M(vert P) = vert Q, or none. Both arguments must
// be full-dimensional simplices (UnsupportedShape otherwise).
std::optional<UnimodularMap> unimodular_equivalent(const LatticePolytope& p,
                                                   const LatticePolytope& q);

struct PolytopeInvariants {
  std::vector<std::int64_t> edge_lengths;  // sorted
  mpz_class normalized_volume;
  std::size_t vertex_count = 0;

  friend bool operator==(const PolytopeInvariants&, const PolytopeInvariants&) = default;
};

// Requires a full-dimensional polytope.
PolytopeInvariants invariants(const LatticePolytope& p);

// Full-dimensional simplices of a pulling triangulation.
std::vector<std::vector<Point>> triangulate(const LatticePolytope& p);

}  // namespace lvt
