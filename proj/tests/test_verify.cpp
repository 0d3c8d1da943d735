#include <algorithm>

#include "doctest.h"
#include "lvt/verify.hpp"

using namespace lvt;

namespace {

std::vector<std::int64_t> lengths(const MarkovTriple& t) {
  std::vector<std::int64_t> out;
  const auto s = t.sorted();
  for (const auto& e : s.entries()) out.push_back(e.get_si());
  return out;
}

// Pascal's triangle, independent of the GMP binomials used by verify.
std::vector<Integer> pascal_row(std::size_t n) {
  std::vector<Integer> row{1};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Integer> next(row.size() + 1, 0);
    for (std::size_t j = 0; j < row.size(); ++j) {
      next[j] += row[j];
      next[j + 1] += row[j];
    }
    row = std::move(next);
  }
  return row;
}

}  // namespace

TEST_CASE("verify_theorem examples") {
  const auto r = verify_theorem(MarkovTriple(1, 1, 2), 3);
  CHECK(r.passed());
  CHECK(r.measured_lengths == std::vector<std::int64_t>{1, 1, 2});
  CHECK(r.other_edge_lengths == std::vector<std::int64_t>{1, 1, 1});
  CHECK(r.triangle.size() == 3);

  const auto c = verify_theorem(MarkovTriple::root(), 4);
  CHECK(c.passed());
  CHECK(c.measured_lengths == std::vector<std::int64_t>{1, 1, 1});
  CHECK(c.other_edge_lengths == std::vector<std::int64_t>(7, 1));
  CHECK(c.normalized_volume == 5);

  const auto f = verify_theorem(MarkovTriple(1, 2, 5), 3);
  CHECK(f.passed());
  CHECK(f.measured_lengths == std::vector<std::int64_t>{1, 2, 5});

  const auto planar = verify_theorem(MarkovTriple(1, 2, 5), 2);
  CHECK(planar.passed());
  CHECK(planar.unit_edges.skipped);
  CHECK(planar.z_projection.skipped);
  CHECK(planar.lift_structure.skipped);
}

TEST_CASE("verify_theorem passes for every triple up to 433 in dimensions 2 to 5") {
  for (std::size_t n = 2; n <= 5; ++n)
    for (const auto& node : enumerate_tree(433)) {
      const auto r = verify_theorem(node.triple, n);
      CAPTURE(node.triple.to_string());
      CAPTURE(n);
      for (const auto* c : r.clauses()) {
        CAPTURE(c->name);
        CAPTURE(c->detail);
        CHECK(c->ok());
      }
      CHECK(r.vertices.size() == n + 1);
      CHECK(r.measured_lengths == lengths(node.triple));
    }
}

TEST_CASE("report witnesses: vertex coefficients and binomial rows") {
  const auto rec = vianna(MarkovTriple(2, 5, 29), 3);
  const auto r = verify_record(rec, default_builder());
  REQUIRE(r.vertex_coefficients.size() == r.vertices.size());
  for (std::size_t i = 0; i < r.vertices.size(); ++i)
    CHECK(r.vertex_coefficients[i] == rec.poly.coefficient(r.vertices[i]));
  // Recheck every triangle edge against Pascal's triangle.
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j) {
      const auto coefs = coefficients_along_segment(rec.poly, r.triangle[i], r.triangle[j]);
      const auto row = pascal_row(coefs.size() - 1);
      const Integer sign = rec.poly.coefficient(r.triangle[i]);
      for (std::size_t k = 0; k < row.size(); ++k) CHECK(coefs[k] == sign * row[k]);
    }
}

TEST_CASE("a corrupted record fails with witnesses") {
  auto rec = vianna(MarkovTriple(1, 2, 5), 3);
  // Double one vertex coefficient.
  const auto v = newton_polytope(rec.poly).vertices().front();
  rec.poly.add_term(v, rec.poly.coefficient(v));
  const auto r = verify_record(rec, default_builder());
  CHECK_FALSE(r.passed());
  CHECK_FALSE(r.vertex_units.passed);
  CHECK_FALSE(r.z_projection.passed);
  CHECK(r.simplex.passed);
}

TEST_CASE("wall_crossing_check examples") {
  CHECK_NOTHROW(wall_crossing_check(MarkovTriple::root(), MarkovTriple(1, 1, 2), 2));
  CHECK_NOTHROW(wall_crossing_check(MarkovTriple(1, 1, 2), MarkovTriple::root(), 3));
  try {
    wall_crossing_check(MarkovTriple::root(), MarkovTriple(1, 2, 5), 2);
    FAIL("non-adjacent pair accepted");
  } catch (const IdentityFailed& e) {
    CHECK_FALSE(e.difference().is_zero());
  }
}

TEST_CASE("wall-crossing difference on explicit polynomials") {
  // Clifford x + y + 1/(xy) and Chekanov y + (1+x)^2/(x y^2) in the
  // standard position: y -> y(1+x) in Chekanov gives y(1+x) + 1/(x y^2).
  const auto k = chekanov(2);
  const auto c = clifford(2);
  const auto aligned = apply_unimodular(c.poly, k.basis);
  CHECK(wall_crossing_difference(k.poly, aligned).is_zero());
  CHECK_FALSE(wall_crossing_difference(k.poly, c.poly).is_zero());
  CHECK_THROWS_AS(wall_crossing_difference(k.poly, clifford(3).poly), DimensionMismatch);
}

TEST_CASE("wall crossing holds on every tree edge up to 433") {
  for (std::size_t n : {2u, 3u})
    for (const auto& node : enumerate_tree(433)) {
      if (node.path.empty()) continue;
      auto shorter = node.path;
      shorter.pop_back();
      CAPTURE(node.triple.to_string());
      CHECK_NOTHROW(wall_crossing_check(replay_path(shorter), node.triple, n));
    }
}

TEST_CASE("distinguish examples") {
  const auto d = distinguish({MarkovTriple(1, 1, 2), MarkovTriple(1, 2, 5)}, 3);
  CHECK(d.passed());
  CHECK(d.matrix[0][1].method == "edge-lengths");
  CHECK_FALSE(d.matrix[0][1].equivalent);
  REQUIRE(d.matrix[0][0].witness.has_value());

  const auto self = distinguish({MarkovTriple::root(), MarkovTriple::root()}, 3);
  CHECK(self.passed());
  REQUIRE(self.matrix[0][1].witness.has_value());
  CHECK(self.matrix[0][1].equivalent);

  CHECK(distinguish({MarkovTriple(1, 2, 5), MarkovTriple(2, 5, 29)}, 4).passed());

  // Orderings of one triple are the same class.
  const auto perm = distinguish({MarkovTriple(1, 5, 13), MarkovTriple(13, 1, 5)}, 3);
  CHECK(perm.passed());
  CHECK(perm.matrix[0][1].equivalent);
}

TEST_CASE("distinguish separates every pair of triples up to 433") {
  std::vector<MarkovTriple> ts;
  for (const auto& node : enumerate_tree(433)) ts.push_back(node.triple);
  for (std::size_t n : {3u, 4u}) {
    const auto d = distinguish(ts, n);
    CHECK(d.passed());
    for (std::size_t i = 0; i < ts.size(); ++i)
      for (std::size_t j = 0; j < ts.size(); ++j) CHECK(d.matrix[i][j].equivalent == (i == j));
  }
}
