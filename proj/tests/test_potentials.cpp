#include <algorithm>
#include <thread>

#include "doctest.h"
#include "lvt/potentials.hpp"

using namespace lvt;

namespace {

LaurentPoly term(Exponent e, long c = 1) { return LaurentPoly::monomial(std::move(e), c); }

std::vector<std::int64_t> lengths(const MarkovTriple& t) {
  std::vector<std::int64_t> out;
  const auto s = t.sorted();
  for (const auto& e : s.entries()) out.push_back(e.get_si());
  return out;
}

// Walks an explicit index path from Clifford, one advance() per index.
PotentialRecord walk(std::size_t n, const std::vector<int>& path) {
  auto rec = clifford(n);
  for (int k : path) rec = advance(rec, mutate_triple(rec.triple, k));
  return rec;
}

}  // namespace

TEST_CASE("clifford examples") {
  const auto c2 = clifford(2);
  CHECK(c2.poly == term({1, 0}) + term({0, 1}) + term({-1, -1}));
  CHECK(c2.triple == MarkovTriple::root());
  CHECK(c2.steps.empty());
  CHECK(clifford(4).poly.size() == 5);
  CHECK_THROWS_AS(clifford(1), DimensionTooSmall);
  CHECK(summarize(c2.poly).triangle_lengths == std::vector<std::int64_t>{1, 1, 1});
}

TEST_CASE("chekanov examples") {
  const auto k2 = chekanov(2);
  CHECK(k2.poly == term({0, 1}) + term({-1, -2}) + term({0, -2}, 2) + term({1, -2}));
  CHECK(summarize(k2.poly).triangle_lengths == std::vector<std::int64_t>{1, 1, 2});

  const auto k3 = chekanov(3);
  CHECK(k3.poly ==
        term({0, 1, 0}) + term({0, 0, 1}) + term({-1, -2, -1}) + term({0, -2, -1}, 2) + term({1, -2, -1}));
  CHECK(newton_polytope(k3.poly).vertices() ==
        std::vector<Point>{{-1, -2, -1}, {0, 0, 1}, {0, 1, 0}, {1, -2, -1}});
  CHECK(replay_steps(3, k3.steps) == k3.poly);
}

TEST_CASE("the first walk step agrees with chekanov up to a unimodular map") {
  for (std::size_t n : {2u, 3u, 4u}) {
    const auto v = vianna(MarkovTriple(1, 1, 2), n);
    const auto k = chekanov(n);
    CHECK(v.poly.size() == k.poly.size());
    CHECK(unimodular_equivalent(newton_polytope(v.poly), newton_polytope(k.poly)).has_value());
  }
}

TEST_CASE("seed candidates") {
  CHECK(seed_candidates(clifford(2)).size() == 3);
  const auto k2 = chekanov(2);
  const auto cands = seed_candidates(k2);
  REQUIRE(cands.size() == 3);
  std::vector<std::vector<std::int64_t>> children;
  for (const auto& c : cands) children.push_back(summarize(mutate(k2.poly, c)).triangle_lengths);
  std::sort(children.begin(), children.end());
  CHECK(children == std::vector<std::vector<std::int64_t>>{{1, 1, 1}, {1, 2, 5}, {1, 2, 5}});
  // Sorted by (w, u).
  CHECK(std::is_sorted(cands.begin(), cands.end(), [](const MutationDatum& a, const MutationDatum& b) {
    return std::tie(a.w, a.u) < std::tie(b.w, b.u);
  }));
}

TEST_CASE("normalization sends the seed to the standard datum") {
  for (const auto& c : seed_candidates(chekanov(3))) {
    const auto a = normalization_for(c);
    CHECK(a.apply(c.u) == Exponent{1, 0, 0});
    // w o A^-1 = e2: check on the images of the basis vectors.
    const auto inv = a.inverse();
    for (std::size_t i = 0; i < 3; ++i) {
      Exponent e(3, 0);
      e[i] = 1;
      const auto v = inv.apply(e);
      std::int64_t wv = 0;
      for (std::size_t r = 0; r < 3; ++r) wv += c.w[r] * v[r];
      CHECK(wv == (i == 1 ? 1 : 0));
    }
  }
}

TEST_CASE("walk examples") {
  const auto r2 = vianna(MarkovTriple(1, 2, 5), 2);
  const auto s2 = summarize(r2.poly);
  CHECK(s2.triangle_lengths == std::vector<std::int64_t>{1, 2, 5});
  CHECK(s2.vertices.size() == 3);
  CHECK(is_fano(newton_polytope(r2.poly)).fano());
  CHECK(r2.steps.size() == 2);

  const auto r3 = vianna(MarkovTriple(13, 5, 1), 3);
  CHECK(r3.triple.sorted() == MarkovTriple(1, 5, 13));
  const auto s3 = summarize(r3.poly);
  CHECK(s3.triangle_lengths == std::vector<std::int64_t>{1, 5, 13});
  CHECK(s3.vertices.size() == 4);
  CHECK(is_fano(newton_polytope(r3.poly)).fano());
  CHECK(r3.path == canonical_node(MarkovTriple(1, 5, 13)).path);
}

TEST_CASE("walk invariants for every triple up to 433") {
  for (std::size_t n : {2u, 3u, 4u}) {
    for (const auto& node : enumerate_tree(433)) {
      const auto rec = vianna(node.triple, n);
      CAPTURE(node.triple.to_string());
      CAPTURE(n);
      CHECK(rec.steps.size() == node.path.size());
      CHECK(replay_steps(n, rec.steps) == rec.poly);
      CHECK(summarize(rec.poly).triangle_lengths == lengths(node.triple));
      UnimodularMap basis = UnimodularMap::identity(n);
      for (const auto& s : rec.steps) {
        basis = s.normalization * basis;
        // Every intermediate potential is Fano with the right triangle.
        CHECK(is_fano(LatticePolytope::hull(n, s.after.vertices)).fano());
        CHECK(s.after.triangle_lengths == lengths(s.target));
        CHECK(s.matches >= 1);
        CHECK(s.matches <= s.candidates);
      }
      CHECK(basis == rec.basis);
    }
  }
}

TEST_CASE("extremal graded pieces: one side of the standard grading is a single vertex") {
  for (const auto& node : enumerate_tree(433)) {
    if (node.path.empty()) continue;
    const auto rec = vianna(node.triple, 3);
    const auto planar = rec.poly - inert_part(3);
    const auto pieces = grade(planar, Exponent{0, 1, 0});
    const bool top_monomial = pieces.rbegin()->second.size() == 1;
    const bool bottom_monomial = pieces.begin()->second.size() == 1;
    CAPTURE(node.triple.to_string());
    CHECK((top_monomial || bottom_monomial));
    // The other extreme is the full binomial row of the mutated edge.
    const auto& row = top_monomial ? pieces.begin()->second : pieces.rbegin()->second;
    CHECK(row.size() >= 2);
  }
}

TEST_CASE("detours through other triples give equivalent potentials") {
  for (const auto& node : enumerate_tree(34)) {
    const auto target = newton_polytope(vianna(node.triple, 3).poly);
    for (std::size_t at = 0; at <= node.path.size(); ++at) {
      if (at == node.path.size() && !node.path.empty()) break;  // keep detours below the target
      for (int k = 0; k < 3; ++k) {
        auto path = node.path;
        path.insert(path.begin() + static_cast<long>(at), {k, k});
        CAPTURE(node.triple.to_string());
        CAPTURE(at);
        CAPTURE(k);
        const auto rec = walk(3, path);
        CHECK(same_multiset(rec.triple, node.triple));
        CHECK(unimodular_equivalent(newton_polytope(rec.poly), target).has_value());
      }
    }
  }
}

TEST_CASE("strict mode rejects ambiguous seeds") {
  // Three divisible seeds of chekanov reach one of two shapes; two reach (1,2,5).
  CHECK_THROWS_AS(advance(chekanov(2), MarkovTriple(1, 2, 5), true), AmbiguousSeed);
  CHECK_NOTHROW(advance(chekanov(2), MarkovTriple(1, 2, 5), false));
  // Going back to the root is unambiguous.
  CHECK_NOTHROW(advance(chekanov(2), MarkovTriple(1, 1, 1), true));
}

TEST_CASE("concurrent builds agree with sequential ones") {
  ViannaBuilder sequential;
  ViannaBuilder shared;
  const auto nodes = enumerate_tree(433);
  std::vector<std::jthread> workers;
  for (int w = 0; w < 8; ++w)
    workers.emplace_back([&, w] {
      for (std::size_t i = 0; i < nodes.size(); ++i) shared.build(nodes[(i + w) % nodes.size()].triple, 3);
    });
  workers.clear();
  CHECK(shared.cached() == nodes.size());
  for (const auto& node : nodes) CHECK(shared.build(node.triple, 3)->poly == sequential.build(node.triple, 3)->poly);
}

TEST_CASE("lift structure") {
  CHECK(check_lift_structure(chekanov(3)).passed());
  for (std::size_t n : {3u, 4u, 5u}) CHECK(lift_report(clifford(n)).passed());
  for (const auto& node : enumerate_tree(433)) CHECK(lift_report(vianna(node.triple, 4)).passed());
  CHECK_THROWS_AS(lift_report(clifford(2)), DimensionTooSmall);

  // Shift one non-inert term along z: its z-exponent no longer follows the
  // affine rule.
  auto rec = vianna(MarkovTriple(1, 2, 5), 3);
  auto e = (rec.poly - inert_part(3)).support().front();
  rec.poly.add_term(e, -rec.poly.coefficient(e));
  e[2] += 1;
  rec.poly.add_term(e, 1);
  const auto report = lift_report(rec);
  CHECK_FALSE(report.passed());
  const auto failing = report.failing();
  CHECK(std::find(failing.begin(), failing.end(), 2) != failing.end());
  CHECK_THROWS_AS(check_lift_structure(rec), StructureViolation);
}
