#include "lvt/potentials.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <tuple>

namespace lvt {

namespace {

std::vector<std::int64_t> edge_lengths(const LatticePolytope& p) {
  std::vector<std::int64_t> out;
  for (const auto& [i, j] : p.edges()) out.push_back(affine_length(p.vertices()[i], p.vertices()[j]));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::int64_t> sorted_lengths(const MarkovTriple& t) {
  std::vector<std::int64_t> out;
  const auto sorted = t.sorted();
  for (const auto& e : sorted.entries()) {
    if (!e.fits_slong_p()) throw ArithmeticOverflow("Markov entry exceeds int64 lattice lengths");
    out.push_back(e.get_si());
  }
  return out;
}

UnimodularMap embed(const UnimodularMap::Matrix& block, std::size_t n) {
  auto m = UnimodularMap::identity(n).matrix();
  for (std::size_t i = 0; i < block.size(); ++i)
    for (std::size_t j = 0; j < block.size(); ++j) m[i][j] = block[i][j];
  return UnimodularMap(m);
}

// Divisible mutation data, one per edge of the distinguished triangle, in
// lexicographic (w, u) order.
std::vector<MutationDatum> divisible_seeds(const LaurentPoly& poly) {
  const std::size_t n = poly.dim();
  const auto tri = distinguished_face(poly);
  const auto& v = tri.vertices();
  std::vector<MutationDatum> out;
  if (tri.affine_dim() != 2 || v.size() != 3) return out;
  for (const auto& [i, j] : tri.edges()) {
    const std::size_t third = 3 - i - j;
    Exponent d(n);
    for (std::size_t c = 0; c < n; ++c) d[c] = intmath::checked_sub(v[j][c], v[i][c]);
    Exponent w(n, 0);
    w[0] = -d[1];
    w[1] = d[0];
    if (w[0] == 0 && w[1] == 0) continue;
    w = intmath::primitive(w);
    if (intmath::dot(w, v[i]) < intmath::dot(w, v[third]))
      for (auto& x : w) x = -x;
    Exponent u = intmath::primitive(d);
    auto lead = std::find_if(u.begin(), u.end(), [](auto x) { return x != 0; });
    if (*lead < 0)
      for (auto& x : u) x = -x;
    MutationDatum datum(w, u, MutationSign::Minus);
    if (!mutation_obstruction(poly, datum)) out.push_back(datum);
  }
  std::sort(out.begin(), out.end(), [](const MutationDatum& a, const MutationDatum& b) {
    return std::tie(a.w, a.u) < std::tie(b.w, b.u);
  });
  return out;
}

}  // namespace

PotentialRecord clifford(std::size_t n) {
  if (n < 2) throw DimensionTooSmall("potentials need at least two variables");
  LaurentPoly f(n);
  for (std::size_t i = 0; i < n; ++i) f += LaurentPoly::variable(n, i);
  f.add_term(Exponent(n, -1), 1);
  return PotentialRecord{MarkovTriple::root(), n, {}, f, UnimodularMap::identity(n), {}};
}

PotentialRecord chekanov(std::size_t n) {
  auto base = clifford(n);
  // The change of basis e1 -> e1 + e2 makes Clifford mutable along y.
  const auto a = embed({{1, 0}, {1, 1}}, n);
  Exponent w(n, 0), u(n, 0);
  w[0] = 1;
  w[1] = 1;
  u[0] = 1;
  u[1] = -1;
  MutationDatum seed(w, u, MutationSign::Minus);
  auto poly = mutate(apply_unimodular(base.poly, a), MutationDatum::standard(n));
  MarkovTriple target = mutate_triple(base.triple, 2);
  MutationStep step{target, seed, a, 1, 1, summarize(base.poly), summarize(poly)};
  return PotentialRecord{target, n, {2}, poly, a, {step}};
}

LaurentPoly inert_part(std::size_t n) {
  LaurentPoly z(n);
  for (std::size_t r = 2; r < n; ++r) z += LaurentPoly::variable(n, r);
  return z;
}

LatticePolytope distinguished_face(const LaurentPoly& poly) {
  return newton_polytope(poly - inert_part(poly.dim()));
}

NewtonSummary summarize(const LaurentPoly& poly) {
  NewtonSummary s;
  s.vertices = newton_polytope(poly).vertices();
  const auto tri = distinguished_face(poly);
  s.triangle = tri.vertices();
  s.triangle_lengths = edge_lengths(tri);
  return s;
}

std::vector<MutationDatum> seed_candidates(const PotentialRecord& p) {
  return divisible_seeds(p.poly);
}

UnimodularMap normalization_for(const MutationDatum& d) {
  const std::size_t n = d.w.size();
  for (std::size_t r = 2; r < n; ++r)
    if (d.w[r] != 0) throw InvalidMutationDatum("grading must not involve the inert variables");
  std::int64_t s = 0, t = 0;
  if (intmath::ext_gcd(d.w[0], d.w[1], s, t) != 1)
    throw InvalidMutationDatum("grading is not primitive in the (x, y)-plane");
  // Columns u, b, e3, ..., en with <w, b> = 1.
  auto inv = UnimodularMap::identity(n).matrix();
  for (std::size_t r = 0; r < n; ++r) {
    inv[r][0] = d.u[r];
    inv[r][1] = r == 0 ? s : (r == 1 ? t : 0);
  }
  return UnimodularMap(inv).inverse();
}

LaurentPoly replay_steps(std::size_t dim, const std::vector<MutationStep>& steps) {
  LaurentPoly f = clifford(dim).poly;
  for (const auto& s : steps) f = apply_unimodular(mutate(f, s.seed), s.normalization);
  return f;
}

PotentialRecord advance(const PotentialRecord& parent, const MarkovTriple& target, bool strict) {
  const std::size_t step_index = parent.steps.size();
  const auto want = sorted_lengths(target);
  const auto cands = divisible_seeds(parent.poly);
  // Children are compared through their triangles first: the combinatorial
  // image of the parent triangle is cheap, while expanding the potential
  // along a wrong seed can be very large. Only the chosen seed is expanded.
  const auto tri = distinguished_face(parent.poly);
  std::optional<MutationDatum> seed;
  std::size_t matches = 0;
  for (const auto& c : cands) {
    if (edge_lengths(combinatorial_mutate(tri, c)) != want) continue;
    ++matches;
    if (!seed) seed = c;  // lexicographically smallest seed wins
  }
  std::optional<PotentialRecord> chosen;
  if (seed) {
    const auto a = normalization_for(*seed);
    auto child = apply_unimodular(mutate(parent.poly, *seed), a);
    auto after = summarize(child);
    if (after.triangle_lengths == want) {
      PotentialRecord rec{target, parent.dim, parent.path, std::move(child), a * parent.basis, parent.steps};
      for (int k = 0; k < 3; ++k)
        if (mutate_triple(parent.triple, k) == target) {
          rec.path.push_back(k);
          break;
        }
      rec.steps.push_back(MutationStep{target, *seed, a, cands.size(), matches, summarize(parent.poly), after});
      chosen = std::move(rec);
    }
  }
  if (!chosen)
    throw SeedNotFound(step_index, "no divisible seed reaches " + target.to_string() + " at step " +
                                       std::to_string(step_index) + " (" + std::to_string(cands.size()) +
                                       " candidates)");
  if (strict && matches > 1)
    throw AmbiguousSeed(step_index, std::to_string(matches) + " seeds reach " + target.to_string());
  return std::move(*chosen);
}

std::shared_ptr<const PotentialRecord> ViannaBuilder::lookup(const MarkovTriple& sorted, std::size_t n) {
  {
    std::lock_guard lock(mu_);
    auto it = memo_.find({sorted, n});
    if (it != memo_.end()) return it->second;
  }
  if (store_) {
    if (auto rec = store_->load(sorted, n)) {
      std::lock_guard lock(mu_);
      auto [it, _] = memo_.emplace(std::make_pair(sorted, n), std::make_shared<const PotentialRecord>(*rec));
      return it->second;
    }
  }
  return nullptr;
}

std::shared_ptr<const PotentialRecord> ViannaBuilder::publish(PotentialRecord record) {
  auto key = std::make_pair(record.triple.sorted(), record.dim);
  auto ptr = std::make_shared<const PotentialRecord>(std::move(record));
  std::shared_ptr<const PotentialRecord> winner;
  bool inserted = false;
  {
    std::lock_guard lock(mu_);
    auto [it, ins] = memo_.emplace(key, ptr);
    winner = it->second;
    inserted = ins;
  }
  if (inserted && store_) store_->save(*winner);
  return winner;
}

std::shared_ptr<const PotentialRecord> ViannaBuilder::build(const MarkovTriple& t, std::size_t n) {
  if (n < 2) throw DimensionTooSmall("potentials need at least two variables");
  const auto sorted = t.sorted();
  if (auto hit = lookup(sorted, n)) return hit;
  const auto node = canonical_node(t);
  if (node.path.empty()) return publish(clifford(n));
  auto parent_path = node.path;
  parent_path.pop_back();
  auto parent = build(replay_path(parent_path), n);
  return publish(advance(*parent, node.triple, strict_));
}

std::size_t ViannaBuilder::cached() const {
  std::lock_guard lock(mu_);
  return memo_.size();
}

ViannaBuilder& default_builder() {
  static ViannaBuilder builder;
  return builder;
}

PotentialRecord vianna(const MarkovTriple& t, std::size_t n) { return *default_builder().build(t, n); }

std::vector<int> LiftReport::failing() const {
  std::vector<int> out;
  if (!triangle.passed) out.push_back(1);
  if (!affine_lift.passed) out.push_back(2);
  if (!projection.passed) out.push_back(3);
  return out;
}

std::vector<MutationStep> planar_steps(const std::vector<MutationStep>& steps) {
  std::vector<MutationStep> out;
  for (const auto& s : steps) {
    Exponent w{s.seed.w[0], s.seed.w[1]}, u{s.seed.u[0], s.seed.u[1]};
    UnimodularMap::Matrix block{{s.normalization.matrix()[0][0], s.normalization.matrix()[0][1]},
                                {s.normalization.matrix()[1][0], s.normalization.matrix()[1][1]}};
    const auto& m = s.normalization.matrix();
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t c = 2; c < m.size(); ++c)
        if (m[r][c] != 0) throw Error("normalization mixes inert variables into (x, y)");
    // MutationDatum and UnimodularMap validate primitivity and determinant.
    out.push_back(MutationStep{s.target, MutationDatum(w, u, s.seed.sign), UnimodularMap(block), s.candidates,
                               s.matches, {}, {}});
  }
  return out;
}

LiftReport lift_report(const PotentialRecord& p) {
  const std::size_t n = p.dim;
  if (n < 3) throw DimensionTooSmall("lift structure needs at least three variables");
  LiftReport r;

  const auto tri = distinguished_face(p.poly);
  r.triangle.passed = tri.affine_dim() == 2 && tri.vertices().size() == 3;
  {
    std::ostringstream os;
    os << "affine dimension " << tri.affine_dim() << ", " << tri.vertices().size() << " vertices";
    r.triangle.detail = os.str();
  }

  // Inert exponents as affine functions: of y after a mutation (x is the
  // factor direction), of (x, y) for the unmutated Clifford potential.
  const auto support = (p.poly - inert_part(n)).support();
  const std::vector<std::size_t> vars = p.steps.empty() ? std::vector<std::size_t>{0, 1}
                                                        : std::vector<std::size_t>{1};
  r.affine_lift.passed = true;
  for (std::size_t z = 2; z < n; ++z) {
    std::vector<std::vector<mpz_class>> base, ext;
    for (const auto& e : support) {
      std::vector<mpz_class> row;
      for (auto v : vars) row.emplace_back(static_cast<long>(e[v]));
      row.emplace_back(1);
      base.push_back(row);
      row.emplace_back(static_cast<long>(e[z]));
      ext.push_back(std::move(row));
    }
    if (intmath::rank(ext) != intmath::rank(base)) {
      r.affine_lift.passed = false;
      r.affine_lift.detail += "x" + std::to_string(z) + " is not affine in the grading; ";
    }
  }
  if (r.affine_lift.passed) r.affine_lift.detail = "all inert exponents affine";

  try {
    std::set<std::size_t> inert;
    for (std::size_t z = 2; z < n; ++z) inert.insert(z);
    auto planar = replay_steps(2, planar_steps(p.steps));
    auto expected = planar + LaurentPoly::constant(2, static_cast<long>(n - 2));
    auto got = specialize_units(p.poly, inert);
    r.projection.passed = got == expected;
    r.projection.detail = r.projection.passed ? "matches the planar potential plus " + std::to_string(n - 2)
                                              : "difference " + (got - expected).to_string();
  } catch (const Error& e) {
    r.projection.passed = false;
    r.projection.detail = e.what();
  }
  return r;
}

LiftReport check_lift_structure(const PotentialRecord& p) {
  auto r = lift_report(p);
  if (!r.passed()) {
    std::string msg = "lift structure violated in clause";
    for (int c : r.failing()) msg += " " + std::to_string(c);
    throw StructureViolation(r, msg);
  }
  return r;
}

}  // namespace lvt
