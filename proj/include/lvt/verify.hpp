#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lvt/potentials.hpp"

namespace lvt {

struct Clause {
  explicit Clause(std::string n = {}) : name(std::move(n)) {}

  std::string name;
  bool passed = false;
  bool skipped = false;  // not applicable in this dimension
  std::string detail;

  bool ok() const { return skipped || passed; }
};

// Per-triple certificate of the simplex theorem, with the data that
// witnesses each clause.
struct VerificationReport {
  VerificationReport(MarkovTriple t, std::size_t n) : triple(std::move(t)), dim(n) {}

  MarkovTriple triple;
  std::size_t dim = 2;

  Clause simplex{"simplex"};
  Clause triangle_lengths{"triangle_lengths"};
  Clause unit_edges{"unit_edges"};
  Clause fano{"fano"};
  Clause vertex_units{"vertex_units"};
  Clause binomial_edges{"binomial_edges"};
  Clause z_projection{"z_projection"};
  Clause lift_structure{"lift_structure"};

  std::vector<Point> vertices;
  std::vector<Point> triangle;
  std::vector<std::int64_t> measured_lengths;     // triangle, sorted
  std::vector<std::int64_t> other_edge_lengths;   // remaining edges, sorted
  std::vector<Integer> vertex_coefficients;       // in vertex order
  Integer normalized_volume;
  std::size_t terms = 0;
  double seconds = 0;

  std::vector<const Clause*> clauses() const {
    return {&simplex, &triangle_lengths, &unit_edges, &fano, &vertex_units, &binomial_edges,
            &z_projection, &lift_structure};
  }
  std::vector<Clause*> clauses() {
    return {&simplex, &triangle_lengths, &unit_edges, &fano, &vertex_units, &binomial_edges,
            &z_projection, &lift_structure};
  }
  bool passed() const;
};

VerificationReport verify_record(const PotentialRecord& rec, ViannaBuilder& builder);
VerificationReport verify_theorem(const MarkovTriple& t, std::size_t n, ViannaBuilder& builder);
VerificationReport verify_theorem(const MarkovTriple& t, std::size_t n);

class IdentityFailed : public Error {
 public:
  IdentityFailed(LaurentPoly difference, const std::string& what)
      : Error(what), difference_(std::move(difference)) {}
  // (child after substitution) - (aligned parent), both cleared of the
  // (1 + x) denominators.
  const LaurentPoly& difference() const { return difference_; }

 private:
  LaurentPoly difference_;
};

// Checks child(x, y(1+x), z) = parent in the child's coordinates, where the
// child is whichever triple sits deeper in the tree. Throws IdentityFailed.
void wall_crossing_check(const MarkovTriple& t, const MarkovTriple& t2, std::size_t n, ViannaBuilder& builder);
void wall_crossing_check(const MarkovTriple& t, const MarkovTriple& t2, std::size_t n);

// The identity itself on explicit polynomials: child(x, y(1+x), ...) ==
// parent, denominators cleared. Returns the difference (zero on success).
LaurentPoly wall_crossing_difference(const LaurentPoly& child, const LaurentPoly& parent);

struct PairCertificate {
  bool same_class = false;   // equal sorted triples
  bool equivalent = false;   // a unimodular map was found
  std::string method;        // "edge-lengths", "exhaustive", "witness"
  std::optional<UnimodularMap> witness;

  // Equal classes must be equivalent, distinct classes must not be.
  bool ok() const { return same_class == equivalent; }
};

struct DistinguishResult {
  std::vector<MarkovTriple> triples;
  std::size_t dim = 2;
  std::vector<std::vector<PairCertificate>> matrix;

  bool passed() const;
};

DistinguishResult distinguish(const std::vector<MarkovTriple>& ts, std::size_t n, ViannaBuilder& builder);
DistinguishResult distinguish(const std::vector<MarkovTriple>& ts, std::size_t n);

}  // namespace lvt
