#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lvt/lattice.hpp"
#include "lvt/laurent.hpp"
#include "lvt/markov.hpp"

namespace lvt {

// Shape data of a potential at one point of a walk.
struct NewtonSummary {
  std::vector<Point> vertices;           // of the whole Newton polytope
  std::vector<Point> triangle;           // distinguished 2-face, sorted
  std::vector<std::int64_t> triangle_lengths;  // sorted edge lengths
};

// One walk step: the seed datum is expressed in the coordinates of the
// potential before the step; `normalization` then maps the mutated
// potential into the standard position (seed becomes w = e2, u = e1).
struct MutationStep {
  MarkovTriple target;
  MutationDatum seed;
  UnimodularMap normalization;
  std::size_t candidates = 0;  // divisible seeds offered
  std::size_t matches = 0;     // of those, how many hit the target lengths
  NewtonSummary before;
  NewtonSummary after;
};

struct PotentialRecord {
  MarkovTriple triple;
  std::size_t dim = 2;
  std::vector<int> path;  // canonical mutation-index path of `triple`
  LaurentPoly poly;
  UnimodularMap basis;  // cumulative product of the step normalizations
  std::vector<MutationStep> steps;
};

// x_1 + ... + x_n + 1/(x_1 ... x_n). Throws DimensionTooSmall for n < 2.
PotentialRecord clifford(std::size_t n);

// x_2 + ... + x_n + (1 + x_1)^2 / (x_1 x_2^2 x_3 ... x_n), recorded as one
// step from clifford(n).
PotentialRecord chekanov(std::size_t n);

// The sum x_3 + ... + x_n of the inert variables (zero for n = 2).
LaurentPoly inert_part(std::size_t n);

// Newton polytope of poly minus the inert monomials: the planar triangle
// carrying the Markov lengths.
LatticePolytope distinguished_face(const LaurentPoly& poly);

NewtonSummary summarize(const LaurentPoly& poly);

// Divisible mutation data, one candidate per edge of the distinguished
// triangle, ordered lexicographically by (w, u).
std::vector<MutationDatum> seed_candidates(const PotentialRecord& p);

// A unimodular A with A u = e1, w o A^-1 = e2 and A e_r = e_r for r >= 3.
UnimodularMap normalization_for(const MutationDatum& d);

// Applies the recorded steps to clifford(dim).
LaurentPoly replay_steps(std::size_t dim, const std::vector<MutationStep>& steps);

// Optional persistence behind the builder (see the cache in the CLI layer).
class RecordStore {
 public:
  virtual ~RecordStore() = default;
  virtual std::optional<PotentialRecord> load(const MarkovTriple& sorted, std::size_t dim) = 0;
  virtual void save(const PotentialRecord& record) = 0;
};

// Memoized walk down the Markov tree. Safe for concurrent use: distinct
// keys may be built in parallel; a key computed twice yields identical
// records and the first insertion wins.
class ViannaBuilder {
 public:
  ViannaBuilder() = default;
  explicit ViannaBuilder(std::shared_ptr<RecordStore> store, bool strict = false)
      : store_(std::move(store)), strict_(strict) {}

  // Throws SeedNotFound; with strict mode, AmbiguousSeed when two divisible
  // seeds both reach the target lengths.
  std::shared_ptr<const PotentialRecord> build(const MarkovTriple& t, std::size_t n);

  std::size_t cached() const;

 private:
  std::shared_ptr<const PotentialRecord> lookup(const MarkovTriple& sorted, std::size_t n);
  std::shared_ptr<const PotentialRecord> publish(PotentialRecord record);

  mutable std::mutex mu_;
  std::map<std::pair<MarkovTriple, std::size_t>, std::shared_ptr<const PotentialRecord>> memo_;
  std::shared_ptr<RecordStore> store_;
  bool strict_ = false;
};

// One step of the walk: the child of `parent` towards `target`.
PotentialRecord advance(const PotentialRecord& parent, const MarkovTriple& target, bool strict = false);

// Uses a process-wide builder.
PotentialRecord vianna(const MarkovTriple& t, std::size_t n);
ViannaBuilder& default_builder();

struct LiftClause {
  bool passed = false;
  std::string detail;
};

struct LiftReport {
  LiftClause triangle;       // 1: planar triangle after removing the inert terms
  LiftClause affine_lift;    // 2: inert exponents affine in the grading
  LiftClause projection;     // 3: inert variables set to 1 give the 2-D potential + (n-2)

  bool passed() const { return triangle.passed && affine_lift.passed && projection.passed; }
  std::vector<int> failing() const;
};

class StructureViolation : public Error {
 public:
  StructureViolation(LiftReport report, const std::string& what)
      : Error(what), report_(std::move(report)) {}
  const LiftReport& report() const { return report_; }

 private:
  LiftReport report_;
};

// Evaluates every clause; requires dim >= 3 (DimensionTooSmall). Clause 3
// compares against the two-variable potential obtained by replaying the
// record's steps restricted to the (x, y)-plane, which is how the recorded
// bases align the two constructions.
LiftReport lift_report(const PotentialRecord& p);
// Same, but throws StructureViolation naming the failing clauses.
LiftReport check_lift_structure(const PotentialRecord& p);

// The record's steps restricted to the first two coordinates. Throws
// Error when a step does not restrict.
std::vector<MutationStep> planar_steps(const std::vector<MutationStep>& steps);

}  // namespace lvt
