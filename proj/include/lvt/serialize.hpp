#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "lvt/verify.hpp"

namespace lvt {

using Json = nlohmann::json;

// JSON encodings. Arbitrary-precision values (triple entries, coefficients,
// volumes) are decimal strings; exponents and lattice lengths are bounded by
// int64 and stored as JSON integers. Objects have sorted keys and terms are
// in lexicographic exponent order, so equal values dump to equal bytes.
// Every parse_* throws FormatError on malformed input.

class FormatError : public Error {
 public:
  using Error::Error;
};

Json to_json(const Integer& v);
Json to_json(const MarkovTriple& t);
Json to_json(const MarkovNode& node);
Json to_json(const LaurentPoly& f);
Json to_json(const UnimodularMap& m);
Json to_json(const MutationDatum& d);
Json to_json(const NewtonSummary& s);
Json to_json(const MutationStep& s);
Json to_json(const PotentialRecord& r);
Json to_json(const Clause& c);
Json to_json(const VerificationReport& r);
Json to_json(const PairCertificate& c);
Json to_json(const DistinguishResult& d);

Integer parse_integer(const Json& j);
MarkovTriple parse_triple_json(const Json& j);
MarkovNode parse_node(const Json& j);
LaurentPoly parse_poly(const Json& j);
UnimodularMap parse_map(const Json& j);
MutationDatum parse_datum(const Json& j);
NewtonSummary parse_summary(const Json& j);
MutationStep parse_step(const Json& j);
PotentialRecord parse_record(const Json& j);
Clause parse_clause(const Json& j);
VerificationReport parse_report(const Json& j);
PairCertificate parse_certificate(const Json& j);
DistinguishResult parse_distinguish(const Json& j);

// Newton polytope description of a potential: vertices, edges with their
// lengths, 2-faces, the distinguished triangle, invariants and Fano data.
Json newton_json(const PotentialRecord& r);

// Canonical text form used for files and hashing.
std::string canonical_dump(const Json& j);

}  // namespace lvt
