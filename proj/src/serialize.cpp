#include "lvt/serialize.hpp"

#include <utility>

namespace lvt {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw FormatError(std::string("expected an object holding '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) throw FormatError(std::string("missing field '") + key + "'");
  return *it;
}

// Runs a parser, turning JSON type errors into FormatError.
template <class F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed ") + what + ": " + e.what());
  }
}

std::vector<std::int64_t> ints(const Json& j) { return j.get<std::vector<std::int64_t>>(); }

std::vector<Point> points(const Json& j) {
  std::vector<Point> out;
  for (const auto& p : j) out.push_back(ints(p));
  return out;
}

Json integers(const std::vector<Integer>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

}  // namespace

Json to_json(const Integer& v) { return v.get_str(); }

Integer parse_integer(const Json& j) {
  if (!j.is_string()) throw FormatError("integers are stored as decimal strings");
  const auto& s = j.get_ref<const std::string&>();
  Integer v;
  if (s.empty() || v.set_str(s, 10) != 0) throw FormatError("not a decimal integer: '" + s + "'");
  return v;
}

Json to_json(const MarkovTriple& t) { return Json::array({to_json(t[0]), to_json(t[1]), to_json(t[2])}); }

MarkovTriple parse_triple_json(const Json& j) {
  if (!j.is_array() || j.size() != 3) throw FormatError("a triple is an array of three decimal strings");
  return MarkovTriple(parse_integer(j[0]), parse_integer(j[1]), parse_integer(j[2]));
}

Json to_json(const MarkovNode& node) {
  return Json{{"triple", to_json(node.triple)}, {"sorted", to_json(node.triple.sorted())}, {"path", node.path}};
}

MarkovNode parse_node(const Json& j) {
  return guarded("tree node", [&] {
    return MarkovNode{parse_triple_json(field(j, "triple")), field(j, "path").get<std::vector<int>>()};
  });
}

Json to_json(const LaurentPoly& f) {
  Json terms = Json::array();
  for (const auto& [e, c] : f.terms()) terms.push_back(Json{{"exp", e}, {"coef", to_json(c)}});
  return Json{{"dim", f.dim()}, {"terms", std::move(terms)}};
}

LaurentPoly parse_poly(const Json& j) {
  return guarded("polynomial", [&] {
    const auto dim = field(j, "dim").get<std::size_t>();
    LaurentPoly f(dim);
    for (const auto& t : field(j, "terms")) {
      auto e = ints(field(t, "exp"));
      if (e.size() != dim) throw FormatError("exponent length does not match the dimension");
      auto c = parse_integer(field(t, "coef"));
      if (c == 0) throw FormatError("zero coefficients are not stored");
      if (f.coefficient(e) != 0) throw FormatError("repeated exponent");
      f.add_term(e, c);
    }
    return f;
  });
}

Json to_json(const UnimodularMap& m) { return m.matrix(); }

UnimodularMap parse_map(const Json& j) {
  return guarded("unimodular map", [&] { return UnimodularMap(j.get<UnimodularMap::Matrix>()); });
}

Json to_json(const MutationDatum& d) {
  return Json{{"w", d.w}, {"u", d.u}, {"sign", d.sign == MutationSign::Minus ? "minus" : "plus"}};
}

MutationDatum parse_datum(const Json& j) {
  return guarded("mutation datum", [&] {
    const auto& s = field(j, "sign").get_ref<const std::string&>();
    if (s != "minus" && s != "plus") throw FormatError("sign must be 'minus' or 'plus'");
    return MutationDatum(ints(field(j, "w")), ints(field(j, "u")),
                         s == "minus" ? MutationSign::Minus : MutationSign::Plus);
  });
}

Json to_json(const NewtonSummary& s) {
  return Json{{"vertices", s.vertices}, {"triangle", s.triangle}, {"triangle_lengths", s.triangle_lengths}};
}

NewtonSummary parse_summary(const Json& j) {
  return guarded("Newton summary", [&] {
    return NewtonSummary{points(field(j, "vertices")), points(field(j, "triangle")),
                         ints(field(j, "triangle_lengths"))};
  });
}

Json to_json(const MutationStep& s) {
  return Json{{"target", to_json(s.target)},   {"seed", to_json(s.seed)},
              {"normalization", to_json(s.normalization)},
              {"candidates", s.candidates}, {"matches", s.matches},
              {"before", to_json(s.before)}, {"after", to_json(s.after)}};
}

MutationStep parse_step(const Json& j) {
  return guarded("mutation step", [&] {
    return MutationStep{parse_triple_json(field(j, "target")),
                        parse_datum(field(j, "seed")),
                        parse_map(field(j, "normalization")),
                        field(j, "candidates").get<std::size_t>(),
                        field(j, "matches").get<std::size_t>(),
                        parse_summary(field(j, "before")),
                        parse_summary(field(j, "after"))};
  });
}

Json to_json(const PotentialRecord& r) {
  Json steps = Json::array();
  for (const auto& s : r.steps) steps.push_back(to_json(s));
  return Json{{"triple", to_json(r.triple)}, {"dim", r.dim},
              {"path", r.path},              {"potential", to_json(r.poly)},
              {"basis", to_json(r.basis)},   {"steps", std::move(steps)}};
}

PotentialRecord parse_record(const Json& j) {
  return guarded("potential record", [&] {
    PotentialRecord r{parse_triple_json(field(j, "triple")),
                      field(j, "dim").get<std::size_t>(),
                      field(j, "path").get<std::vector<int>>(),
                      parse_poly(field(j, "potential")),
                      parse_map(field(j, "basis")),
                      {}};
    for (const auto& s : field(j, "steps")) r.steps.push_back(parse_step(s));
    if (r.poly.dim() != r.dim || r.basis.dim() != r.dim) throw FormatError("record dimensions disagree");
    return r;
  });
}

Json to_json(const Clause& c) {
  return Json{{"name", c.name}, {"passed", c.passed}, {"skipped", c.skipped}, {"detail", c.detail}};
}

Clause parse_clause(const Json& j) {
  return guarded("clause", [&] {
    Clause c(field(j, "name").get<std::string>());
    c.passed = field(j, "passed").get<bool>();
    c.skipped = field(j, "skipped").get<bool>();
    c.detail = field(j, "detail").get<std::string>();
    return c;
  });
}

Json to_json(const VerificationReport& r) {
  Json clauses = Json::array();
  for (const auto* c : r.clauses()) clauses.push_back(to_json(*c));
  return Json{{"triple", to_json(r.triple)},
              {"dim", r.dim},
              {"passed", r.passed()},
              {"clauses", std::move(clauses)},
              {"vertices", r.vertices},
              {"triangle", r.triangle},
              {"measured_lengths", r.measured_lengths},
              {"other_edge_lengths", r.other_edge_lengths},
              {"vertex_coefficients", integers(r.vertex_coefficients)},
              {"normalized_volume", to_json(r.normalized_volume)},
              {"terms", r.terms},
              {"seconds", r.seconds}};
}

VerificationReport parse_report(const Json& j) {
  return guarded("verification report", [&] {
    VerificationReport r(parse_triple_json(field(j, "triple")), field(j, "dim").get<std::size_t>());
    const auto& clauses = field(j, "clauses");
    auto slots = r.clauses();
    if (!clauses.is_array() || clauses.size() != slots.size()) throw FormatError("wrong number of clauses");
    for (std::size_t i = 0; i < slots.size(); ++i) {
      auto c = parse_clause(clauses[i]);
      if (c.name != slots[i]->name) throw FormatError("unexpected clause '" + c.name + "'");
      *slots[i] = std::move(c);
    }
    r.vertices = points(field(j, "vertices"));
    r.triangle = points(field(j, "triangle"));
    r.measured_lengths = ints(field(j, "measured_lengths"));
    r.other_edge_lengths = ints(field(j, "other_edge_lengths"));
    for (const auto& c : field(j, "vertex_coefficients")) r.vertex_coefficients.push_back(parse_integer(c));
    r.normalized_volume = parse_integer(field(j, "normalized_volume"));
    r.terms = field(j, "terms").get<std::size_t>();
    // Timing is optional: deterministic report files leave it out.
    r.seconds = j.contains("seconds") ? j["seconds"].get<double>() : 0.0;
    return r;
  });
}

Json to_json(const PairCertificate& c) {
  return Json{{"same_class", c.same_class},
              {"equivalent", c.equivalent},
              {"method", c.method},
              {"witness", c.witness ? to_json(*c.witness) : Json(nullptr)}};
}

PairCertificate parse_certificate(const Json& j) {
  return guarded("pair certificate", [&] {
    PairCertificate c;
    c.same_class = field(j, "same_class").get<bool>();
    c.equivalent = field(j, "equivalent").get<bool>();
    c.method = field(j, "method").get<std::string>();
    const auto& w = field(j, "witness");
    if (!w.is_null()) c.witness = parse_map(w);
    return c;
  });
}

Json to_json(const DistinguishResult& d) {
  Json triples = Json::array(), matrix = Json::array();
  for (const auto& t : d.triples) triples.push_back(to_json(t));
  for (const auto& row : d.matrix) {
    Json r = Json::array();
    for (const auto& c : row) r.push_back(to_json(c));
    matrix.push_back(std::move(r));
  }
  return Json{{"triples", std::move(triples)}, {"dim", d.dim}, {"passed", d.passed()}, {"matrix", std::move(matrix)}};
}

DistinguishResult parse_distinguish(const Json& j) {
  return guarded("distinguish result", [&] {
    DistinguishResult d{{}, field(j, "dim").get<std::size_t>(), {}};
    for (const auto& t : field(j, "triples")) d.triples.push_back(parse_triple_json(t));
    for (const auto& row : field(j, "matrix")) {
      std::vector<PairCertificate> r;
      for (const auto& c : row) r.push_back(parse_certificate(c));
      if (r.size() != d.triples.size()) throw FormatError("matrix is not square");
      d.matrix.push_back(std::move(r));
    }
    if (d.matrix.size() != d.triples.size()) throw FormatError("matrix is not square");
    return d;
  });
}

Json newton_json(const PotentialRecord& r) {
  const auto p = newton_polytope(r.poly);
  const auto& v = p.vertices();
  Json edges = Json::array();
  for (const auto& [i, k] : p.edges())
    edges.push_back(Json{{"from", i}, {"to", k}, {"length", affine_length(v[i], v[k])}});
  Json coefficients = Json::array();
  for (const auto& x : v) coefficients.push_back(to_json(r.poly.coefficient(x)));
  const auto fano = is_fano(p);
  Json out{{"triple", to_json(r.triple)},
           {"dim", r.dim},
           {"vertices", v},
           {"vertex_coefficients", std::move(coefficients)},
           {"edges", std::move(edges)},
           {"two_faces", p.two_faces()},
           {"triangle", distinguished_face(r.poly).vertices()},
           {"simplex", is_simplex(p)},
           {"fano", fano.fano()}};
  if (p.full_dimensional()) {
    const auto inv = invariants(p);
    out["edge_lengths"] = inv.edge_lengths;
    out["normalized_volume"] = to_json(inv.normalized_volume);
  }
  return out;
}

std::string canonical_dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace lvt
