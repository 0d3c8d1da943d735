#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "lvt/cache.hpp"
#include "lvt/render.hpp"
#include "lvt/serialize.hpp"

using namespace lvt;

namespace {

std::filesystem::path fresh_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("lvt_test_" + name + "_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

void spit(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << text;
}

// Text between the tags of every <text> element with the given font size.
std::vector<std::string> texts(const std::string& svg, const std::string& size) {
  std::vector<std::string> out;
  const std::string marker = "font-size=\"" + size + "\"";
  for (std::size_t pos = 0; (pos = svg.find("<text", pos)) != std::string::npos; ++pos) {
    const auto close = svg.find('>', pos);
    if (svg.substr(pos, close - pos).find(marker) == std::string::npos) continue;
    out.push_back(svg.substr(close + 1, svg.find('<', close) - close - 1));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t count(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (std::size_t pos = 0; (pos = s.find(needle, pos)) != std::string::npos; pos += needle.size()) ++n;
  return n;
}

}  // namespace

TEST_CASE("polynomials round-trip with big coefficients") {
  LaurentPoly f(3);
  f.add_term({-5, 2, 0}, Integer("-123456789012345678901234567890"));
  f.add_term({1, 1, 1}, 7);
  const auto j = to_json(f);
  CHECK(j["terms"][0]["coef"] == "-123456789012345678901234567890");
  CHECK(parse_poly(j) == f);
  CHECK(parse_poly(Json::parse(canonical_dump(j))) == f);
}

TEST_CASE("records, reports and certificates round-trip") {
  for (const auto& node : enumerate_tree(433))
    for (std::size_t n : {2u, 3u}) {
      const auto rec = vianna(node.triple, n);
      const auto j = to_json(rec);
      const auto back = parse_record(Json::parse(canonical_dump(j)));
      CHECK(back.poly == rec.poly);
      CHECK(back.basis == rec.basis);
      CHECK(back.path == rec.path);
      CHECK(back.steps.size() == rec.steps.size());
      CHECK(canonical_dump(to_json(back)) == canonical_dump(j));
      CHECK(replay_steps(n, back.steps) == rec.poly);

      const auto report = verify_record(rec, default_builder());
      const auto rj = to_json(report);
      const auto rback = parse_report(Json::parse(canonical_dump(rj)));
      CHECK(canonical_dump(to_json(rback)) == canonical_dump(rj));
      CHECK(rback.passed() == report.passed());
      CHECK(rback.seconds == report.seconds);
    }
  const auto d = distinguish({MarkovTriple(1, 1, 2), MarkovTriple(2, 1, 1), MarkovTriple(1, 2, 5)}, 3);
  const auto dj = to_json(d);
  const auto dback = parse_distinguish(Json::parse(canonical_dump(dj)));
  CHECK(canonical_dump(to_json(dback)) == canonical_dump(dj));
  CHECK(dback.matrix[0][1].witness == d.matrix[0][1].witness);

  const auto node = canonical_node(MarkovTriple(13, 5, 1));
  CHECK(parse_node(to_json(node)) == node);
}

TEST_CASE("malformed JSON is rejected") {
  CHECK_THROWS_AS(parse_integer(Json(5)), FormatError);
  CHECK_THROWS_AS(parse_integer(Json("12a")), FormatError);
  CHECK_THROWS_AS(parse_triple_json(Json::array({"1", "2"})), FormatError);
  CHECK_THROWS_AS(parse_triple_json(Json::array({"1", "2", "3"})), InvalidTriple);
  CHECK_THROWS_AS(parse_poly(Json{{"dim", 2}}), FormatError);
  CHECK_THROWS_AS(parse_poly(Json::parse(R"({"dim":2,"terms":[{"exp":[1],"coef":"1"}]})")), FormatError);
  CHECK_THROWS_AS(parse_poly(Json::parse(R"({"dim":2,"terms":[{"exp":[1,0],"coef":"0"}]})")), FormatError);
  CHECK_THROWS_AS(parse_poly(Json::parse(R"({"dim":"two","terms":[]})")), FormatError);
  CHECK_THROWS_AS(parse_map(Json::parse("[[2,0],[0,1]]")), NotUnimodular);
  CHECK_THROWS_AS(parse_datum(Json::parse(R"({"w":[0,1],"u":[1,0],"sign":"up"})")), FormatError);
}

TEST_CASE("file store: save, load, integrity") {
  const auto dir = fresh_dir("store");
  FileStore store(dir);
  const auto rec = vianna(MarkovTriple(1, 2, 5), 3);
  CHECK_FALSE(store.load(MarkovTriple(1, 2, 5), 3).has_value());
  store.save(rec);
  const auto path = store.path_for(MarkovTriple(5, 2, 1), 3);
  CHECK(path.filename() == "n3_1_2_5.json");
  REQUIRE(std::filesystem::exists(path));
  const auto loaded = store.load(MarkovTriple(1, 2, 5), 3);
  REQUIRE(loaded.has_value());
  CHECK(loaded->poly == rec.poly);

  // The stored hash is the SHA-256 of the canonical record text.
  const auto doc = Json::parse(slurp(path));
  CHECK(doc["sha256"] == sha256_hex(canonical_dump(doc["record"])));
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");

  // Tampering with one coefficient breaks the hash.
  auto tampered = doc;
  tampered["record"]["potential"]["terms"][0]["coef"] = "7";
  spit(path, canonical_dump(tampered));
  CHECK_THROWS_AS(store.load(MarkovTriple(1, 2, 5), 3), IntegrityError);
  spit(path, "{ not json");
  CHECK_THROWS_AS(store.load(MarkovTriple(1, 2, 5), 3), IntegrityError);

  // A valid record filed under the wrong key.
  store.save(vianna(MarkovTriple(1, 1, 2), 3));
  std::filesystem::copy_file(store.path_for(MarkovTriple(1, 1, 2), 3), path,
                             std::filesystem::copy_options::overwrite_existing);
  CHECK_THROWS_AS(store.load(MarkovTriple(1, 2, 5), 3), IntegrityError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("builders reuse cached records") {
  const auto dir = fresh_dir("builder");
  {
    ViannaBuilder b(std::make_shared<FileStore>(dir));
    b.build(MarkovTriple(2, 5, 29), 3);
  }
  CHECK(std::filesystem::exists(dir / "cache" / "n3_1_1_1.json"));
  CHECK(std::filesystem::exists(dir / "cache" / "n3_2_5_29.json"));
  ViannaBuilder again(std::make_shared<FileStore>(dir));
  const auto rec = again.build(MarkovTriple(29, 5, 2), 3);
  CHECK(again.cached() == 1);  // served from the file, no walk
  CHECK(rec->poly == vianna(MarkovTriple(2, 5, 29), 3).poly);
  std::filesystem::remove_all(dir);
}

TEST_CASE("planar rendering") {
  const auto rec = vianna(MarkovTriple(1, 1, 2), 2);
  const auto svg = render_svg(rec);
  CHECK(svg == render_svg(rec));
  CHECK(svg.rfind("<?xml", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  // Edge labels are the lattice lengths computed from the vertices.
  const auto polytope = newton_polytope(rec.poly);
  const auto& v = polytope.vertices();
  REQUIRE(v.size() == 3);
  std::vector<std::string> expected{std::to_string(std::gcd(std::abs(v[0][0] - v[1][0]), std::abs(v[0][1] - v[1][1]))),
                                    std::to_string(std::gcd(std::abs(v[0][0] - v[2][0]), std::abs(v[0][1] - v[2][1]))),
                                    std::to_string(std::gcd(std::abs(v[1][0] - v[2][0]), std::abs(v[1][1] - v[2][1])))};
  std::sort(expected.begin(), expected.end());
  CHECK(expected == std::vector<std::string>{"1", "1", "2"});
  CHECK(texts(svg, "14") == expected);
  CHECK(count(svg, "<polygon") == 1);
  CHECK(count(svg, "stroke=\"#d8d8d8\"") == 1);

  RenderOptions bare;
  bare.grid = false;
  bare.labels = false;
  const auto plain = render_svg(rec, bare);
  CHECK(count(plain, "stroke=\"#d8d8d8\"") == 0);
  CHECK(texts(plain, "14").empty());

  // Large polygons keep the grid bounded.
  const auto big = render_svg(vianna(MarkovTriple(5, 29, 433), 2));
  CHECK(count(big, "<line") < 100);
  CHECK(texts(big, "14") == std::vector<std::string>{"29", "433", "5"});
}

TEST_CASE("spatial rendering") {
  const auto svg = render_svg(vianna(MarkovTriple::root(), 3));
  CHECK(svg == render_svg(vianna(MarkovTriple::root(), 3)));
  CHECK(count(svg, "<line") == 6);  // tetrahedron wireframe
  CHECK(count(svg, "r=\"4\"") == 4);
  CHECK(texts(svg, "14") == std::vector<std::string>(6, "1"));
  const auto cheka = render_svg(vianna(MarkovTriple(1, 1, 2), 3));
  CHECK(texts(cheka, "14") == std::vector<std::string>{"1", "1", "1", "1", "1", "2"});
  CHECK_THROWS_AS(render_svg(vianna(MarkovTriple::root(), 5)), UnsupportedDim);
  CHECK_THROWS_AS(render_svg(vianna(MarkovTriple::root(), 4)), UnsupportedDim);
}
