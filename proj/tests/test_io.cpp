#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "trusskit/fixtures.hpp"
#include "trusskit/json_io.hpp"
#include "trusskit/render.hpp"

using namespace trusskit;
namespace fx = trusskit::fixtures;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

const char* kFixtureNames[] = {"pt1",      "pt2",       "strand",   "cap",          "cup",
                               "circle",   "bifur",     "sheet",    "wiggle2",      "uturn_ng",
                               "uturn_gen", "braid",    "empty1",   "cap_creation", "uturn_cert"};

}  // namespace

TEST_CASE("fixture files round-trip byte-exactly") {
  for (const char* name : kFixtureNames) {
    std::string bytes = slurp(std::string(FIXTURE_DIR) + "/" + name + ".json");
    Document doc = parse_document(bytes);
    CHECK(serialize(doc) == bytes);
  }
}

TEST_CASE("fixture files match the built-in catalog") {
  auto check_match = [](const char* name, const Document& built) {
    std::string bytes = slurp(std::string(FIXTURE_DIR) + "/" + std::string(name) + ".json");
    CHECK(serialize(built) == bytes);
  };
  check_match("pt2", doc_of(fx::pt2()));
  check_match("cap", doc_of(fx::cap()));
  check_match("wiggle2", doc_of(fx::wiggle2()));
  check_match("uturn_cert", doc_of(fx::uturn_perturbation().tangle_bundle(), true));
}

TEST_CASE("parse validation errors") {
  CHECK_THROWS_WITH_AS(parse_document("{"), doctest::Contains("SchemaError"), Error);
  CHECK_THROWS_WITH_AS(parse_document("{\"kind\":\"wat\"}"), doctest::Contains("SchemaError"),
                       Error);
  // alternation failure surfaces as a validation error
  std::string bad = R"({"kind":"truss","format_version":1,"n":1,
    "levels":[{"fibers":{"":"RRS"},"bordisms":{}}]})";
  CHECK_THROWS_WITH_AS(parse_document(bad), doctest::Contains("ValidationError"), Error);
  // cycle in a poset
  std::string cyc = R"({"kind":"poset","format_version":1,
    "elements":["a","b"],"covers":[["a","b"],["b","a"]]})";
  CHECK_THROWS_WITH_AS(parse_document(cyc), doctest::Contains("CycleDetected"), Error);
}

TEST_CASE("poset documents round trip") {
  Poset p = Poset::build({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
  std::string s = serialize(doc_of(p));
  Document d = parse_document(s);
  CHECK(d.kind == "poset");
  CHECK(*d.poset == p);
}

TEST_CASE("svg rendering is stable and well-formed") {
  std::string svg1 = render_svg(fx::pt2().strat(), fx::pt2().q());
  std::string svg2 = render_svg(fx::pt2().strat(), fx::pt2().q());
  CHECK(svg1 == svg2);
  CHECK(svg1.substr(0, 4) == "<svg");
  CHECK(svg1.find("</svg>") != std::string::npos);
  // n = 1 drawing
  std::string svg3 = render_svg(fx::pt1().strat(), fx::pt1().q());
  CHECK(svg3.find("circle") != std::string::npos);
  // n = 3 unsupported
  CHECK_THROWS_WITH_AS(render_svg(fx::sheet().strat()), doctest::Contains("DimensionUnsupported"),
                       Error);
}

TEST_CASE("svg golden files") {
  for (const char* name : {"pt2", "cap", "strand"}) {
    Document d = parse_document(slurp(std::string(FIXTURE_DIR) + "/" + name + ".json"));
    std::vector<int> emph(d.tangle->q().begin(), d.tangle->q().end());
    std::string svg = render_svg(d.tangle->strat(), emph);
    std::string golden = slurp(std::string(FIXTURE_DIR) + "/" + name + ".svg");
    CHECK(svg == golden);
  }
}
