#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "trusskit/fiber.hpp"
#include "trusskit/poset.hpp"
#include "trusskit/truss.hpp"

using namespace trusskit;

namespace {

// Level data for a 1-level truss with a single fiber.
std::vector<LevelData> one_level(const std::string& word) {
  LevelData ld;
  ld.fibers.push_back(Fiber::parse(word));
  return {ld};
}

}  // namespace

TEST_CASE("poset build, reduction, cycles") {
  Poset chain = Poset::build({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"a", "c"}});
  CHECK(chain.covers().size() == 2);  // (a,c) removed by reduction
  CHECK(chain.leq(chain.index("a"), chain.index("c")));
  CHECK_THROWS_WITH_AS(Poset::build({"a", "b"}, {{"a", "b"}, {"b", "a"}}), doctest::Contains("CycleDetected"),
                       Error);
  CHECK_THROWS_WITH_AS(Poset::build({"a"}, {{"a", "x"}}), doctest::Contains("UnknownElement"), Error);
  Poset anti = Poset::build({"a", "b"}, {});
  CHECK(anti.covers().empty());
}

TEST_CASE("poset closures and opposite") {
  Poset zig = Poset::build({"r1", "r2", "s"}, {{"r1", "s"}, {"r2", "s"}});
  int s = zig.index("s");
  Poset d = zig.closure_of(s, ClosureMode::StrictDown);
  CHECK(d.size() == 2);
  CHECK(d.covers().empty());
  Poset op = zig.opposite();
  CHECK(op.opposite() == zig);
  CHECK(op.leq(op.index("s"), op.index("r1")));
}

TEST_CASE("cc_split strata") {
  // zigzag r1 < s > r2, labels: f(s)=0, f(r1)=f(r2)=1, L = 1 -> 0
  Poset P = Poset::build({"r1", "r2", "s"}, {{"r1", "s"}, {"r2", "s"}});
  Poset L = Poset::build({"0", "1"}, {{"1", "0"}});
  std::vector<int> f(3);
  f[static_cast<size_t>(P.index("s"))] = L.index("0");
  f[static_cast<size_t>(P.index("r1"))] = L.index("1");
  f[static_cast<size_t>(P.index("r2"))] = L.index("1");
  CcSplit cs = cc_split(P, L, f);
  CHECK(cs.strata.size() == 3);
  // constant labeling: one stratum per connected component
  std::vector<int> g(3, L.index("0"));
  CHECK(cc_split(P, L, g).strata.size() == 1);
}

TEST_CASE("order complex and euler characteristic") {
  Poset anti = Poset::build({"a", "b"}, {});
  CHECK(euler_characteristic(order_complex(anti)) == 2);
  Poset crown =
      Poset::build({"a", "b", "c", "d"}, {{"a", "c"}, {"a", "d"}, {"b", "c"}, {"b", "d"}});
  CHECK(euler_characteristic(order_complex(crown)) == 0);
  CHECK(euler_characteristic_moebius(crown) == 0);
}

TEST_CASE("sphere recognition") {
  CHECK(recognize_sphere(Poset::empty(), -1) == Verdict::Yes);
  CHECK(recognize_sphere(Poset::build({"a", "b"}, {}), 0) == Verdict::Yes);
  CHECK(recognize_sphere(Poset::build({"a", "b"}, {{"a", "b"}}), 0) == Verdict::No);
  Poset crown =
      Poset::build({"a", "b", "c", "d"}, {{"a", "c"}, {"a", "d"}, {"b", "c"}, {"b", "d"}});
  CHECK(recognize_sphere(crown, 1) == Verdict::Yes);
  CHECK(recognize_sphere(crown, 2) == Verdict::No);
  CHECK(recognize_disk(crown, 1) == Verdict::No);
  CHECK(recognize_sphere(crown, 3) == Verdict::Unknown);
}

TEST_CASE("boundary of 3-simplex is a 2-sphere") {
  // face poset of the boundary of a tetrahedron in entrance orientation:
  // higher-dimensional faces BELOW lower-dimensional ones.
  std::vector<std::string> els;
  std::vector<std::pair<std::string, std::string>> cov;
  auto vname = [](int v) { return std::string("v") + char('0' + v); };
  auto ename = [&](int a, int b) { return "e" + std::to_string(a) + std::to_string(b); };
  auto tname = [&](int a, int b, int c) { return "t" + std::to_string(a) + std::to_string(b) + std::to_string(c); };
  for (int v = 0; v < 4; ++v) els.push_back(vname(v));
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) els.push_back(ename(a, b));
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b)
      for (int c = b + 1; c < 4; ++c) els.push_back(tname(a, b, c));
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) {
      cov.push_back({ename(a, b), vname(a)});
      cov.push_back({ename(a, b), vname(b)});
    }
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b)
      for (int c = b + 1; c < 4; ++c) {
        cov.push_back({tname(a, b, c), ename(a, b)});
        cov.push_back({tname(a, b, c), ename(a, c)});
        cov.push_back({tname(a, b, c), ename(b, c)});
      }
  Poset bd = Poset::build(els, cov);
  CHECK(bd.size() == 14);
  CHECK(euler_characteristic(order_complex(bd)) == 2);
  CHECK(recognize_sphere(bd, 2) == Verdict::Yes);
  // cellularity with entrance-orientation dims
  std::vector<int> dims;
  for (int i = 0; i < bd.size(); ++i) {
    char c = bd.name(i)[0];
    dims.push_back(c == 'v' ? 0 : (c == 'e' ? 1 : 2));
  }
  CHECK(is_cellular(bd, dims) == Verdict::Yes);
}

TEST_CASE("fiber basics") {
  Fiber f = Fiber::parse("RSR");
  CHECK(f.is_open());
  CHECK(f.leq(0, 1));
  CHECK(!f.leq(0, 2));
  CHECK(f.dual().word() == "SRS");
  CHECK_THROWS(Fiber::parse("RRS"));
  CHECK_THROWS(Fiber::parse(""));
}

TEST_CASE("bordism closure and validation") {
  Fiber rsr = Fiber::parse("RSR");
  Fiber s = Fiber::parse("S");
  // singular function s1 -> 0, closure forces the regulars in.
  Bordism b = Bordism::make(rsr, s, {{1, 0}});
  CHECK(b.pairs().size() == 3);
  // identity bordism = full order relation
  Bordism id = Bordism::identity(rsr);
  CHECK(id.has(0, 1));
  CHECK(!id.has(1, 0));
  CHECK(id.is_identity_pattern(rsr, rsr));
  // crossing rejected
  Fiber srs = Fiber::parse("SRS");
  CHECK(!Bordism::try_make(srs, srs, {{0, 2}, {2, 0}, {1, 1}}).has_value());
  // composition of valid bordisms is valid
  Bordism c = id.compose(rsr, rsr, s, b);
  CHECK(c == b);
}

TEST_CASE("1-level truss total poset") {
  TrussBundle t = TrussBundle::truss(one_level("RSR"));
  CHECK(t.total_size(1) == 3);
  const Poset& tp = t.total_poset(1);
  CHECK(tp.leq(tp.index("0"), tp.index("1")));
  CHECK(tp.leq(tp.index("2"), tp.index("1")));
  CHECK(!tp.comparable(tp.index("0"), tp.index("2")));
  CHECK(t.cell_dim(1, 0) == 1);
  CHECK(t.cell_dim(1, 1) == 0);
  CHECK(t.total_size(0) == 1);
}

TEST_CASE("dual is an involution and swaps open/closed") {
  TrussBundle t = TrussBundle::truss(one_level("SRS"));
  CHECK(t.is_closed());
  TrussBundle d = t.dual();
  CHECK(d.is_open());
  CHECK(d.level(1).fibers[0].word() == "RSR");
  CHECK(d.dual() == t);
  // the closed point truss dualizes to the open cube truss
  TrussBundle pt = TrussBundle::truss(one_level("S"));
  CHECK(pt.dual().level(1).fibers[0].word() == "R");
}

TEST_CASE("product builds constant upper levels") {
  TrussBundle itt1 = TrussBundle::truss(one_level("R"));
  TrussBundle itt2 = itt1.product_with(itt1);
  CHECK(itt2.n() == 2);
  CHECK(itt2.total_size(2) == 1);
  CHECK(itt2.cell_dim(2, 0) == 2);
  TrussBundle rsr = TrussBundle::truss(one_level("RSR"));
  TrussBundle prod = rsr.product_with(itt1);
  CHECK(prod.n() == 2);
  CHECK(prod.total_size(2) == 3);
  for (int e = 0; e < 3; ++e) CHECK(prod.level(2).fibers[static_cast<size_t>(e)].word() == "R");
  // point x T = T
  TrussBundle unit = TrussBundle::point_truss().product_with(rsr);
  CHECK(unit == rsr);
}

TEST_CASE("neighborhood and closure_up on RSR") {
  TrussBundle t = TrussBundle::truss(one_level("RSR"));
  auto nb = t.neighborhood(1);  // s is the maximum
  CHECK(nb.bundle == t);
  auto nb0 = t.neighborhood(0);
  CHECK(nb0.bundle.level(1).fibers[0].word() == "R");
  auto up = t.closure_up(0);
  CHECK(up.bundle.level(1).fibers[0].word() == "RS");
  // duality identity closure_up = dual(neighborhood(dual))
  TrussBundle dd = t.dual().neighborhood(0).bundle.dual();
  CHECK(dd == up.bundle);
}

TEST_CASE("compactify and interior round trip on 1-trusses") {
  TrussBundle r = TrussBundle::truss(one_level("R"));
  auto comp = r.compactify();
  CHECK(comp.bundle.level(1).fibers[0].word() == "SRS");
  CHECK(comp.bundle.interior().bundle == r);
  TrussBundle rsr = TrussBundle::truss(one_level("RSR"));
  CHECK(rsr.compactify().bundle.level(1).fibers[0].word() == "SRSRS");
  CHECK(rsr.compactify().bundle.interior().bundle == rsr);
}

TEST_CASE("side and boundary on a 2-truss") {
  // id1: level-1 "R", level-2 "RSR"
  LevelData l1;
  l1.fibers.push_back(Fiber::parse("R"));
  LevelData l2;
  l2.fibers.push_back(Fiber::parse("RSR"));
  TrussBundle id1 = TrussBundle::make(Poset::point(), {l1, l2});
  auto sp = id1.side(1, +1);
  CHECK(sp.bundle.total_size(2) == 1);
  CHECK(sp.bundle.level(2).fibers[0].word() == "R");
  TrussBundle dom = id1.boundary_dir(false);
  CHECK(dom.n() == 1);
  CHECK(dom.level(1).fibers[0].word() == "RSR");
}

TEST_CASE("cone check") {
  TrussBundle rsr = TrussBundle::truss(one_level("RSR"));
  CHECK(rsr.cone_point().has_value());
  TrussBundle r = TrussBundle::truss(one_level("R"));
  CHECK(!r.cone_point().has_value());
}
