#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "trusskit/strat.hpp"

using namespace trusskit;

namespace {

TrussBundle truss1(const std::string& word) {
  LevelData ld;
  ld.fibers.push_back(Fiber::parse(word));
  return TrussBundle::truss({ld});
}

// "RSR" with labels a,p,b (arrows a->p, b->p).
StratTruss rsr_apb() {
  Poset L = Poset::build({"a", "b", "p"}, {{"a", "p"}, {"b", "p"}});
  std::vector<int> lab = {L.index("a"), L.index("p"), L.index("b")};
  return StratTruss::make(truss1("RSR"), L, lab);
}

StratTruss rsr_const() {
  Poset L = Poset::point("x");
  return StratTruss::make(truss1("RSR"), L, {0, 0, 0});
}

}  // namespace

TEST_CASE("make_strat strata counts") {
  CHECK(rsr_apb().num_strata() == 3);
  CHECK(rsr_const().num_strata() == 1);
  // "RSR" with labels a,p,a where the two regulars are disconnected in the
  // label fiber: each is its own stratum (a-fiber = {0,2} disconnected)
  Poset L = Poset::build({"a", "p"}, {{"a", "p"}});
  StratTruss st = StratTruss::make(truss1("RSR"), L, {0, 1, 0});
  CHECK(st.num_strata() == 3);
}

TEST_CASE("strat_equal via strata, not labels") {
  // relabeled copies are equal
  Poset L1 = Poset::build({"a", "b", "p"}, {{"a", "p"}, {"b", "p"}});
  Poset L2 = Poset::build({"q", "x", "y"}, {{"x", "q"}, {"y", "q"}});
  StratTruss s1 = StratTruss::make(truss1("RSR"), L1, {L1.index("a"), L1.index("p"), L1.index("b")});
  StratTruss s2 = StratTruss::make(truss1("RSR"), L2, {L2.index("x"), L2.index("q"), L2.index("y")});
  CHECK(strat_equal(s1, s2));
  // a,p,b vs a,p,a (same Entr shape here: 3 strata, both regs below the sing)
  Poset L3 = Poset::build({"a", "p"}, {{"a", "p"}});
  StratTruss s3 = StratTruss::make(truss1("RSR"), L3, {0, 1, 0});
  CHECK(strat_equal(s1, s3));
  CHECK(!strat_equal(s1, rsr_const()));
}

TEST_CASE("dual_strat is an involution") {
  StratTruss st = rsr_apb();
  StratTruss dd = st.dual().dual();
  CHECK(strat_equal(st, dd));
  CHECK(st.dual().bundle().level(1).fibers[0].word() == "SRS");
}

TEST_CASE("normalize collapses constant RSR to R") {
  NormalizeResult r = normalize(rsr_const());
  CHECK(r.nf.bundle().level(1).fibers[0].word() == "R");
  CHECK(r.nf.num_strata() == 1);
  CHECK(!r.witness.is_identity());
  CHECK(is_coarsening(r.witness));
  // idempotent
  NormalizeResult r2 = normalize(r.nf);
  CHECK(r2.witness.is_identity());
  // labeled version does not collapse
  NormalizeResult r3 = normalize(rsr_apb());
  CHECK(r3.witness.is_identity());
  CHECK(is_normalized(rsr_apb()));
  CHECK(!is_normalized(rsr_const()));
}

TEST_CASE("normalize RSRSR constant collapses to R") {
  Poset L = Poset::point("x");
  StratTruss st = StratTruss::make(truss1("RSRSR"), L, {0, 0, 0, 0, 0});
  NormalizeResult r = normalize(st);
  CHECK(r.nf.bundle().level(1).fibers[0].word() == "R");
  // the oracle finds: identity, two single collapses, one double collapse
  auto all = enumerate_coarsenings(st);
  CHECK(all.size() == 4);
}

TEST_CASE("enumerate_coarsenings on small cases") {
  auto cs = enumerate_coarsenings(rsr_const());
  CHECK(cs.size() == 2);  // identity + collapse-to-R
  auto cs2 = enumerate_coarsenings(rsr_apb());
  CHECK(cs2.size() == 1);  // identity only
}

TEST_CASE("normalize agrees with oracle minimal target") {
  Poset L = Poset::point("x");
  StratTruss st = StratTruss::make(truss1("RSRSR"), L, {0, 0, 0, 0, 0});
  auto all = enumerate_coarsenings(st);
  int minimal = 0;
  StratTruss nf;
  for (const auto& c : all) {
    if (enumerate_coarsenings(c.target).size() == 1) {
      ++minimal;
      nf = c.target;
    }
  }
  CHECK(minimal == 1);
  CHECK(strat_equal(nf, normalize(st).nf));
  CHECK(strat_equal(normalize_level_descending(st).nf, normalize(st).nf));
}

TEST_CASE("2-truss collapse of an upper fiber") {
  // level-1 "R"; level-2 "RSR" with constant labels: collapses to "R"/"R".
  LevelData l1;
  l1.fibers.push_back(Fiber::parse("R"));
  LevelData l2;
  l2.fibers.push_back(Fiber::parse("RSR"));
  TrussBundle b = TrussBundle::make(Poset::point(), {l1, l2});
  StratTruss st = StratTruss::trivial(b);
  NormalizeResult r = normalize(st);
  CHECK(r.nf.bundle().n() == 2);
  CHECK(r.nf.bundle().level(2).fibers[0].word() == "R");
}

TEST_CASE("level-1 collapse with towers requires iso towers") {
  // level-1 "RSR" with towers "RSR","RSR","RSR" and identity bordisms,
  // constant labels: collapses all the way down to the single sheet.
  LevelData l1;
  l1.fibers.push_back(Fiber::parse("RSR"));
  LevelData l2;
  for (int i = 0; i < 3; ++i) l2.fibers.push_back(Fiber::parse("RSR"));
  Bordism id = Bordism::identity(Fiber::parse("RSR"));
  l2.bordisms.insert({{0, 1}, id});
  l2.bordisms.insert({{2, 1}, id});
  TrussBundle b = TrussBundle::make(Poset::point(), {l1, l2});
  StratTruss st = StratTruss::trivial(b);
  NormalizeResult r = normalize(st);
  CHECK(r.nf.bundle().level(1).fibers[0].word() == "R");
  CHECK(r.nf.bundle().level(2).fibers[0].word() == "R");
  // now block the collapse with a marked point on the middle fiber
  Poset L = Poset::build({"0", "1"}, {{"1", "0"}});
  std::vector<int> lab(static_cast<size_t>(b.total_size(2)), L.index("1"));
  lab[static_cast<size_t>(b.element_of(2, 1, 1))] = L.index("0");
  StratTruss marked = StratTruss::make(b, L, lab);
  // the strand through the singular column survives; level-2 fibers collapse
  // around it is blocked by labels, level-1 collapse is blocked by the marked
  // column's distinct stratum... but towers are iso and labels on the strand
  // match across, so nothing collapses only if strata refuse. Verify the
  // normal form is still 7 elements or collapsed coherently:
  NormalizeResult rm = normalize(marked);
  CHECK(is_coarsening(rm.witness));
  // The marked strand is preserved as its own stratum.
  CHECK(rm.nf.num_strata() == marked.num_strata());
}

TEST_CASE("factor_leading cube") {
  TrussBundle itt1 = truss1("R");
  TrussBundle itt3 = itt1.product_with(itt1).product_with(itt1);
  Factorization f = factor_leading(StratTruss::trivial(itt3), FactorMode::Cube);
  CHECK(f.k() == 3);
  CHECK(f.remainder.bundle().n() == 0);
  // ITT^1 x "RSR": k=1, remainder "RSR"
  Poset L = Poset::build({"a", "b", "p"}, {{"a", "p"}, {"b", "p"}});
  StratTruss rsr = StratTruss::make(truss1("RSR"), L, {0, 2, 1});
  LevelData ld;
  ld.fibers.push_back(Fiber::parse("R"));
  StratTruss cube = StratTruss::trivial(TrussBundle::truss({ld}));
  StratTruss prod = cube.product_with(rsr);
  Factorization g = factor_leading(prod, FactorMode::Cube);
  CHECK(g.k() == 1);
  CHECK(strat_equal(g.remainder, rsr));
  // corner mode on T^- x "RSR"
  LevelData sr;
  sr.fibers.push_back(Fiber::parse("SR"));
  StratTruss corner = StratTruss::trivial(TrussBundle::truss({sr}));
  StratTruss cp = corner.product_with(rsr);
  Factorization h = factor_leading(cp, FactorMode::Corner);
  CHECK(h.sigma == std::vector<std::string>{"SR"});
  CHECK(strat_equal(h.remainder, rsr));
  CHECK(factor_leading(cp, FactorMode::Cube).k() == 0);
}

TEST_CASE("glue 1-trusses: id1 *1 id1 = id2") {
  Poset L = Poset::build({"q", "x"}, {{"x", "q"}});
  StratTruss a = StratTruss::make(truss1("RSR"), L, {1, 0, 1});
  StratTruss b = StratTruss::make(truss1("RSR"), L, {1, 0, 1});
  StratTruss g = glue(a, b, 1);
  CHECK(g.bundle().level(1).fibers[0].word() == "RSRSR");
  CHECK(g.num_strata() == 5);
  // associativity
  StratTruss g3a = glue(glue(a, b, 1), a, 1);
  StratTruss g3b = glue(a, glue(b, a, 1), 1);
  CHECK(strat_equal(g3a, g3b));
  // unit law: glue with own side
  StratTruss sa = a.side(1, +1);
  StratTruss u = glue(a, sa, 1);
  CHECK(strat_equal(u, a));
}

TEST_CASE("strict glue absorbs a matching region") {
  // "RSR"(a,p,b) * "R"(x) along the shared single-stratum side: unit-like.
  Poset L = Poset::point("x");
  StratTruss a = rsr_apb();
  StratTruss b = StratTruss::make(truss1("R"), L, {0});
  StratTruss g = glue(a, b, 1);
  CHECK(g.bundle().level(1).fibers[0].word() == "RSR");
  CHECK(g.num_strata() == 3);
}

TEST_CASE("match_sides refines a coarser level-1 fiber") {
  // id1 vs id1 with the time direction subdivided: refine and glue.
  Poset L = Poset::build({"q", "x"}, {{"x", "q"}});
  LevelData l1, l2;
  l1.fibers.push_back(Fiber::parse("R"));
  l2.fibers.push_back(Fiber::parse("RSR"));
  TrussBundle id1b = TrussBundle::make(Poset::point(), {l1, l2});
  std::vector<int> lab = {L.index("x"), L.index("q"), L.index("x")};
  StratTruss id1 = StratTruss::make(id1b, L, lab);
  StratTruss subdiv = subdivide_level1(id1, {1});
  CHECK(subdiv.bundle().level(1).fibers[0].word() == "RSR");
  CHECK(subdiv.bundle().total_size(2) == 9);
  CHECK_THROWS(glue(id1, subdiv, 1));
  auto [ra, rb] = match_sides(id1, subdiv, 1);
  CHECK(ra.bundle().level(1).fibers[0].word() == "RSR");
  StratTruss g = glue(ra, rb, 1);
  CHECK(g.bundle().level(2).fibers[0].word() == "RSRSR");
  // and the refined copy still normalizes back to id1
  CHECK(strat_equal(normalize(subdiv).nf, id1));
  // genuinely incompatible sides: open vs closed endpoints
  StratTruss open_t = StratTruss::make(truss1("RSR"), L, {1, 0, 1});
  StratTruss closed_t = StratTruss::make(truss1("SRS"), L, {0, 1, 0});
  CHECK_THROWS_WITH_AS(match_sides(open_t, closed_t, 1), doctest::Contains("NoCommonRefinement"),
                       Error);
}

TEST_CASE("compactify transports labels by retraction") {
  Poset L = Poset::build({"a", "b", "p"}, {{"a", "p"}, {"b", "p"}});
  StratTruss st = StratTruss::make(truss1("RSR"), L, {L.index("a"), L.index("p"), L.index("b")});
  StratTruss c = st.compactified();
  CHECK(c.bundle().level(1).fibers[0].word() == "SRSRS");
  std::vector<std::string> got;
  for (int e = 0; e < 5; ++e) got.push_back(L.name(c.label_of(e)));
  CHECK(got == std::vector<std::string>{"a", "a", "p", "b", "b"});
  CHECK(strat_equal(c.interior(), st));
}
