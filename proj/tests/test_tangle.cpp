#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "trusskit/diagram.hpp"
#include "trusskit/fixtures.hpp"

using namespace trusskit;
namespace fx = trusskit::fixtures;

TEST_CASE("pt1 and pt2 are 0-singularities") {
  TanglePresentation p1 = fx::pt1();
  TangleReport r1 = is_tangle(p1);
  CHECK(r1.verdict == Verdict::Yes);
  CHECK(r1.tdim.at(1) == 0);
  CHECK(is_singularity(p1));
  CHECK(complexity(p1) == 1);

  TanglePresentation p2 = fx::pt2();
  TangleReport r2 = is_tangle(p2);
  CHECK(r2.verdict == Verdict::Yes);
  CHECK(is_singularity(p2));
  CHECK(complexity(p2) == 1);
  // total poset of PT2: regions, line pieces and the marked point as maximum
  CHECK(p2.bundle().total_size(2) == 5);
  auto top = p2.bundle().total_poset(2).unique_maximum();
  REQUIRE(top.has_value());
  CHECK(p2.bundle().pathkey(2, *top) == "1-1");
}

TEST_CASE("strand is the identity tangle") {
  TanglePresentation s = fx::strand();
  TangleReport r = is_tangle(s);
  CHECK(r.verdict == Verdict::Yes);
  for (auto [x, k] : r.tdim) CHECK(k == 1);
  CHECK(!is_singularity(s));
  CHECK(complexity(s) == 1);
}

TEST_CASE("cap tdim profile and singularity") {
  TanglePresentation c = fx::cap();
  TangleReport r = is_tangle(c);
  REQUIRE(r.verdict == Verdict::Yes);
  const TrussBundle& b = c.bundle();
  CHECK(r.tdim.at(b.element_of(2, 1, 1)) == 0);  // sigma
  CHECK(r.tdim.at(b.element_of(2, 0, 1)) == 1);  // s_l
  CHECK(r.tdim.at(b.element_of(2, 0, 3)) == 1);  // s_r
  CHECK(is_singularity(c));
  CHECK(complexity(c) == 3);
  // normal singularity at s_l is the dim-1 point singularity
  TanglePresentation ns = normal_singularity_at(c, b.element_of(2, 0, 1));
  CHECK(ns.m() == 0);
  CHECK(ns.bundle().n() == 1);
  CHECK(is_singularity(ns));
  // at sigma it is the cap itself
  TanglePresentation n0 = normal_singularity_at(c, b.element_of(2, 1, 1));
  CHECK(strat_equal(n0.strat(), c.strat()));
}

TEST_CASE("neighborhood of cap branch matches the spec example") {
  TanglePresentation c = fx::cap();
  int s_l = c.bundle().element_of(2, 0, 1);
  TrussRestriction nb = c.bundle().neighborhood(s_l);
  CHECK(nb.bundle.n() == 2);
  CHECK(nb.bundle.level(1).fibers[0].word() == "R");
  CHECK(nb.bundle.level(2).fibers[0].word() == "RSR");
}

TEST_CASE("bifur is rejected at the branch element") {
  TanglePresentation bf = fx::bifur();
  TangleReport r = is_tangle(bf);
  CHECK(r.verdict == Verdict::No);
  // the branch element is the horizontal piece (s1, 0) whose neighborhood
  // remainder has a regular maximum
  CHECK(r.failed_element == bf.bundle().element_of(2, 1, 0));
  CHECK(r.reason.find("cone") != std::string::npos);
  // it is normalized though
  CHECK(is_normalized(bf.strat()));
}

TEST_CASE("tstr of cap is a manifold diagram refining the tangle") {
  TanglePresentation c = fx::cap();
  StratTruss t = tstr(c);
  CHECK(t.num_strata() == 5);  // 3 tangle strata + 2 complement strata
  DiagramReport rep = is_manifold_diagram(t);
  CHECK(rep.yes);
  // strand: tstr is the identity stratification (tdim constant)
  StratTruss ts = tstr(fx::strand());
  CHECK(ts.num_strata() == fx::strand().strat().num_strata());
  CHECK(is_manifold_diagram(ts).yes);
}

TEST_CASE("pt2 tstr and diagram recognition") {
  StratTruss t = tstr(fx::pt2());
  CHECK(is_manifold_diagram(t).yes);
  // PT2's indicator stratification itself is a manifold diagram
  CHECK(is_manifold_diagram(fx::pt2().strat()).yes);
  // BIFUR's indicator stratification is not
  CHECK(!is_manifold_diagram(fx::bifur().strat()).yes);
}

TEST_CASE("check_transversal examples from the cap") {
  TanglePresentation c = fx::cap();
  int sigma = c.bundle().element_of(2, 1, 1);
  TransversalCheck tc = check_transversal_at(c, sigma);
  CHECK(tc.verdict == Verdict::Yes);
  CHECK(tc.k == 0);
  CHECK(tc.d.size() == 3);  // sigma + two branches: D minus top is an S^0
}

TEST_CASE("circle: cell structures and euler characteristics") {
  TanglePresentation ci = fx::circle();
  CHECK(is_tangle(ci).verdict == Verdict::Yes);
  CHECK(complexity(ci) == 4);
  CellStructure cs = cell_structure(ci);
  CHECK(cs.euler == 0);
  CHECK(cs.cellular == Verdict::Yes);
  CellStructure dcs = dual_cell_structure(ci);
  CHECK(dcs.euler == 0);
  CHECK(dcs.cellular == Verdict::Yes);
  // strand: closed interval cell poset with chi = 1
  CellStructure ss = cell_structure(fx::strand());
  CHECK(ss.euler == 1);
  CHECK(ss.cellular == Verdict::Yes);
  CHECK(ss.cells.size() == 3);
  CellStructure sd = dual_cell_structure(fx::strand());
  CHECK(sd.euler == 1);
  // pt2: single vertex
  CHECK(cell_structure(fx::pt2()).cells.size() == 1);
}

TEST_CASE("circle equals cup glued with cap in the time direction") {
  StratTruss g = glue(fx::cup().strat(), fx::cap().strat(), 2);
  CHECK(strat_equal(g, fx::circle().strat()));
}

TEST_CASE("compactified tangles are compact tangles") {
  for (const TanglePresentation& tp : {fx::cap(), fx::strand(), fx::pt2()}) {
    auto [comp, retract] = tp.strat().compactified_with_retract();
    std::vector<int> qbar;
    int in_q = comp.label_poset().index("0");
    for (int e = 0; e < comp.bundle().total_size(comp.bundle().n()); ++e)
      if (comp.label_of(e) == in_q) qbar.push_back(e);
    TanglePresentation ctp = TanglePresentation::make(comp.bundle(), qbar, tp.m());
    CHECK(is_compact_tangle(ctp).verdict == Verdict::Yes);
    CHECK(is_tangle(ctp).verdict == Verdict::No);
  }
  // compactified bifur stays rejected
  auto [comp, retract] = fx::bifur().strat().compactified_with_retract();
  std::vector<int> qbar;
  int in_q = comp.label_poset().index("0");
  for (int e = 0; e < comp.bundle().total_size(2); ++e)
    if (comp.label_of(e) == in_q) qbar.push_back(e);
  CHECK(is_compact_tangle(TanglePresentation::make(comp.bundle(), qbar, 1)).verdict ==
        Verdict::No);
}

TEST_CASE("wiggle2 is a normalized 2-singularity with 17 tangle elements") {
  TanglePresentation w = fx::wiggle2();
  CHECK(complexity(w) == 17);
  TangleReport r = is_tangle(w);
  REQUIRE(r.verdict == Verdict::Yes);
  CHECK(is_singularity(w));
  const Poset& top = w.bundle().total_poset(3);
  CHECK(r.tdim.at(top.index_checked("1-1-1")) == 0);  // the cone point
  CHECK(r.tdim.at(top.index_checked("0-1-3")) == 1);  // fold curve
  CHECK(r.tdim.at(top.index_checked("0-0-3")) == 2);  // sheet point
  // the transversal stratification is a manifold diagram
  CHECK(is_manifold_diagram(tstr(w)).yes);
}

TEST_CASE("sheet is the identity 2-tangle") {
  TanglePresentation s = fx::sheet();
  TangleReport r = is_tangle(s);
  REQUIRE(r.verdict == Verdict::Yes);
  CHECK(r.tdim.at(s.bundle().total_poset(3).index_checked("0-0-1")) == 2);
  CHECK(complexity(s) == 1);
}

TEST_CASE("u-turn fixtures are 1-singularities in dim 3") {
  for (auto tp : {fx::uturn_ng(), fx::uturn_gen()}) {
    TangleReport r = is_tangle(tp);
    REQUIRE(r.verdict == Verdict::Yes);
    CHECK(is_singularity(tp));
    CHECK(complexity(tp) == 3);
  }
}

TEST_CASE("boundary directions of the cap") {
  // domain: two strand points; codomain: empty
  TanglePresentation c = fx::cap();
  TrussBundle dom = c.bundle().boundary_dir(false);
  CHECK(dom.n() == 1);
  CHECK(dom.level(1).fibers[0].word() == "RSRSR");
  TrussBundle cod = c.bundle().boundary_dir(true);
  CHECK(cod.level(1).fibers[0].word() == "R");
  // identity tangle: domain = codomain = RSR
  TrussBundle sd = fx::strand().bundle().boundary_dir(false);
  CHECK(sd.level(1).fibers[0].word() == "RSR");
}

TEST_CASE("cells report on the dual of pt2") {
  StratTruss dual = fx::pt2().strat().dual();
  DiagramReport rep = is_cell_diagram(dual);
  REQUIRE(rep.yes);
  auto cells = cells_report(dual);
  int nondeg2 = 0;
  for (const auto& ci : cells)
    if (!ci.degenerate && ci.dim == 2) ++nondeg2;
  CHECK(nondeg2 == 1);  // the dual of the marked point
}

TEST_CASE("canonical links") {
  // 1-truss "RSR" with the marked point: link is two points
  TanglePresentation p1 = fx::pt1();
  LabeledPoset link = canonical_link(p1.strat(), p1.strat().stratum_of(1));
  CHECK(link.poset.size() == 2);
  CHECK(link.poset.covers().empty());
  // top-dimensional stratum: empty link
  StratTruss ss = fx::strand().strat();
  int region_stratum = ss.stratum_of(0);
  CHECK(canonical_link(ss, region_stratum).poset.size() == 0);
  // PT2 point stratum: the boundary of the compactified cone. The square
  // boundary carries 4 corners, the two side edges, and the top and bottom
  // edges subdivided by the mesh wall endpoints: 12 cells, all in the single
  // complement stratum.
  TanglePresentation p2 = fx::pt2();
  int pt_stratum = p2.strat().stratum_of(p2.q()[0]);
  LabeledPoset l2 = canonical_link(p2.strat(), pt_stratum);
  CHECK(l2.poset.size() == 12);
  std::set<int> lab2(l2.labels.begin(), l2.labels.end());
  CHECK(lab2.size() == 1);
  // the cap point: its link carries the two branch strata and regions
  TanglePresentation c = fx::cap();
  int sigma = c.bundle().element_of(2, 1, 1);
  StratTruss ct = tstr(c);
  LabeledPoset lc = canonical_link(ct, ct.stratum_of(sigma));
  std::set<int> labc(lc.labels.begin(), lc.labels.end());
  CHECK(labc.size() >= 4);
}
