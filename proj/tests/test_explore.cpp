#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "trusskit/diagram.hpp"
#include "trusskit/fixtures.hpp"

using namespace trusskit;
namespace fx = trusskit::fixtures;

TEST_CASE("enumeration counts for 1-trusses") {
  auto all = enumerate_trusses(1, 8);
  std::map<int, int> by_size;
  std::map<int, int> closed_by_size, open_by_size;
  for (const auto& t : all) {
    int sz = t.total_size(1);
    by_size[sz]++;
    if (t.is_closed()) closed_by_size[sz]++;
    if (t.is_open()) open_by_size[sz]++;
  }
  for (int k = 1; k <= 8; ++k) CHECK(by_size[k] == 2);
  for (int k = 1; k <= 8; k += 2) {
    CHECK(closed_by_size[k] == 1);
    CHECK(open_by_size[k] == 1);
  }
  for (int k = 2; k <= 8; k += 2) {
    CHECK(closed_by_size[k] == 0);
    CHECK(open_by_size[k] == 0);
  }
}

TEST_CASE("small 2-truss and tangle enumeration contains the fixtures") {
  auto tangles = enumerate_tangles(2, 5, 0);
  bool found_pt2 = false;
  for (const auto& tp : tangles)
    if (strat_equal(tp.strat(), fx::pt2().strat())) found_pt2 = true;
  CHECK(found_pt2);
  CHECK(!tangles.empty());
}

TEST_CASE("constant bundles are tangle and fiber bundles") {
  Poset zigzag = Poset::build({"r1", "r2", "s"}, {{"r1", "s"}, {"r2", "s"}});
  TangleBundle cb = constant_bundle(zigzag, fx::strand());
  CHECK(is_tangle_bundle(cb).yes);
  CHECK(is_fiber_bundle(cb) == Verdict::Yes);
  TangleBundle cc = constant_bundle(Poset::build({"0", "1"}, {{"1", "0"}}), fx::cap());
  CHECK(is_tangle_bundle(cc).yes);
  // a 0-tangle fiber bundle over the 2-cover base
  TangleBundle cp = constant_bundle(zigzag, fx::pt2());
  CHECK(is_fiber_bundle(cp) == Verdict::Yes);
}

TEST_CASE("cap creation bundle fails fiber and surjectivity checks") {
  TangleBundle cc = fx::cap_creation();
  CHECK(is_tangle_bundle(cc).yes);
  CHECK(is_fiber_bundle(cc) == Verdict::No);
  std::string diag;
  CHECK(!verify_perturbation(Perturbation(cc), &diag));
  CHECK(diag.find("receives no generic") != std::string::npos);
}

TEST_CASE("identity perturbations verify and compose as units") {
  for (const auto& tp : {fx::pt1(), fx::cap()}) {
    Perturbation id = identity_perturbation(tp);
    CHECK(verify_perturbation(id));
    CHECK(strat_equal(id.special_fiber().strat(), tp.strat()));
    CHECK(strat_equal(id.generic_fiber().strat(), tp.strat()));
    Perturbation comp = compose_perturbations(id, id);
    CHECK(verify_perturbation(comp));
    CHECK(strat_equal(comp.special_fiber().strat(), tp.strat()));
  }
}

TEST_CASE("u-turn perturbation verifies and composes") {
  Perturbation p = fx::uturn_perturbation();
  CHECK(verify_perturbation(p));
  CHECK(strat_equal(p.special_fiber().strat(), fx::uturn_ng().strat()));
  CHECK(strat_equal(p.generic_fiber().strat(), fx::uturn_gen().strat()));
  // unit laws
  Perturbation l = compose_perturbations(identity_perturbation(fx::uturn_ng()), p);
  Perturbation r = compose_perturbations(p, identity_perturbation(fx::uturn_gen()));
  CHECK(verify_perturbation(l));
  CHECK(verify_perturbation(r));
  CHECK(strat_equal(l.generic_fiber().strat(), fx::uturn_gen().strat()));
  CHECK(strat_equal(r.special_fiber().strat(), fx::uturn_ng().strat()));
  // associativity on a composable triple
  Perturbation i2 = identity_perturbation(fx::uturn_gen());
  Perturbation a = compose_perturbations(compose_perturbations(p, i2), i2);
  Perturbation b = compose_perturbations(p, compose_perturbations(i2, i2));
  CHECK(a.tangle_bundle() == b.tangle_bundle());
}

TEST_CASE("point singularity admits no simplifying perturbation") {
  SearchBounds bounds;
  bounds.max_generic_q = 5;
  bounds.max_total = 9;
  SearchResult res = search_perturbation(fx::pt1(), bounds);
  CHECK(res.status == SearchStatus::None);
}

TEST_CASE("cap is stable within bounds") {
  SearchBounds bounds;
  bounds.max_generic_q = 3;
  bounds.max_total = 10;
  StabilityResult st = stability(fx::cap(), bounds);
  CHECK(st.status == StabilityStatus::StableWithinBounds);
}

TEST_CASE("non-generic u-turn: stable but not inductively stable") {
  SearchBounds bounds;
  bounds.max_generic_q = 3;
  bounds.max_total = 15;
  bounds.max_attempts = 50'000'000;
  StabilityResult st = stability(fx::uturn_ng(), bounds, true);
  CHECK(st.status == StabilityStatus::StableWithinBounds);
  REQUIRE(st.inductively_stable.has_value());
  CHECK(*st.inductively_stable == false);
}

TEST_CASE("braid is a path and a coherence") {
  TanglePresentation b = fx::braid();
  REQUIRE(is_tangle(b).verdict == Verdict::Yes);
  std::string reason;
  CHECK(is_path(b, &reason));
  CHECK(is_coherence(b, &reason));
  // a constant path on the cap is a path but contains singular points
  TanglePresentation cc = [] {
    TangleBundle cb = constant_bundle(Poset::point("t"), fx::cap());
    LevelData l1;
    l1.fibers.push_back(Fiber::parse("R"));
    std::vector<LevelData> levels{l1};
    for (int i = 1; i <= 3; ++i) {
      // rebuild: prepend an open interval level to the cap
      (void)i;
      break;
    }
    TrussBundle itt1 = TrussBundle::truss(levels);
    TrussBundle prod = itt1.product_with(fx::cap().bundle());
    std::vector<int> q;
    const Poset& top = prod.total_poset(3);
    for (const char* k : {"0-0-1", "0-0-3", "0-1-1"}) q.push_back(top.index_checked(k));
    return TanglePresentation::make(prod, q, 2);
  }();
  std::string r2;
  CHECK(is_path(cc, &r2));
  CHECK(!is_coherence(cc, &r2));
}

TEST_CASE("sheet perturbs nothing stable: strand of wiggle2 search") {
  // the wiggle2 singularity search is exercised in the acceptance suite;
  // here check the machinery agrees that the sheet is strictly simpler.
  TanglePresentation w = fx::wiggle2();
  CHECK(complexity(w) == 17);
  CHECK(is_singularity(w));
}
