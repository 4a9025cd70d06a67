#include "trusskit/fixtures.hpp"

#include <algorithm>

namespace trusskit {
namespace fixtures {

TrussBundle truss2(const std::string& l1, const std::vector<std::string>& fibers,
                   const std::map<std::pair<int, int>, std::vector<std::pair<int, int>>>& bordisms) {
  LevelData d1;
  d1.fibers.push_back(Fiber::parse(l1));
  LevelData d2;
  for (const auto& w : fibers) d2.fibers.push_back(Fiber::parse(w));
  Fiber f1 = Fiber::parse(l1);
  for (int a = 0; a < f1.size(); ++a)
    for (int b = 0; b < f1.size(); ++b) {
      if (a == b || !f1.leq(a, b)) continue;
      auto it = bordisms.find({a, b});
      check(it != bordisms.end(), "ValidationError",
            "truss2: missing bordism " + std::to_string(a) + ">" + std::to_string(b));
      d2.bordisms.insert({{a, b}, Bordism::make(d2.fibers[static_cast<size_t>(a)],
                                                d2.fibers[static_cast<size_t>(b)], it->second)});
    }
  return TrussBundle::make(Poset::point(), {d1, d2});
}

TrussBundle truss3(const std::string& l1, const std::vector<Slice>& slices,
                   const std::map<std::pair<int, int>, Step>& steps) {
  LevelData d1;
  d1.fibers.push_back(Fiber::parse(l1));
  Fiber f1 = Fiber::parse(l1);
  check(slices.size() == static_cast<size_t>(f1.size()), "ValidationError",
        "truss3: one slice per level-1 position");
  LevelData d2;
  for (const auto& s : slices) d2.fibers.push_back(Fiber::parse(s.l2));
  for (int a = 0; a < f1.size(); ++a)
    for (int b = 0; b < f1.size(); ++b) {
      if (a == b || !f1.leq(a, b)) continue;
      auto it = steps.find({a, b});
      check(it != steps.end(), "ValidationError",
            "truss3: missing step " + std::to_string(a) + ">" + std::to_string(b));
      d2.bordisms.insert({{a, b}, Bordism::make(d2.fibers[static_cast<size_t>(a)],
                                                d2.fibers[static_cast<size_t>(b)], it->second.l2)});
    }
  TrussBundle prefix = TrussBundle::make(Poset::point(), {d1, d2});
  LevelData d3;
  for (int e = 0; e < prefix.total_size(2); ++e) {
    auto [sl, pos] = prefix.coords(2, e);
    check(pos < static_cast<int>(slices[static_cast<size_t>(sl)].l3.size()), "ValidationError",
          "truss3: missing level-3 fiber");
    d3.fibers.push_back(Fiber::parse(slices[static_cast<size_t>(sl)].l3[static_cast<size_t>(pos)]));
  }
  for (auto [x, y] : prefix.total_poset(2).covers()) {
    auto [sa, pa] = prefix.coords(2, x);
    auto [sb, pb] = prefix.coords(2, y);
    const std::vector<std::pair<int, int>>* gen = nullptr;
    if (sa == sb) {
      auto it = slices[static_cast<size_t>(sa)].vertical.find({pa, pb});
      check(it != slices[static_cast<size_t>(sa)].vertical.end(), "ValidationError",
            "truss3: slice " + std::to_string(sa) + " missing vertical bordism " +
                std::to_string(pa) + ">" + std::to_string(pb));
      gen = &it->second;
    } else {
      auto st = steps.find({sa, sb});
      check(st != steps.end(), "ValidationError", "truss3: missing step");
      auto it = st->second.l3.find({pa, pb});
      check(it != st->second.l3.end(), "ValidationError",
            "truss3: step " + std::to_string(sa) + ">" + std::to_string(sb) +
                " missing level-3 bordism " + std::to_string(pa) + ">" + std::to_string(pb));
      gen = &it->second;
    }
    d3.bordisms.insert({{x, y}, Bordism::make(d3.fibers[static_cast<size_t>(x)],
                                              d3.fibers[static_cast<size_t>(y)], *gen)});
  }
  return TrussBundle::make(Poset::point(), {d1, d2, d3});
}

namespace {

// shorthand for generating pair lists
using GP = std::vector<std::pair<int, int>>;

TrussBundle truss1(const std::string& word) {
  LevelData ld;
  ld.fibers.push_back(Fiber::parse(word));
  return TrussBundle::truss({ld});
}

}  // namespace

TanglePresentation pt1() { return TanglePresentation::make(truss1("RSR"), {1}, 0); }

TanglePresentation pt2() {
  TrussBundle b = truss2("RSR", {"R", "RSR", "R"}, {{{0, 1}, GP{{0, 0}, {0, 2}}},
                                                    {{2, 1}, GP{{0, 0}, {0, 2}}}});
  return TanglePresentation::make(b, {b.element_of(2, 1, 1)}, 0);
}

TanglePresentation strand() {
  TrussBundle b = truss2("R", {"RSR"}, {});
  return TanglePresentation::make(b, {b.element_of(2, 0, 1)}, 1);
}

TanglePresentation cap() {
  TrussBundle b = truss2("RSR", {"RSRSR", "RSR", "R"},
                         {{{0, 1}, GP{{1, 1}, {3, 1}, {0, 0}, {4, 2}}},
                          {{2, 1}, GP{{0, 0}, {0, 2}}}});
  return TanglePresentation::make(
      b, {b.element_of(2, 0, 1), b.element_of(2, 0, 3), b.element_of(2, 1, 1)}, 1);
}

TanglePresentation cup() {
  TrussBundle b = truss2("RSR", {"R", "RSR", "RSRSR"},
                         {{{0, 1}, GP{{0, 0}, {0, 2}}},
                          {{2, 1}, GP{{1, 1}, {3, 1}, {0, 0}, {4, 2}}}});
  return TanglePresentation::make(
      b, {b.element_of(2, 2, 1), b.element_of(2, 2, 3), b.element_of(2, 1, 1)}, 1);
}

TanglePresentation circle() {
  TrussBundle b = truss2("RSRSR", {"R", "RSR", "RSRSR", "RSR", "R"},
                         {{{0, 1}, GP{{0, 0}, {0, 2}}},
                          {{2, 1}, GP{{1, 1}, {3, 1}, {0, 0}, {4, 2}}},
                          {{2, 3}, GP{{1, 1}, {3, 1}, {0, 0}, {4, 2}}},
                          {{4, 3}, GP{{0, 0}, {0, 2}}}});
  return TanglePresentation::make(b,
                                  {b.element_of(2, 1, 1), b.element_of(2, 2, 1),
                                   b.element_of(2, 2, 3), b.element_of(2, 3, 1)},
                                  1);
}

TanglePresentation bifur() {
  // a line bifurcating off another line: the branch point sits inside a
  // 1-cell of the horizontal stratum
  TrussBundle b = truss2("RSR", {"R", "RSR", "RSR"},
                         {{{0, 1}, GP{{0, 0}, {0, 2}}},
                          {{2, 1}, GP{{1, 1}, {0, 0}, {2, 2}}}});
  return TanglePresentation::make(b,
                                  {b.element_of(2, 1, 0), b.element_of(2, 1, 1),
                                   b.element_of(2, 1, 2), b.element_of(2, 2, 1)},
                                  1);
}

TanglePresentation empty1() {
  TrussBundle b = truss2("R", {"R"}, {});
  return TanglePresentation::make(b, {}, 1);
}

TanglePresentation sheet() {
  LevelData d1, d2, d3;
  d1.fibers.push_back(Fiber::parse("R"));
  d2.fibers.push_back(Fiber::parse("R"));
  d3.fibers.push_back(Fiber::parse("RSR"));
  TrussBundle b = TrussBundle::make(Poset::point(), {d1, d2, d3});
  return TanglePresentation::make(b, {b.total_poset(3).index_checked("0-0-1")}, 2);
}

TanglePresentation wiggle2() {
  // cone over the 2-A1 link circle: slices f = |+cap, star, g = cap+|
  Slice f{"RSR",
          {"RSRSRSR", "RSRSR", "RSR"},
          {{{0, 1}, GP{{1, 1}, {3, 3}, {5, 3}, {0, 0}, {2, 2}, {6, 4}}},
           {{2, 1}, GP{{1, 1}, {0, 0}, {2, 2}, {2, 4}}}}};
  Slice star{"RSR",
             {"RSRSRSR", "RSR", "RSR"},
             {{{0, 1}, GP{{1, 1}, {3, 1}, {5, 1}, {0, 0}, {6, 2}}},
              {{2, 1}, GP{{1, 1}, {0, 0}, {2, 2}}}}};
  Slice g{"RSR",
          {"RSRSRSR", "RSRSR", "RSR"},
          {{{0, 1}, GP{{1, 1}, {3, 1}, {5, 3}, {0, 0}, {4, 2}, {6, 4}}},
           {{2, 1}, GP{{1, 3}, {0, 0}, {0, 2}, {2, 4}}}}};
  Step fs{GP{{0, 0}, {1, 1}, {2, 2}},
          {{{0, 0}, GP{{1, 1}, {3, 3}, {5, 5}, {0, 0}, {2, 2}, {4, 4}, {6, 6}}},
           {{1, 1}, GP{{1, 1}, {3, 1}, {0, 0}, {4, 2}}},
           {{2, 2}, GP{{1, 1}, {0, 0}, {2, 2}}}}};
  Step gs{GP{{0, 0}, {1, 1}, {2, 2}},
          {{{0, 0}, GP{{1, 1}, {3, 3}, {5, 5}, {0, 0}, {2, 2}, {4, 4}, {6, 6}}},
           {{1, 1}, GP{{1, 1}, {3, 1}, {0, 0}, {4, 2}}},
           {{2, 2}, GP{{1, 1}, {0, 0}, {2, 2}}}}};
  TrussBundle b = truss3("RSR", {f, star, g}, {{{0, 1}, fs}, {{2, 1}, gs}});
  std::vector<int> q;
  const Poset& top = b.total_poset(3);
  for (const char* k :
       {"0-0-1", "0-0-3", "0-0-5", "0-1-1", "0-1-3", "0-2-1", "1-0-1", "1-0-3", "1-0-5",
        "1-1-1", "1-2-1", "2-0-1", "2-0-3", "2-0-5", "2-1-1", "2-1-3", "2-2-1"})
    q.push_back(top.index_checked(k));
  return TanglePresentation::make(b, q, 2);
}

TanglePresentation uturn_ng() {
  Slice two{"RSR", {"R", "RSRSR", "R"}, {{{0, 1}, GP{{0, 0}, {0, 2}, {0, 4}}},
                                         {{2, 1}, GP{{0, 0}, {0, 2}, {0, 4}}}}};
  Slice apex{"RSR", {"R", "RSR", "R"}, {{{0, 1}, GP{{0, 0}, {0, 2}}},
                                        {{2, 1}, GP{{0, 0}, {0, 2}}}}};
  Slice after{"R", {"R"}, {}};
  Step s01{GP{{0, 0}, {1, 1}, {2, 2}},
           {{{0, 0}, GP{{0, 0}}},
            {{1, 1}, GP{{1, 1}, {3, 1}, {0, 0}, {4, 2}}},
            {{2, 2}, GP{{0, 0}}}}};
  Step s21{GP{{0, 0}, {0, 2}},
           {{{0, 0}, GP{{0, 0}}}, {{0, 2}, GP{{0, 0}}}}};
  TrussBundle b = truss3("RSR", {two, apex, after}, {{{0, 1}, s01}, {{2, 1}, s21}});
  const Poset& top = b.total_poset(3);
  return TanglePresentation::make(
      b, {top.index_checked("0-1-1"), top.index_checked("0-1-3"), top.index_checked("1-1-1")}, 1);
}

TanglePresentation uturn_gen() {
  Slice two{"RSRSR",
            {"R", "RSR", "R", "RSR", "R"},
            {{{0, 1}, GP{{0, 0}, {0, 2}}},
             {{2, 1}, GP{{0, 0}, {0, 2}}},
             {{2, 3}, GP{{0, 0}, {0, 2}}},
             {{4, 3}, GP{{0, 0}, {0, 2}}}}};
  Slice apex{"RSR", {"R", "RSR", "R"}, {{{0, 1}, GP{{0, 0}, {0, 2}}},
                                        {{2, 1}, GP{{0, 0}, {0, 2}}}}};
  Slice after{"R", {"R"}, {}};
  Step s01{GP{{1, 1}, {3, 1}, {0, 0}, {4, 2}},
           {{{0, 0}, GP{{0, 0}}},
            {{1, 1}, GP{{1, 1}, {0, 0}, {2, 2}}},
            {{3, 1}, GP{{1, 1}, {0, 0}, {2, 2}}},
            {{4, 2}, GP{{0, 0}}}}};
  Step s21{GP{{0, 0}, {0, 2}},
           {{{0, 0}, GP{{0, 0}}}, {{0, 2}, GP{{0, 0}}}}};
  TrussBundle b = truss3("RSR", {two, apex, after}, {{{0, 1}, s01}, {{2, 1}, s21}});
  const Poset& top = b.total_poset(3);
  return TanglePresentation::make(
      b, {top.index_checked("0-1-1"), top.index_checked("0-3-1"), top.index_checked("1-1-1")}, 1);
}

TanglePresentation braid() {
  Slice pair{"RSR", {"R", "RSRSR", "R"}, {{{0, 1}, GP{{0, 0}, {0, 2}, {0, 4}}},
                                          {{2, 1}, GP{{0, 0}, {0, 2}, {0, 4}}}}};
  Slice split{"RSRSR",
              {"R", "RSR", "R", "RSR", "R"},
              {{{0, 1}, GP{{0, 0}, {0, 2}}},
               {{2, 1}, GP{{0, 0}, {0, 2}}},
               {{2, 3}, GP{{0, 0}, {0, 2}}},
               {{4, 3}, GP{{0, 0}, {0, 2}}}}};
  Step keep{GP{{0, 0}, {1, 1}, {2, 2}},
            {{{0, 0}, GP{{0, 0}}},
             {{1, 1}, GP{{1, 1}, {3, 3}, {0, 0}, {2, 2}, {4, 4}}},
             {{2, 2}, GP{{0, 0}}}}};
  // B (lower y wall) still sits right of A before the crossing...
  Step rejoin_before{GP{{1, 1}, {3, 1}, {0, 0}, {4, 2}},
                     {{{0, 0}, GP{{0, 0}}},
                      {{1, 1}, GP{{1, 3}, {0, 0}, {0, 2}, {2, 4}}},
                      {{3, 1}, GP{{1, 1}, {0, 0}, {2, 2}, {2, 4}}},
                      {{4, 2}, GP{{0, 0}}}}};
  // ...and left of A after it: the crossing lives in the rejoining bordisms.
  Step rejoin_after{GP{{1, 1}, {3, 1}, {0, 0}, {4, 2}},
                    {{{0, 0}, GP{{0, 0}}},
                     {{1, 1}, GP{{1, 1}, {0, 0}, {2, 2}, {2, 4}}},
                     {{3, 1}, GP{{1, 3}, {0, 0}, {0, 2}, {2, 4}}},
                     {{4, 2}, GP{{0, 0}}}}};
  TrussBundle b = truss3("RSRSR", {pair, pair, split, pair, pair},
                         {{{0, 1}, keep},
                          {{2, 1}, rejoin_before},
                          {{2, 3}, rejoin_after},
                          {{4, 3}, keep}});
  const Poset& top = b.total_poset(3);
  std::vector<int> q;
  for (const char* k : {"0-1-1", "0-1-3", "1-1-1", "1-1-3", "2-1-1", "2-3-1", "3-1-1",
                        "3-1-3", "4-1-1", "4-1-3"})
    q.push_back(top.index_checked(k));
  return TanglePresentation::make(b, q, 1);
}

TangleBundle cap_creation() {
  // special fiber CAP over "0", generic empty tangle over "1"
  TanglePresentation c = cap();
  TanglePresentation e = empty1();
  Poset base = Poset::build({"0", "1"}, {{"1", "0"}});
  LevelData d1, d2;
  d1.fibers.push_back(c.bundle().level(1).fibers[0]);  // over "0": RSR
  d1.fibers.push_back(e.bundle().level(1).fibers[0]);  // over "1": R
  d1.bordisms.insert({{1, 0}, Bordism::make(d1.fibers[1], d1.fibers[0], GP{{0, 0}, {0, 2}})});
  TrussBundle prefix = TrussBundle::make(base, {d1});
  // combined level-1 total: "0-0","0-1","0-2","1-0"
  for (int p = 0; p < prefix.total_size(1); ++p) {
    auto [be, pos] = prefix.coords(1, p);
    if (be == 0)
      d2.fibers.push_back(c.bundle().level(2).fibers[static_cast<size_t>(pos)]);
    else
      d2.fibers.push_back(e.bundle().level(2).fibers[static_cast<size_t>(pos)]);
  }
  for (auto [x, y] : prefix.total_poset(1).covers()) {
    auto [bx, px] = prefix.coords(1, x);
    auto [by, py] = prefix.coords(1, y);
    if (bx == by && bx == 0) {
      d2.bordisms.insert({{x, y}, c.bundle().arrow_bordism(
                                      2, c.bundle().element_of(1, 0, px),
                                      c.bundle().element_of(1, 0, py))});
    } else {
      // generic "R" fiber into CAP fibers: cofunction pairs only
      GP gen;
      const Fiber& tgt = d2.fibers[static_cast<size_t>(y)];
      for (int r : tgt.regulars()) gen.emplace_back(0, r);
      d2.bordisms.insert({{x, y}, Bordism::make(d2.fibers[static_cast<size_t>(x)], tgt, gen)});
    }
  }
  TrussBundle b = TrussBundle::make(base, {d1, d2});
  const Poset& top = b.total_poset(2);
  std::vector<int> q;
  for (const char* k : {"0-0-1", "0-0-3", "0-1-1"}) q.push_back(top.index_checked(k));
  return TangleBundle::make(b, q, 1);
}

Perturbation uturn_perturbation() {
  auto p = connect_perturbation(uturn_ng(), uturn_gen());
  check(p.has_value(), "ValidationError", "u-turn perturbation could not be built");
  return *p;
}

}  // namespace fixtures
}  // namespace trusskit
