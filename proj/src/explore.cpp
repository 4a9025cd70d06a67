#include "trusskit/explore.hpp"

#include <algorithm>
#include <set>

namespace trusskit {

// ---------------------------------------------------------------------------
// TangleBundle

TangleBundle TangleBundle::make(TrussBundle bundle, std::vector<int> q, int m) {
  std::sort(q.begin(), q.end());
  q.erase(std::unique(q.begin(), q.end()), q.end());
  TangleBundle tb;
  tb.strat_ = StratTruss::indicator(std::move(bundle), q);
  tb.q_ = std::move(q);
  tb.m_ = m;
  return tb;
}

TanglePresentation TangleBundle::fiber_over(int base_elt) const {
  TrussRestriction r = bundle().restrict_base({base_elt});
  const std::vector<int>& top_map = r.new_to_old.back();
  std::vector<int> q;
  for (size_t e = 0; e < top_map.size(); ++e)
    if (std::binary_search(q_.begin(), q_.end(), top_map[e])) q.push_back(static_cast<int>(e));
  return TanglePresentation::make(r.bundle.rebase_to_point(), q, m_);
}

TangleBundle TangleBundle::restrict_to(const std::vector<int>& base_keep) const {
  TrussRestriction r = bundle().restrict_base(base_keep);
  const std::vector<int>& top_map = r.new_to_old.back();
  std::vector<int> q;
  for (size_t e = 0; e < top_map.size(); ++e)
    if (std::binary_search(q_.begin(), q_.end(), top_map[e])) q.push_back(static_cast<int>(e));
  return TangleBundle::make(r.bundle, q, m_);
}

TangleBundle constant_bundle(const Poset& base, const TanglePresentation& tp) {
  TrussBundle prod = TrussBundle::make(base, {}).product_with(tp.bundle());
  // Q: elements whose fiber projection lies in tp's Q.
  int n = prod.n();
  std::vector<int> q;
  for (int e = 0; e < prod.total_size(n); ++e) {
    std::vector<int> pos;
    int cur = e;
    for (int i = n; i >= 1; --i) {
      pos.push_back(prod.coords(i, cur).second);
      cur = prod.coords(i, cur).first;
    }
    std::reverse(pos.begin(), pos.end());
    int telt = 0;
    for (int j = 1; j <= n; ++j)
      telt = tp.bundle().element_of(j, j == 1 ? 0 : telt, pos[static_cast<size_t>(j - 1)]);
    if (tp.in_q(telt)) q.push_back(e);
  }
  return TangleBundle::make(prod, q, tp.m());
}

BundleReport is_tangle_bundle(const TangleBundle& tb) {
  BundleReport rep;
  for (int b = 0; b < tb.bundle().base().size(); ++b) {
    TanglePresentation f = tb.fiber_over(b);
    TangleReport tr = is_tangle(f);
    if (tr.verdict != Verdict::Yes) {
      rep.reason = "fiber over " + tb.bundle().base().name(b) + " is not a tangle (" +
                   tr.reason + ")";
      return rep;
    }
  }
  rep.yes = true;
  return rep;
}

Verdict is_fiber_bundle(const TangleBundle& tb) {
  BundleReport base_rep = is_tangle_bundle(tb);
  if (!base_rep.yes) return Verdict::No;
  const Poset& base = tb.bundle().base();
  int n = tb.bundle().n();
  bool unknown = false;
  for (int c = 0; c < base.size(); ++c)
    for (int b = 0; b < base.size(); ++b) {
      if (c == b || !base.leq(c, b)) continue;
      TangleBundle arrow = tb.restrict_to({c, b});
      const Poset& abase = arrow.bundle().base();
      int ac = abase.index_checked(base.name(c));
      int ab = abase.index_checked(base.name(b));
      // lower closures of tangle elements over b
      for (int x : arrow.q()) {
        if (arrow.bundle().project(n, 0, x) != ab) continue;
        std::vector<std::vector<int>> keep(static_cast<size_t>(n + 1));
        keep[static_cast<size_t>(n)] = arrow.bundle().total_poset(n).down_set(x);
        for (int i = n; i >= 1; --i) {
          std::set<int> parents;
          for (int e : keep[static_cast<size_t>(i)])
            parents.insert(arrow.bundle().coords(i, e).first);
          keep[static_cast<size_t>(i - 1)].assign(parents.begin(), parents.end());
        }
        TrussRestriction lower = arrow.bundle().restrict_levels(keep);
        std::vector<int> lq;
        for (size_t e = 0; e < lower.new_to_old.back().size(); ++e)
          if (std::binary_search(arrow.q().begin(), arrow.q().end(),
                                 lower.new_to_old.back()[e]))
            lq.push_back(static_cast<int>(e));
        int lc = lower.bundle.base().index(base.name(c));
        if (lc < 0) return Verdict::No;  // generic fiber is empty
        TangleBundle lower_tb = TangleBundle::make(lower.bundle, lq, tb.m());
        TanglePresentation gen = lower_tb.fiber_over(lc);
        // normalized compactified tangle manifold must be an m-disk
        StratTruss nf = normalize(gen.strat()).nf;
        StratTruss comp = nf.compactified();
        int in_q = comp.label_poset().index("0");
        std::vector<int> qbar;
        for (int e = 0; e < comp.bundle().total_size(n); ++e)
          if (comp.label_of(e) == in_q) qbar.push_back(e);
        Verdict disk = recognize_disk(comp.bundle().total_poset(n).induced(qbar), tb.m());
        if (disk == Verdict::No) return Verdict::No;
        if (disk == Verdict::Unknown) unknown = true;
      }
    }
  return unknown ? Verdict::Unknown : Verdict::Yes;
}

bool is_path(const TanglePresentation& tp, std::string* reason) {
  TangleReport tr = is_tangle(tp);
  if (tr.verdict != Verdict::Yes) {
    if (reason) *reason = "not a tangle: " + tr.reason;
    return false;
  }
  if (tp.bundle().n() < 1 || tp.m() < 1) {
    if (reason) *reason = "paths need at least one level and m >= 1";
    return false;
  }
  // the (n-1)-truss bundle over the level-1 poset must be a fiber bundle of
  // (m-1)-tangles
  TrussBundle upper = tp.bundle().truncate_above(1);
  TangleBundle tb = TangleBundle::make(upper, tp.q(), tp.m() - 1);
  Verdict fb = is_fiber_bundle(tb);
  if (fb != Verdict::Yes) {
    if (reason) *reason = fb == Verdict::No ? "level-1 truncation is not a fiber bundle"
                                            : "fiber bundle check is unknown";
    return false;
  }
  return true;
}

bool is_coherence(const TanglePresentation& tp, std::string* reason) {
  if (!is_path(tp, reason)) return false;
  TangleReport tr = is_tangle(tp);
  for (auto [x, k] : tr.tdim)
    if (k == 0) {
      if (reason)
        *reason = "contains a singular point at " +
                  tp.bundle().total_poset(tp.bundle().n()).name(x);
      return false;
    }
  return true;
}

// ---------------------------------------------------------------------------
// Perturbations

namespace {

// base of a perturbation: two elements with a single cover (generic -> special)
std::pair<int, int> perturbation_parts(const TangleBundle& tb) {
  const Poset& base = tb.bundle().base();
  check(base.size() == 2 && base.covers().size() == 1, "ValidationError",
        "perturbation base must be the 1-simplex");
  auto [a, b] = base.covers()[0];
  return {b, a};  // (special part, generic part)
}

Poset simplex_base() { return Poset::build({"0", "1"}, {{"1", "0"}}); }

}  // namespace

TanglePresentation Perturbation::special_fiber() const {
  return tb_.fiber_over(perturbation_parts(tb_).first);
}

TanglePresentation Perturbation::generic_fiber() const {
  return tb_.fiber_over(perturbation_parts(tb_).second);
}

Perturbation identity_perturbation(const TanglePresentation& tp) {
  return Perturbation(constant_bundle(simplex_base(), tp));
}

bool verify_perturbation(const Perturbation& p, std::string* diagnostics) {
  const TangleBundle& tb = p.tangle_bundle();
  const Poset& base = tb.bundle().base();
  if (base.size() != 2 || base.covers().size() != 1) {
    if (diagnostics) *diagnostics = "base is not the 1-simplex";
    return false;
  }
  BundleReport rep = is_tangle_bundle(tb);
  if (!rep.yes) {
    if (diagnostics) *diagnostics = rep.reason;
    return false;
  }
  auto [sp, gp] = perturbation_parts(tb);
  int n = tb.bundle().n();
  const Poset& top = tb.bundle().total_poset(n);
  for (int x : tb.q()) {
    if (tb.bundle().project(n, 0, x) != sp) continue;
    bool hit = false;
    for (int y : tb.q()) {
      if (tb.bundle().project(n, 0, y) != gp) continue;
      if (top.leq(y, x)) {
        hit = true;
        break;
      }
    }
    if (!hit) {
      if (diagnostics)
        *diagnostics = "special tangle element " + top.name(x) + " receives no generic element";
      return false;
    }
  }
  if (diagnostics) diagnostics->clear();
  return true;
}

// ---------------------------------------------------------------------------
// Bundle search: connect a generic fiber onto a special fiber over (0 <- 1).

namespace {

struct ConnectSearch {
  const TanglePresentation& special;
  const TanglePresentation& generic;
  long long* attempts;
  long long max_attempts;
  int n;
  Poset base = simplex_base();
  std::vector<LevelData> levels;
  // projections of combined total elements into special/generic totals
  std::vector<std::vector<int>> sproj, gproj;
  std::optional<Perturbation> result;
  std::function<bool(const Perturbation&)> accept;
  bool truncated = false;

  ConnectSearch(const TanglePresentation& s, const TanglePresentation& g, long long* att,
                long long max_att)
      : special(s), generic(g), attempts(att), max_attempts(max_att), n(s.bundle().n()) {
    sproj.resize(static_cast<size_t>(n + 1));
    gproj.resize(static_cast<size_t>(n + 1));
    sproj[0] = {0, -1};
    gproj[0] = {-1, 0};
  }

  bool spend() {
    if (attempts) {
      if (*attempts >= max_attempts) {
        truncated = true;
        return false;
      }
      ++*attempts;
    }
    return true;
  }

  void finalize(const TrussBundle& full) {
    std::vector<int> q;
    for (int e = 0; e < full.total_size(n); ++e) {
      int se = sproj[static_cast<size_t>(n)][static_cast<size_t>(e)];
      int ge = gproj[static_cast<size_t>(n)][static_cast<size_t>(e)];
      if ((se >= 0 && special.in_q(se)) || (ge >= 0 && generic.in_q(ge))) q.push_back(e);
    }
    TangleBundle tb;
    try {
      tb = TangleBundle::make(full, q, special.m());
    } catch (const Error&) {
      return;
    }
    Perturbation p(tb);
    if (!verify_perturbation(p)) return;
    if (accept && !accept(p)) return;
    result = p;
  }

  void go(int level) {
    if (result || truncated) return;
    TrussBundle prefix;
    try {
      prefix = TrussBundle::make(base, levels);
    } catch (const Error&) {
      return;
    }
    if (level > n) {
      finalize(prefix);
      return;
    }
    const Poset& parent = prefix.total_poset(level - 1);
    LevelData ld;
    for (int p = 0; p < parent.size(); ++p) {
      int spar = sproj[static_cast<size_t>(level - 1)][static_cast<size_t>(p)];
      ld.fibers.push_back(spar >= 0
                              ? special.bundle().level(level).fibers[static_cast<size_t>(spar)]
                              : generic.bundle().level(level).fibers[static_cast<size_t>(
                                    gproj[static_cast<size_t>(level - 1)][static_cast<size_t>(p)])]);
    }
    std::vector<std::pair<int, int>> cross;
    for (auto [a, b] : parent.covers()) {
      int sa = sproj[static_cast<size_t>(level - 1)][static_cast<size_t>(a)];
      int sb = sproj[static_cast<size_t>(level - 1)][static_cast<size_t>(b)];
      int ga = gproj[static_cast<size_t>(level - 1)][static_cast<size_t>(a)];
      int gb = gproj[static_cast<size_t>(level - 1)][static_cast<size_t>(b)];
      if (sa >= 0 && sb >= 0)
        ld.bordisms.insert({{a, b}, special.bundle().arrow_bordism(level, sa, sb)});
      else if (ga >= 0 && gb >= 0)
        ld.bordisms.insert({{a, b}, generic.bundle().arrow_bordism(level, ga, gb)});
      else
        cross.emplace_back(a, b);
    }
    assign_cross(level, std::move(ld), cross, 0);
  }

  void assign_cross(int level, LevelData ld, const std::vector<std::pair<int, int>>& cross,
                    size_t idx) {
    if (result || truncated) return;
    if (idx == cross.size()) {
      if (!spend()) return;
      std::vector<LevelData> saved = levels;
      levels.push_back(ld);
      TrussBundle prefix;
      bool ok = true;
      try {
        prefix = TrussBundle::make(base, levels);
      } catch (const Error&) {
        ok = false;
      }
      if (ok) {
        // projections for the new level
        sproj[static_cast<size_t>(level)].assign(static_cast<size_t>(prefix.total_size(level)), -1);
        gproj[static_cast<size_t>(level)].assign(static_cast<size_t>(prefix.total_size(level)), -1);
        for (int e = 0; e < prefix.total_size(level); ++e) {
          auto [p, pos] = prefix.coords(level, e);
          int spar = sproj[static_cast<size_t>(level - 1)][static_cast<size_t>(p)];
          int gpar = gproj[static_cast<size_t>(level - 1)][static_cast<size_t>(p)];
          if (spar >= 0)
            sproj[static_cast<size_t>(level)][static_cast<size_t>(e)] =
                special.bundle().element_of(level, spar, pos);
          else
            gproj[static_cast<size_t>(level)][static_cast<size_t>(e)] =
                generic.bundle().element_of(level, gpar, pos);
        }
        go(level + 1);
      }
      levels = std::move(saved);
      return;
    }
    auto [a, b] = cross[idx];
    // generic side maps into the special side
    const Fiber& fa = ld.fibers[static_cast<size_t>(a)];
    const Fiber& fb = ld.fibers[static_cast<size_t>(b)];
    for (const Bordism& cand : enumerate_bordisms(fa, fb)) {
      if (result || truncated) return;
      LevelData next = ld;
      next.bordisms.insert({{a, b}, cand});
      assign_cross(level, std::move(next), cross, idx + 1);
    }
  }
};

}  // namespace

std::optional<Perturbation> connect_perturbation(const TanglePresentation& special,
                                                 const TanglePresentation& generic,
                                                 long long* attempts, long long max_attempts) {
  if (special.bundle().n() != generic.bundle().n() || special.m() != generic.m())
    return std::nullopt;
  ConnectSearch cs(special, generic, attempts, max_attempts);
  cs.go(1);
  return cs.result;
}

Perturbation compose_perturbations(const Perturbation& p1, const Perturbation& p2) {
  TanglePresentation b1 = p1.generic_fiber();
  TanglePresentation b2 = p2.special_fiber();
  check(strat_equal(b1.strat(), b2.strat()) && b1.m() == b2.m(), "FibersMismatch",
        "generic of the first must equal special of the second");
  const TangleBundle& t1 = p1.tangle_bundle();
  const TangleBundle& t2 = p2.tangle_bundle();
  auto [sp1, gp1] = perturbation_parts(t1);
  auto [sp2, gp2] = perturbation_parts(t2);
  int n = t1.bundle().n();
  Poset base3 = Poset::build({"0", "1", "2"}, {{"1", "0"}, {"2", "1"}});
  // projections: combined element -> element of t1 / t2 totals (or -1)
  std::vector<std::vector<int>> proj1(static_cast<size_t>(n + 1)),
      proj2(static_cast<size_t>(n + 1));
  proj1[0] = {sp1, gp1, -1};
  proj2[0] = {-1, sp2, gp2};
  std::vector<LevelData> levels;
  TrussBundle prefix = TrussBundle::make(base3, {});
  for (int i = 1; i <= n; ++i) {
    const Poset& parent = prefix.total_poset(i - 1);
    LevelData ld;
    for (int p = 0; p < parent.size(); ++p) {
      int q1 = proj1[static_cast<size_t>(i - 1)][static_cast<size_t>(p)];
      ld.fibers.push_back(q1 >= 0 ? t1.bundle().level(i).fibers[static_cast<size_t>(q1)]
                                  : t2.bundle().level(i).fibers[static_cast<size_t>(
                                        proj2[static_cast<size_t>(i - 1)][static_cast<size_t>(p)])]);
    }
    for (auto [a, b] : parent.covers()) {
      int a1 = proj1[static_cast<size_t>(i - 1)][static_cast<size_t>(a)];
      int b1 = proj1[static_cast<size_t>(i - 1)][static_cast<size_t>(b)];
      int a2 = proj2[static_cast<size_t>(i - 1)][static_cast<size_t>(a)];
      int b2 = proj2[static_cast<size_t>(i - 1)][static_cast<size_t>(b)];
      if (a1 >= 0 && b1 >= 0 && t1.bundle().total_poset(i - 1).leq(a1, b1))
        ld.bordisms.insert({{a, b}, t1.bundle().arrow_bordism(i, a1, b1)});
      else if (a2 >= 0 && b2 >= 0 && t2.bundle().total_poset(i - 1).leq(a2, b2))
        ld.bordisms.insert({{a, b}, t2.bundle().arrow_bordism(i, a2, b2)});
      else
        fail("FibersMismatch", "composite bundle cover without source data");
    }
    levels.push_back(std::move(ld));
    prefix = TrussBundle::make(base3, levels);
    proj1[static_cast<size_t>(i)].assign(static_cast<size_t>(prefix.total_size(i)), -1);
    proj2[static_cast<size_t>(i)].assign(static_cast<size_t>(prefix.total_size(i)), -1);
    for (int e = 0; e < prefix.total_size(i); ++e) {
      auto [p, pos] = prefix.coords(i, e);
      int q1 = proj1[static_cast<size_t>(i - 1)][static_cast<size_t>(p)];
      int q2 = proj2[static_cast<size_t>(i - 1)][static_cast<size_t>(p)];
      if (q1 >= 0)
        proj1[static_cast<size_t>(i)][static_cast<size_t>(e)] =
            t1.bundle().element_of(i, q1, pos);
      if (q2 >= 0)
        proj2[static_cast<size_t>(i)][static_cast<size_t>(e)] =
            t2.bundle().element_of(i, q2, pos);
    }
  }
  std::vector<int> q;
  for (int e = 0; e < prefix.total_size(n); ++e) {
    int q1 = proj1[static_cast<size_t>(n)][static_cast<size_t>(e)];
    int q2 = proj2[static_cast<size_t>(n)][static_cast<size_t>(e)];
    bool in1 = q1 >= 0 && std::binary_search(t1.q().begin(), t1.q().end(), q1);
    bool in2 = q2 >= 0 && std::binary_search(t2.q().begin(), t2.q().end(), q2);
    if (in1 || in2) q.push_back(e);
  }
  TangleBundle big = TangleBundle::make(prefix, q, t1.m());
  // restriction to (0 <- 2), re-based as the 1-simplex
  TangleBundle r = big.restrict_to({base3.index_checked("0"), base3.index_checked("2")});
  Poset nb = simplex_base();
  TrussBundle renamed = TrussBundle::make(nb, [&] {
    std::vector<LevelData> ls;
    for (int i = 1; i <= r.bundle().n(); ++i) ls.push_back(r.bundle().level(i));
    return ls;
  }());
  return Perturbation(TangleBundle::make(renamed, r.q(), r.m()));
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

std::vector<std::string> fiber_words(int max_len) {
  std::vector<std::string> out;
  for (int len = 1; len <= max_len; ++len)
    for (char start : {'R', 'S'}) {
      std::string w;
      char c = start;
      for (int i = 0; i < len; ++i) {
        w += c;
        c = (c == 'R') ? 'S' : 'R';
      }
      out.push_back(w);
    }
  return out;
}

void enumerate_levels(const Poset& base, std::vector<LevelData>& levels, int depth, int n,
                      int max_top, std::vector<TrussBundle>& out) {
  TrussBundle prefix;
  try {
    prefix = TrussBundle::make(base, levels);
  } catch (const Error&) {
    return;
  }
  if (depth == n) {
    out.push_back(prefix);
    return;
  }
  const Poset& parent = prefix.total_poset(depth);
  int np = parent.size();
  if (np > max_top) return;
  std::vector<std::string> words = fiber_words(max_top);
  // choose fiber words with total size <= max_top
  std::vector<int> choice(static_cast<size_t>(np), 0);
  while (true) {
    int total = 0;
    for (int p = 0; p < np; ++p)
      total += static_cast<int>(words[static_cast<size_t>(choice[static_cast<size_t>(p)])].size());
    if (total <= max_top) {
      LevelData ld;
      for (int p = 0; p < np; ++p)
        ld.fibers.push_back(Fiber::parse(words[static_cast<size_t>(choice[static_cast<size_t>(p)])]));
      // assign bordisms per cover
      const auto& covers = parent.covers();
      std::vector<std::vector<Bordism>> cands;
      bool feasible = true;
      for (auto [a, b] : covers) {
        cands.push_back(enumerate_bordisms(ld.fibers[static_cast<size_t>(a)],
                                           ld.fibers[static_cast<size_t>(b)]));
        if (cands.back().empty()) {
          feasible = false;
          break;
        }
      }
      if (feasible) {
        std::vector<size_t> pick(covers.size(), 0);
        while (true) {
          LevelData full = ld;
          for (size_t ci = 0; ci < covers.size(); ++ci)
            full.bordisms.insert({covers[ci], cands[ci][pick[ci]]});
          levels.push_back(full);
          enumerate_levels(base, levels, depth + 1, n, max_top, out);
          levels.pop_back();
          size_t ci = 0;
          for (; ci < covers.size(); ++ci) {
            pick[ci]++;
            if (pick[ci] < cands[ci].size()) break;
            pick[ci] = 0;
          }
          if (ci == covers.size()) break;
        }
        if (covers.empty()) {
          // handled above: the while loop runs once even with no covers
        }
      }
    }
    // next word choice
    int p = 0;
    for (; p < np; ++p) {
      choice[static_cast<size_t>(p)]++;
      if (choice[static_cast<size_t>(p)] < static_cast<int>(words.size())) break;
      choice[static_cast<size_t>(p)] = 0;
    }
    if (p == np) break;
  }
}

}  // namespace

std::vector<TrussBundle> enumerate_trusses(int n, int max_top) {
  std::vector<TrussBundle> out;
  std::vector<LevelData> levels;
  enumerate_levels(Poset::point(), levels, 0, n, max_top, out);
  return out;
}

std::vector<StratTruss> enumerate_stratified(int n, int max_top, int max_strata) {
  std::vector<StratTruss> out;
  for (const TrussBundle& t : enumerate_trusses(n, max_top)) {
    int sz = t.total_size(n);
    // restricted growth strings = partitions of the top elements
    std::vector<int> cls(static_cast<size_t>(sz), 0);
    while (true) {
      int num = 1 + *std::max_element(cls.begin(), cls.end());
      if (num <= max_strata) {
        // induced relation on classes must be antisymmetric
        std::vector<uint8_t> rel(static_cast<size_t>(num) * num, 0);
        const Poset& top = t.total_poset(n);
        for (int a = 0; a < sz; ++a)
          for (int b = 0; b < sz; ++b)
            if (top.leq(a, b))
              rel[static_cast<size_t>(cls[static_cast<size_t>(a)]) * num +
                  cls[static_cast<size_t>(b)]] = 1;
        try {
          std::vector<std::string> names;
          for (int i = 0; i < num; ++i) names.push_back("l" + std::to_string(i));
          Poset L = Poset::from_relation(names, rel);
          StratTruss st = StratTruss::make(t, L, cls);
          if (st.num_strata() == num) out.push_back(std::move(st));
        } catch (const Error&) {
        }
      }
      // next restricted growth string
      int i = sz - 1;
      for (; i > 0; --i) {
        int maxprev = 0;
        for (int j = 0; j < i; ++j) maxprev = std::max(maxprev, cls[static_cast<size_t>(j)]);
        if (cls[static_cast<size_t>(i)] <= maxprev &&
            cls[static_cast<size_t>(i)] < max_strata - 1) {
          cls[static_cast<size_t>(i)]++;
          for (int j = i + 1; j < sz; ++j) cls[static_cast<size_t>(j)] = 0;
          break;
        }
        cls[static_cast<size_t>(i)] = 0;
      }
      if (i == 0) break;
    }
  }
  return out;
}

std::vector<TanglePresentation> enumerate_tangles(int n, int max_top, int m) {
  std::vector<TanglePresentation> out;
  for (const TrussBundle& t : enumerate_trusses(n, max_top)) {
    if (!t.is_open()) continue;
    int sz = t.total_size(n);
    if (sz > 20) continue;
    const Poset& top = t.total_poset(n);
    for (uint32_t mask = 0; mask < (1u << sz); ++mask) {
      std::vector<int> q;
      bool upclosed = true;
      for (int e = 0; e < sz && upclosed; ++e) {
        if (!(mask & (1u << e))) continue;
        q.push_back(e);
        for (int y : top.up_set(e, true))
          if (!(mask & (1u << y))) upclosed = false;
      }
      if (!upclosed) continue;
      try {
        TanglePresentation tp = TanglePresentation::make(t, q, m);
        if (is_tangle(tp).verdict == Verdict::Yes) out.push_back(std::move(tp));
      } catch (const Error&) {
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Search and stability

namespace {

bool strictly_simpler_bound(int qn, const TanglePresentation& generic) {
  const Poset& top = generic.bundle().total_poset(generic.bundle().n());
  for (int x : generic.q()) {
    int closure = 0;
    for (int y : generic.q())
      if (top.leq(y, x)) ++closure;
    if (qn <= closure) return false;
  }
  return true;
}

// Grows perturbation bundles over (0 <- 1) level by level: generic fibers,
// generic-internal bordisms and cross bordisms are extended jointly with
// validation pruning, per the non-crossing search strategy.
struct GrowSearch {
  const TanglePresentation& special;
  const SearchBounds& bounds;
  long long* attempts;
  int n;
  Poset base = Poset::build({"0", "1"}, {{"1", "0"}});
  std::vector<LevelData> levels;
  std::vector<std::vector<int>> sproj;  // combined -> special total (or -1)
  std::function<bool(const TanglePresentation&)> generic_ok;
  std::function<bool(const Perturbation&)> accept;
  std::optional<Perturbation> result;
  bool truncated = false;
  long long candidates = 0;

  GrowSearch(const TanglePresentation& s, const SearchBounds& b, long long* att)
      : special(s), bounds(b), attempts(att), n(s.bundle().n()) {
    sproj.resize(static_cast<size_t>(n + 1));
    sproj[0] = {0, -1};
  }

  bool spend() {
    if (*attempts >= bounds.max_attempts) {
      truncated = true;
      return false;
    }
    ++*attempts;
    return true;
  }

  void run() { level_step(1); }

  void level_step(int level) {
    if (result || truncated) return;
    TrussBundle prefix;
    try {
      prefix = TrussBundle::make(base, levels);
    } catch (const Error&) {
      return;
    }
    if (level > n) {
      finalize(prefix);
      return;
    }
    const Poset& parent = prefix.total_poset(level - 1);
    // generic parents and their fiber-word choices
    std::vector<int> gparents;
    LevelData ld;
    ld.fibers.resize(static_cast<size_t>(parent.size()), Fiber::parse("R"));
    for (int p = 0; p < parent.size(); ++p) {
      int sp = sproj[static_cast<size_t>(level - 1)][static_cast<size_t>(p)];
      if (sp >= 0)
        ld.fibers[static_cast<size_t>(p)] =
            special.bundle().level(level).fibers[static_cast<size_t>(sp)];
      else
        gparents.push_back(p);
    }
    choose_words(level, std::move(ld), parent, gparents, 0, bounds.max_total);
  }

  void choose_words(int level, LevelData ld, const Poset& parent,
                    const std::vector<int>& gparents, size_t idx, int budget) {
    if (result || truncated) return;
    if (idx == gparents.size()) {
      // assign bordisms: special-internal fixed, rest enumerated
      std::vector<std::pair<int, int>> open_covers;
      for (auto [a, b] : parent.covers()) {
        int sa = sproj[static_cast<size_t>(level - 1)][static_cast<size_t>(a)];
        int sb = sproj[static_cast<size_t>(level - 1)][static_cast<size_t>(b)];
        if (sa >= 0 && sb >= 0)
          ld.bordisms.insert({{a, b}, special.bundle().arrow_bordism(level, sa, sb)});
        else
          open_covers.emplace_back(a, b);
      }
      choose_bordisms(level, std::move(ld), open_covers, 0);
      return;
    }
    int p = gparents[idx];
    // open alternating words up to the budget, smallest first, with the
    // special fiber words of this level tried early as a shape heuristic
    std::vector<std::string> cands;
    for (int len = 1; len <= budget; len += 2) {
      std::string w;
      char c = 'R';
      for (int i = 0; i < len; ++i) {
        w += c;
        c = (c == 'R') ? 'S' : 'R';
      }
      cands.push_back(w);
    }
    std::vector<std::string> hints;
    for (const auto& f : special.bundle().level(level).fibers)
      if (static_cast<int>(f.word().size()) <= budget) hints.push_back(f.word());
    std::sort(hints.begin(), hints.end(),
              [](const std::string& a, const std::string& b) { return a.size() < b.size(); });
    hints.erase(std::unique(hints.begin(), hints.end()), hints.end());
    std::vector<std::string> ordered = hints;
    for (const auto& w : cands)
      if (std::find(ordered.begin(), ordered.end(), w) == ordered.end()) ordered.push_back(w);
    for (const std::string& w : ordered) {
      if (result || truncated) return;
      LevelData next = ld;
      next.fibers[static_cast<size_t>(p)] = Fiber::parse(w);
      choose_words(level, std::move(next), parent, gparents, idx + 1,
                   budget - static_cast<int>(w.size()));
    }
  }

  void choose_bordisms(int level, LevelData ld,
                       const std::vector<std::pair<int, int>>& covers, size_t idx) {
    if (result || truncated) return;
    if (idx == covers.size()) {
      if (!spend()) return;
      std::vector<LevelData> saved = levels;
      levels.push_back(ld);
      TrussBundle prefix;
      bool ok = true;
      try {
        prefix = TrussBundle::make(base, levels);
      } catch (const Error&) {
        ok = false;
      }
      if (ok) {
        sproj[static_cast<size_t>(level)].assign(
            static_cast<size_t>(prefix.total_size(level)), -1);
        for (int e = 0; e < prefix.total_size(level); ++e) {
          auto [p, pos] = prefix.coords(level, e);
          int sp = sproj[static_cast<size_t>(level - 1)][static_cast<size_t>(p)];
          if (sp >= 0)
            sproj[static_cast<size_t>(level)][static_cast<size_t>(e)] =
                special.bundle().element_of(level, sp, pos);
        }
        level_step(level + 1);
      }
      levels = std::move(saved);
      return;
    }
    auto [a, b] = covers[idx];
    for (const Bordism& cand :
         enumerate_bordisms(ld.fibers[static_cast<size_t>(a)], ld.fibers[static_cast<size_t>(b)])) {
      if (result || truncated) return;
      LevelData next = ld;
      next.bordisms.insert({{a, b}, cand});
      choose_bordisms(level, std::move(next), covers, idx + 1);
    }
  }

  void finalize(const TrussBundle& full) {
    // enumerate up-closed generic-side tangle subsets
    const Poset& top = full.total_poset(n);
    std::vector<int> gtop;
    for (int e = 0; e < top.size(); ++e)
      if (sproj[static_cast<size_t>(n)][static_cast<size_t>(e)] < 0) gtop.push_back(e);
    if (gtop.size() > 20) {
      truncated = true;
      return;
    }
    for (uint32_t mask = 0; mask < (1u << gtop.size()); ++mask) {
      if (result || truncated) return;
      if (!spend()) return;
      std::vector<int> q;
      for (int e = 0; e < top.size(); ++e) {
        int sp = sproj[static_cast<size_t>(n)][static_cast<size_t>(e)];
        if (sp >= 0 && special.in_q(sp)) q.push_back(e);
      }
      int bits = 0;
      for (size_t i = 0; i < gtop.size(); ++i)
        if (mask & (1u << i)) {
          q.push_back(gtop[i]);
          ++bits;
        }
      if (bits > bounds.max_generic_q) continue;
      std::sort(q.begin(), q.end());
      TangleBundle tb;
      try {
        tb = TangleBundle::make(full, q, special.m());
      } catch (const Error&) {
        continue;
      }
      Perturbation p(tb);
      TanglePresentation g;
      try {
        g = p.generic_fiber();
      } catch (const Error&) {
        continue;
      }
      ++candidates;
      if (is_tangle(g).verdict != Verdict::Yes) continue;
      if (generic_ok && !generic_ok(g)) continue;
      if (!verify_perturbation(p)) continue;
      if (accept && !accept(p)) continue;
      result = p;
      return;
    }
  }
};

}  // namespace

SearchResult search_perturbation(const TanglePresentation& tp, const SearchBounds& bounds) {
  check(is_singularity(tp), "NotATangle", "perturbation search requires a singularity");
  SearchResult res;
  long long attempts = 0;
  int qn = complexity(tp);
  GrowSearch gs(tp, bounds, &attempts);
  gs.generic_ok = [&](const TanglePresentation& g) {
    if (static_cast<int>(g.q().size()) > bounds.max_generic_q) return false;
    return strictly_simpler_bound(qn, g);
  };
  gs.run();
  res.candidates_tried = gs.candidates;
  if (gs.result) {
    res.status = SearchStatus::Found;
    res.certificate = gs.result;
  } else {
    res.status = gs.truncated ? SearchStatus::Inconclusive : SearchStatus::None;
  }
  return res;
}

StabilityResult stability(const TanglePresentation& tp, const SearchBounds& bounds,
                          bool inductive) {
  StabilityResult out;
  SearchResult sr = search_perturbation(tp, bounds);
  switch (sr.status) {
    case SearchStatus::Found:
      out.status = StabilityStatus::Unstable;
      out.certificate = sr.certificate;
      break;
    case SearchStatus::None:
      out.status = StabilityStatus::StableWithinBounds;
      break;
    default:
      out.status = StabilityStatus::Inconclusive;
      break;
  }
  if (inductive && out.status != StabilityStatus::Inconclusive) {
    long long attempts = 0;
    GrowSearch gs(tp, bounds, &attempts);
    gs.generic_ok = [&](const TanglePresentation& g) { return is_singularity(g); };
    Perturbation constant = identity_perturbation(tp);
    gs.accept = [&](const Perturbation& p) {
      return !(p.tangle_bundle() == constant.tangle_bundle());
    };
    gs.run();
    out.inductively_stable = !gs.result.has_value();
  }
  return out;
}

}  // namespace trusskit
