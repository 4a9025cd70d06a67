#include "trusskit/strat.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace trusskit {

// ---------------------------------------------------------------------------
// StratTruss

void StratTruss::derive_strata() {
  const Poset& top = bundle_.total_poset(bundle_.n());
  int n = top.size();
  check(labeling_.size() == static_cast<size_t>(n), "ValidationError", "labeling size mismatch");
  for (int e = 0; e < n; ++e)
    check(labeling_[static_cast<size_t>(e)] >= 0 &&
              labeling_[static_cast<size_t>(e)] < label_poset_.size(),
          "UnknownElement", "label index out of range");
  for (auto [a, b] : top.covers())
    check(label_poset_.leq(labeling_[static_cast<size_t>(a)], labeling_[static_cast<size_t>(b)]),
          "NotMonotone", "labeling is not monotone at " + top.name(a) + " -> " + top.name(b));
  // strata: components of (label, base fiber)
  std::vector<int> key(static_cast<size_t>(n));
  for (int e = 0; e < n; ++e)
    key[static_cast<size_t>(e)] =
        labeling_[static_cast<size_t>(e)] * (bundle_.base().size() + 1) +
        bundle_.project(bundle_.n(), 0, e);
  stratum_of_.assign(static_cast<size_t>(n), -1);
  int next = 0;
  for (int s = 0; s < n; ++s) {
    if (stratum_of_[static_cast<size_t>(s)] >= 0) continue;
    std::vector<int> stack{s};
    stratum_of_[static_cast<size_t>(s)] = next;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int y = 0; y < n; ++y)
        if (stratum_of_[static_cast<size_t>(y)] < 0 &&
            key[static_cast<size_t>(y)] == key[static_cast<size_t>(x)] && top.comparable(x, y)) {
          stratum_of_[static_cast<size_t>(y)] = next;
          stack.push_back(y);
        }
    }
    ++next;
  }
  std::vector<uint8_t> rel(static_cast<size_t>(next) * next, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (top.leq(a, b))
        rel[static_cast<size_t>(stratum_of_[static_cast<size_t>(a)]) * next +
            stratum_of_[static_cast<size_t>(b)]] = 1;
  std::vector<std::string> names;
  for (int i = 0; i < next; ++i) names.push_back("s" + std::to_string(i));
  entr_ = Poset::from_relation(std::move(names), std::move(rel));
}

StratTruss StratTruss::make(TrussBundle bundle, Poset label_poset, std::vector<int> labeling) {
  StratTruss st;
  st.bundle_ = std::move(bundle);
  st.label_poset_ = std::move(label_poset);
  st.labeling_ = std::move(labeling);
  st.derive_strata();
  return st;
}

StratTruss StratTruss::trivial(TrussBundle bundle) {
  std::vector<int> lab(static_cast<size_t>(bundle.total_size(bundle.n())), 0);
  return make(std::move(bundle), Poset::point("x"), std::move(lab));
}

StratTruss StratTruss::indicator(TrussBundle bundle, const std::vector<int>& q_elements) {
  const Poset& top = bundle.total_poset(bundle.n());
  std::set<int> q(q_elements.begin(), q_elements.end());
  for (int x : q)
    for (int y : top.up_set(x, true))
      check(q.count(y) > 0, "ValidationError",
            "Q is not up-closed at " + top.name(x) + " -> " + top.name(y));
  Poset L = Poset::build({"0", "1"}, {{"1", "0"}});
  int in_q = L.index("0"), out_q = L.index("1");
  std::vector<int> lab(static_cast<size_t>(top.size()), out_q);
  for (int x : q) lab[static_cast<size_t>(x)] = in_q;
  return make(std::move(bundle), std::move(L), std::move(lab));
}

std::vector<int> StratTruss::stratum_elements(int s) const {
  std::vector<int> out;
  for (int e = 0; e < static_cast<int>(stratum_of_.size()); ++e)
    if (stratum_of_[static_cast<size_t>(e)] == s) out.push_back(e);
  return out;
}

StratTruss StratTruss::dual() const {
  return make(bundle_.dual(), label_poset_.opposite(), labeling_);
}

StratTruss StratTruss::product_with(const StratTruss& t) const {
  TrussBundle prod = bundle_.product_with(t.bundle_);
  int m = bundle_.n(), k = t.bundle_.n();
  std::vector<int> lab(static_cast<size_t>(prod.total_size(m + k)));
  for (int e = 0; e < prod.total_size(m + k); ++e) {
    if (k == 0) {
      lab[static_cast<size_t>(e)] = t.labeling_.empty() ? 0 : t.labeling_[0];
      continue;
    }
    std::vector<int> pos;
    int cur = e;
    for (int i = m + k; i > m; --i) {
      pos.push_back(prod.coords(i, cur).second);
      cur = prod.coords(i, cur).first;
    }
    std::reverse(pos.begin(), pos.end());
    int telt = 0;
    for (int j = 1; j <= k; ++j)
      telt = t.bundle_.element_of(j, j == 1 ? 0 : telt, pos[static_cast<size_t>(j - 1)]);
    lab[static_cast<size_t>(e)] = t.labeling_[static_cast<size_t>(telt)];
  }
  return make(std::move(prod), t.label_poset_, std::move(lab));
}

namespace {

StratTruss transport(const StratTruss& src, const TrussRestriction& r) {
  const std::vector<int>& top_map = r.new_to_old.back();
  std::vector<int> lab;
  lab.reserve(top_map.size());
  for (int old : top_map) lab.push_back(src.label_of(old));
  return StratTruss::make(r.bundle, src.label_poset(), std::move(lab));
}

}  // namespace

StratTruss StratTruss::neighborhood(int x) const {
  return transport(*this, bundle_.neighborhood(x));
}
StratTruss StratTruss::closure_up(int x) const { return transport(*this, bundle_.closure_up(x)); }
StratTruss StratTruss::side(int k, int sign) const {
  return transport(*this, bundle_.side(k, sign));
}
StratTruss StratTruss::restrict_base(const std::vector<int>& base_keep) const {
  return transport(*this, bundle_.restrict_base(base_keep));
}

StratTruss StratTruss::truncate_above(int k) const {
  return make(bundle_.truncate_above(k), label_poset_, labeling_);
}

StratTruss StratTruss::rebase_to_point() const {
  return make(bundle_.rebase_to_point(), label_poset_, labeling_);
}

std::pair<StratTruss, std::vector<int>> StratTruss::compactified_with_retract() const {
  TrussCompactified c = bundle_.compactify();
  const std::vector<int>& top_r = c.retract.back();
  std::vector<int> lab;
  lab.reserve(top_r.size());
  for (int old : top_r) lab.push_back(label_of(old));
  return {make(c.bundle, label_poset_, std::move(lab)), top_r};
}

StratTruss StratTruss::compactified() const { return compactified_with_retract().first; }

StratTruss StratTruss::interior() const { return transport(*this, bundle_.interior()); }

StratTruss StratTruss::tower_over_level1(int pos) const {
  check(bundle_.base_is_point(), "ValidationError", "tower extraction on trusses only");
  check(bundle_.n() >= 1, "LevelOutOfRange", "no level to peel");
  int n = bundle_.n();
  std::vector<std::vector<int>> keep(static_cast<size_t>(n + 1));
  keep[0] = {0};
  keep[1] = {bundle_.element_of(1, 0, pos)};
  for (int i = 2; i <= n; ++i) {
    std::set<int> kept(keep[static_cast<size_t>(i - 1)].begin(),
                       keep[static_cast<size_t>(i - 1)].end());
    for (int e = 0; e < bundle_.total_size(i); ++e)
      if (kept.count(bundle_.coords(i, e).first)) keep[static_cast<size_t>(i)].push_back(e);
  }
  TrussRestriction r = bundle_.restrict_levels(keep);
  StratTruss restricted = transport(*this, r);
  std::vector<LevelData> levels;
  for (int i = 2; i <= n; ++i) levels.push_back(restricted.bundle().level(i));
  TrussBundle dropped = TrussBundle::make(Poset::point(), std::move(levels));
  return make(std::move(dropped), restricted.label_poset_, restricted.labeling_);
}

// ---------------------------------------------------------------------------
// canonical form / equality

std::string canonical_form(const StratTruss& st) {
  std::ostringstream os;
  const TrussBundle& b = st.bundle();
  os << "base[";
  for (int i = 0; i < b.base().size(); ++i) os << b.base().name(i) << ";";
  os << "|";
  for (auto [x, y] : b.base().covers()) os << x << ">" << y << ";";
  os << "]";
  for (int i = 1; i <= b.n(); ++i) {
    os << "L" << i << "{";
    for (const auto& f : b.level(i).fibers) os << f.word() << ";";
    os << "|";
    for (const auto& [cov, bord] : b.level(i).bordisms) {
      os << cov.first << ">" << cov.second << ":";
      for (auto [t, s] : bord.pairs()) os << t << "," << s << " ";
      os << ";";
    }
    os << "}";
  }
  os << "strata[";
  for (size_t e = 0; e < st.labeling().size(); ++e)
    os << st.stratum_of(static_cast<int>(e)) << ";";
  os << "|";
  for (auto [x, y] : st.entr().covers()) os << x << ">" << y << ";";
  os << "]";
  return os.str();
}

bool strat_equal(const StratTruss& a, const StratTruss& b) {
  return canonical_form(a) == canonical_form(b);
}

// ---------------------------------------------------------------------------
// Coarsenings

bool Coarsening::is_identity() const {
  if (!(source == target)) return false;
  for (const auto& m : level_map)
    for (size_t i = 0; i < m.size(); ++i)
      if (m[i] != static_cast<int>(i)) return false;
  return true;
}

Coarsening Coarsening::identity(const StratTruss& st) {
  Coarsening c;
  c.source = st;
  c.target = st;
  c.level_map.resize(static_cast<size_t>(st.bundle().n() + 1));
  for (int i = 0; i <= st.bundle().n(); ++i) {
    c.level_map[static_cast<size_t>(i)].resize(static_cast<size_t>(st.bundle().total_size(i)));
    for (int e = 0; e < st.bundle().total_size(i); ++e)
      c.level_map[static_cast<size_t>(i)][static_cast<size_t>(e)] = e;
  }
  return c;
}

Coarsening Coarsening::then(const Coarsening& next) const {
  check(strat_equal(target, next.source), "ValidationError", "coarsening composition mismatch");
  Coarsening c;
  c.source = source;
  c.target = next.target;
  c.level_map.resize(level_map.size());
  for (size_t i = 0; i < level_map.size(); ++i) {
    c.level_map[i].reserve(level_map[i].size());
    for (int v : level_map[i]) c.level_map[i].push_back(next.level_map[i][static_cast<size_t>(v)]);
  }
  return c;
}

bool is_coarsening(const Coarsening& c, std::vector<std::string>* diagnostics) {
  std::vector<std::string> local;
  auto bad = [&](const std::string& why) { local.push_back(why); };
  const TrussBundle& sb = c.source.bundle();
  const TrussBundle& tb = c.target.bundle();
  if (sb.n() != tb.n()) bad("level count differs");
  if (!(sb.base() == tb.base())) bad("bases differ");
  int n = sb.n();
  if (c.level_map.size() != static_cast<size_t>(n + 1)) bad("level map count");
  if (!local.empty()) {
    if (diagnostics) *diagnostics = local;
    return false;
  }
  for (int e = 0; e < sb.base().size(); ++e)
    if (c.level_map[0][static_cast<size_t>(e)] != e) bad("base is not fixed");
  for (int i = 1; i <= n && local.empty(); ++i) {
    const auto& fm = c.level_map[static_cast<size_t>(i)];
    const auto& pm = c.level_map[static_cast<size_t>(i - 1)];
    if (fm.size() != static_cast<size_t>(sb.total_size(i))) {
      bad("map size at level " + std::to_string(i));
      continue;
    }
    for (int e = 0; e < sb.total_size(i); ++e) {
      int img = fm[static_cast<size_t>(e)];
      if (img < 0 || img >= tb.total_size(i)) {
        bad("image out of range");
        continue;
      }
      if (tb.coords(i, img).first != pm[static_cast<size_t>(sb.coords(i, e).first)])
        bad("does not commute with projections at level " + std::to_string(i));
    }
    if (!local.empty()) break;
    for (int p = 0; p < sb.total_size(i - 1); ++p) {
      const Fiber& f = sb.level(i).fibers[static_cast<size_t>(p)];
      int tp = pm[static_cast<size_t>(p)];
      const Fiber& g = tb.level(i).fibers[static_cast<size_t>(tp)];
      int prev = -1;
      std::set<int> hit;
      for (int pos = 0; pos < f.size(); ++pos) {
        int img = fm[static_cast<size_t>(sb.element_of(i, p, pos))];
        int ipos = tb.coords(i, img).second;
        if (ipos < prev) bad("fiber map not frame-monotone");
        prev = ipos;
        hit.insert(ipos);
        if (!f.singular(pos) && g.singular(ipos)) bad("fiber map not cocellular");
      }
      if (static_cast<int>(hit.size()) != g.size()) bad("fiber map not surjective");
      int i0 = tb.coords(i, fm[static_cast<size_t>(sb.element_of(i, p, 0))]).second;
      int i1 = tb.coords(i, fm[static_cast<size_t>(sb.element_of(i, p, f.size() - 1))]).second;
      if (i0 != 0 || i1 != g.size() - 1) bad("fiber endpoints not preserved");
      else if (f.dim(0) != g.dim(i0) || f.dim(f.size() - 1) != g.dim(i1))
        bad("fiber endpoint dims not preserved");
    }
    const Poset& sp = sb.total_poset(i);
    const Poset& tp2 = tb.total_poset(i);
    for (int e = 0; e < sp.size(); ++e)
      for (int f2 = 0; f2 < sp.size(); ++f2)
        if (sp.leq(e, f2) && !tp2.leq(fm[static_cast<size_t>(e)], fm[static_cast<size_t>(f2)]))
          bad("not monotone on total poset at level " + std::to_string(i));
  }
  if (!local.empty()) {
    if (diagnostics) *diagnostics = local;
    return false;
  }
  const auto& fm = c.level_map[static_cast<size_t>(n)];
  int ns = c.source.num_strata();
  int nt = c.target.num_strata();
  std::vector<int> smap(static_cast<size_t>(ns), -1);
  for (int e = 0; e < sb.total_size(n); ++e) {
    int a = c.source.stratum_of(e);
    int b = c.target.stratum_of(fm[static_cast<size_t>(e)]);
    if (smap[static_cast<size_t>(a)] < 0)
      smap[static_cast<size_t>(a)] = b;
    else if (smap[static_cast<size_t>(a)] != b)
      bad("stratum map not well-defined");
  }
  if (ns != nt) bad("stratum counts differ");
  if (local.empty()) {
    std::set<int> image(smap.begin(), smap.end());
    if (static_cast<int>(image.size()) != ns || image.count(-1)) bad("stratum map not bijective");
  }
  if (local.empty()) {
    for (int a = 0; a < ns; ++a)
      for (int b2 = 0; b2 < ns; ++b2)
        if (c.source.entr().leq(a, b2) !=
            c.target.entr().leq(smap[static_cast<size_t>(a)], smap[static_cast<size_t>(b2)]))
          bad("Entr map is not an order isomorphism");
  }
  if (diagnostics) *diagnostics = local;
  return local.empty();
}

// ---------------------------------------------------------------------------
// Quotients from deletion patterns

namespace {

// del[i-1][parent] = sorted deleted positions (interior singulars) at level i.
struct DeletionPattern {
  std::vector<std::vector<std::vector<int>>> del;
};

struct FiberQuotient {
  std::string word;
  std::vector<int> posmap;
};

std::optional<FiberQuotient> quotient_fiber(const Fiber& f, const std::vector<int>& deleted) {
  std::set<int> del(deleted.begin(), deleted.end());
  for (int d : del)
    if (d <= 0 || d >= f.size() - 1 || !f.singular(d)) return std::nullopt;
  FiberQuotient q;
  q.posmap.resize(static_cast<size_t>(f.size()));
  int cur = -1;
  for (int pos = 0; pos < f.size(); ++pos) {
    bool merge_with_prev = pos > 0 && (del.count(pos) > 0 || del.count(pos - 1) > 0);
    if (!merge_with_prev) {
      ++cur;
      q.word += f.word()[static_cast<size_t>(pos)];
    }
    q.posmap[static_cast<size_t>(pos)] = cur;
  }
  // runs containing a deleted singular are regular
  for (int pos = 0; pos < f.size(); ++pos)
    if (del.count(pos)) q.word[static_cast<size_t>(q.posmap[static_cast<size_t>(pos)])] = 'R';
  return q;
}

std::optional<Coarsening> build_quotient(const StratTruss& src, const DeletionPattern& pat) {
  const TrussBundle& sb = src.bundle();
  int n = sb.n();
  std::vector<std::vector<int>> level_map(static_cast<size_t>(n + 1));
  level_map[0].resize(static_cast<size_t>(sb.base().size()));
  for (int e = 0; e < sb.base().size(); ++e) level_map[0][static_cast<size_t>(e)] = e;

  std::vector<LevelData> levels;
  TrussBundle prefix = TrussBundle::make(sb.base(), {});
  for (int i = 1; i <= n; ++i) {
    const Poset& tparent = prefix.total_poset(i - 1);
    int ntp = tparent.size();
    std::vector<FiberQuotient> fq(static_cast<size_t>(sb.total_size(i - 1)));
    for (int p = 0; p < sb.total_size(i - 1); ++p) {
      auto q = quotient_fiber(sb.level(i).fibers[static_cast<size_t>(p)],
                              pat.del[static_cast<size_t>(i - 1)][static_cast<size_t>(p)]);
      if (!q) return std::nullopt;
      fq[static_cast<size_t>(p)] = std::move(*q);
    }
    LevelData ld;
    ld.fibers.assign(static_cast<size_t>(ntp), Fiber::parse("R"));
    std::vector<int> rep(static_cast<size_t>(ntp), -1);
    for (int p = 0; p < sb.total_size(i - 1); ++p) {
      int cls = level_map[static_cast<size_t>(i - 1)][static_cast<size_t>(p)];
      if (rep[static_cast<size_t>(cls)] < 0) {
        rep[static_cast<size_t>(cls)] = p;
        ld.fibers[static_cast<size_t>(cls)] = Fiber::parse(fq[static_cast<size_t>(p)].word);
      } else if (fq[static_cast<size_t>(p)].word !=
                 fq[static_cast<size_t>(rep[static_cast<size_t>(cls)])].word) {
        return std::nullopt;  // merged fibers must quotient to equal words
      }
    }
    for (auto [a, b] : tparent.covers()) {
      std::vector<std::pair<int, int>> gen;
      bool found = false;
      for (int p = 0; p < sb.total_size(i - 1); ++p) {
        if (level_map[static_cast<size_t>(i - 1)][static_cast<size_t>(p)] != a) continue;
        for (int q = 0; q < sb.total_size(i - 1); ++q) {
          if (level_map[static_cast<size_t>(i - 1)][static_cast<size_t>(q)] != b) continue;
          if (!sb.total_poset(i - 1).leq(p, q)) continue;
          found = true;
          for (auto [t, s] : sb.arrow_bordism(i, p, q).pairs())
            gen.emplace_back(fq[static_cast<size_t>(p)].posmap[static_cast<size_t>(t)],
                             fq[static_cast<size_t>(q)].posmap[static_cast<size_t>(s)]);
        }
      }
      if (!found) return std::nullopt;
      std::sort(gen.begin(), gen.end());
      gen.erase(std::unique(gen.begin(), gen.end()), gen.end());
      auto bord = Bordism::try_make(ld.fibers[static_cast<size_t>(a)],
                                    ld.fibers[static_cast<size_t>(b)], gen);
      if (!bord) return std::nullopt;
      ld.bordisms.insert({{a, b}, *bord});
    }
    levels.push_back(std::move(ld));
    try {
      prefix = TrussBundle::make(sb.base(), levels);
    } catch (const Error&) {
      return std::nullopt;
    }
    level_map[static_cast<size_t>(i)].resize(static_cast<size_t>(sb.total_size(i)));
    for (int e = 0; e < sb.total_size(i); ++e) {
      auto [p, pos] = sb.coords(i, e);
      int cls = level_map[static_cast<size_t>(i - 1)][static_cast<size_t>(p)];
      level_map[static_cast<size_t>(i)][static_cast<size_t>(e)] =
          prefix.element_of(i, cls, fq[static_cast<size_t>(p)].posmap[static_cast<size_t>(pos)]);
    }
  }
  std::vector<int> tlab(static_cast<size_t>(prefix.total_size(n)), -1);
  for (int e = 0; e < sb.total_size(n); ++e) {
    int img = level_map[static_cast<size_t>(n)][static_cast<size_t>(e)];
    int l = src.label_of(e);
    if (tlab[static_cast<size_t>(img)] < 0)
      tlab[static_cast<size_t>(img)] = l;
    else if (tlab[static_cast<size_t>(img)] != l)
      return std::nullopt;
  }
  StratTruss target;
  try {
    target = StratTruss::make(prefix, src.label_poset(), tlab);
  } catch (const Error&) {
    return std::nullopt;
  }
  Coarsening c{src, std::move(target), std::move(level_map)};
  if (!is_coarsening(c)) return std::nullopt;
  return c;
}

DeletionPattern empty_pattern(const TrussBundle& b) {
  DeletionPattern pat;
  pat.del.resize(static_cast<size_t>(b.n()));
  for (int i = 1; i <= b.n(); ++i)
    pat.del[static_cast<size_t>(i - 1)].resize(static_cast<size_t>(b.total_size(i - 1)));
  return pat;
}

// Candidate collapse patterns: for each interior singular, the singleton
// pattern and its backward orbit under singular functions along base arrows.
std::vector<DeletionPattern> collapse_candidates(const StratTruss& st, int only_level) {
  const TrussBundle& b = st.bundle();
  std::vector<DeletionPattern> out;
  std::set<std::string> seen;
  auto add = [&](const DeletionPattern& pat) {
    std::ostringstream os;
    for (const auto& lvl : pat.del) {
      for (const auto& f : lvl) {
        for (int d : f) os << d << ",";
        os << ";";
      }
      os << "|";
    }
    if (seen.insert(os.str()).second) out.push_back(pat);
  };
  int lo = only_level > 0 ? only_level : 1;
  int hi = only_level > 0 ? only_level : b.n();
  for (int i = lo; i <= hi; ++i) {
    for (int e = 0; e < b.total_size(i); ++e) {
      auto [p, pos] = b.coords(i, e);
      const Fiber& f = b.level(i).fibers[static_cast<size_t>(p)];
      if (!f.singular(pos) || pos == 0 || pos == f.size() - 1) continue;
      DeletionPattern single = empty_pattern(b);
      single.del[static_cast<size_t>(i - 1)][static_cast<size_t>(p)].push_back(pos);
      add(single);
      std::set<int> orbit{e};
      bool grew = true;
      while (grew) {
        grew = false;
        for (int x : std::vector<int>(orbit.begin(), orbit.end())) {
          auto [xp, xpos] = b.coords(i, x);
          for (int q = 0; q < b.total_size(i - 1); ++q) {
            if (q == xp || !b.total_poset(i - 1).leq(q, xp)) continue;
            const Bordism& r = b.arrow_bordism(i, q, xp);
            const Fiber& qf = b.level(i).fibers[static_cast<size_t>(q)];
            for (int t : qf.singulars())
              if (r.has(t, xpos) && !orbit.count(b.element_of(i, q, t))) {
                orbit.insert(b.element_of(i, q, t));
                grew = true;
              }
          }
        }
      }
      if (orbit.size() > 1) {
        DeletionPattern po = empty_pattern(b);
        bool ok = true;
        for (int x : orbit) {
          auto [xp, xpos] = b.coords(i, x);
          const Fiber& xf = b.level(i).fibers[static_cast<size_t>(xp)];
          if (xpos == 0 || xpos == xf.size() - 1) ok = false;
          po.del[static_cast<size_t>(i - 1)][static_cast<size_t>(xp)].push_back(xpos);
        }
        for (auto& fl : po.del[static_cast<size_t>(i - 1)]) std::sort(fl.begin(), fl.end());
        if (ok) add(po);
      }
    }
  }
  return out;
}

std::optional<Coarsening> first_collapse(const StratTruss& st, int only_level) {
  for (const auto& pat : collapse_candidates(st, only_level)) {
    auto c = build_quotient(st, pat);
    if (c && !c->is_identity()) return c;
  }
  return std::nullopt;
}

}  // namespace

NormalizeResult normalize(const StratTruss& st) {
  Coarsening witness = Coarsening::identity(st);
  StratTruss cur = st;
  while (true) {
    auto c = first_collapse(cur, 0);
    if (!c) break;
    witness = witness.then(*c);
    cur = c->target;
  }
  return {cur, witness};
}

NormalizeResult normalize_level_descending(const StratTruss& st) {
  Coarsening witness = Coarsening::identity(st);
  StratTruss cur = st;
  for (int i = st.bundle().n(); i >= 1; --i) {
    while (true) {
      auto c = first_collapse(cur, i);
      if (!c) break;
      witness = witness.then(*c);
      cur = c->target;
    }
  }
  // descending passes may re-enable earlier levels
  while (true) {
    auto c = first_collapse(cur, 0);
    if (!c) break;
    witness = witness.then(*c);
    cur = c->target;
  }
  return {cur, witness};
}

bool is_normalized(const StratTruss& st) { return !first_collapse(st, 0).has_value(); }

std::vector<Coarsening> enumerate_coarsenings(const StratTruss& st, long long max_patterns) {
  const TrussBundle& b = st.bundle();
  struct Slot {
    int level, parent;
    std::vector<int> interior;
  };
  std::vector<Slot> slots;
  long long total = 1;
  for (int i = 1; i <= b.n(); ++i)
    for (int p = 0; p < b.total_size(i - 1); ++p) {
      Slot s;
      s.level = i;
      s.parent = p;
      const Fiber& f = b.level(i).fibers[static_cast<size_t>(p)];
      for (int pos = 1; pos + 1 < f.size(); ++pos)
        if (f.singular(pos)) s.interior.push_back(pos);
      total *= (1LL << s.interior.size());
      check(total <= max_patterns, "SizeBoundExceeded", "coarsening pattern space too large");
      slots.push_back(std::move(s));
    }
  std::vector<Coarsening> out;
  std::vector<size_t> choice(slots.size(), 0);
  while (true) {
    DeletionPattern pat = empty_pattern(b);
    for (size_t s = 0; s < slots.size(); ++s)
      for (size_t bit = 0; bit < slots[s].interior.size(); ++bit)
        if (choice[s] & (1ull << bit))
          pat.del[static_cast<size_t>(slots[s].level - 1)][static_cast<size_t>(slots[s].parent)]
              .push_back(slots[s].interior[bit]);
    auto c = build_quotient(st, pat);
    if (c) out.push_back(*c);
    size_t s = 0;
    for (; s < slots.size(); ++s) {
      choice[s]++;
      if (choice[s] < (1ull << slots[s].interior.size())) break;
      choice[s] = 0;
    }
    if (s == slots.size()) break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Leading factors

Factorization factor_leading(const StratTruss& st, FactorMode mode) {
  Factorization out;
  out.remainder = st;
  while (out.remainder.bundle().n() > 0) {
    const StratTruss& cur = out.remainder;
    check(cur.bundle().base_is_point(), "ValidationError", "factorization on trusses only");
    const Fiber& f1 = cur.bundle().level(1).fibers[0];
    int reg_pos = -1;
    if (mode == FactorMode::Cube) {
      if (f1.word() == "R") reg_pos = 0;
    } else if (mode == FactorMode::Corner) {
      if (f1.word() == "R" || f1.word() == "RS") reg_pos = 0;
      if (f1.word() == "SR") reg_pos = 1;
    } else {  // Point
      if (f1.word() == "S") reg_pos = 0;
    }
    if (reg_pos < 0) break;
    StratTruss tower = cur.tower_over_level1(reg_pos);
    LevelData ld;
    ld.fibers.push_back(f1);
    StratTruss factor = StratTruss::trivial(TrussBundle::truss({ld}));
    StratTruss rebuilt = factor.product_with(tower);
    if (!strat_equal(rebuilt, cur)) break;
    out.sigma.push_back(f1.word());
    out.remainder = tower;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Gluing

namespace {

struct LabelUnion {
  std::map<std::string, std::string> parent;
  std::string find(const std::string& x) {
    auto it = parent.find(x);
    if (it == parent.end()) {
      parent[x] = x;
      return x;
    }
    if (it->second == x) return x;
    std::string r = find(it->second);
    parent[x] = r;
    return r;
  }
  void merge(const std::string& a, const std::string& b) {
    std::string ra = find(a), rb = find(b);
    if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
  }
};

}  // namespace

StratTruss glue(const StratTruss& a, const StratTruss& b, int k) {
  const TrussBundle& ab = a.bundle();
  const TrussBundle& bb = b.bundle();
  check(ab.n() == bb.n(), "SidesMismatch", "level counts differ");
  int n = ab.n();
  check(k >= 1 && k <= n, "LevelOutOfRange", "glue direction out of range");
  int lvl = n - k + 1;
  check(ab.truncate_below(lvl - 1) == bb.truncate_below(lvl - 1), "SidesMismatch",
        "structures below the glue level differ");
  StratTruss sa = a.side(k, +1);
  StratTruss sb = b.side(k, -1);
  check(sa.bundle() == sb.bundle(), "SidesMismatch", "sides are not equal");
  check(strat_equal(sa, sb), "SidesMismatch", "side stratifications differ");

  TrussRestriction ra = ab.side(k, +1);
  TrussRestriction rb = bb.side(k, -1);
  LabelUnion lu;
  auto aname = [&](int l) { return "A:" + a.label_poset().name(l); };
  auto bname = [&](int l) { return "B:" + b.label_poset().name(l); };
  for (size_t j = 0; j < ra.new_to_old.back().size(); ++j)
    lu.merge(aname(a.label_of(ra.new_to_old.back()[j])),
             bname(b.label_of(rb.new_to_old.back()[j])));

  std::vector<LevelData> levels;
  for (int i = 1; i < lvl; ++i) levels.push_back(ab.level(i));
  std::vector<std::vector<int>> amap(static_cast<size_t>(n + 1)), bmap(static_cast<size_t>(n + 1));
  for (int i = 0; i < lvl; ++i) {
    amap[static_cast<size_t>(i)].resize(static_cast<size_t>(ab.total_size(i)));
    bmap[static_cast<size_t>(i)].resize(static_cast<size_t>(ab.total_size(i)));
    for (int e = 0; e < ab.total_size(i); ++e) {
      amap[static_cast<size_t>(i)][static_cast<size_t>(e)] = e;
      bmap[static_cast<size_t>(i)][static_cast<size_t>(e)] = e;
    }
  }
  {
    LevelData ld;
    std::vector<int> alen;
    for (int p = 0; p < ab.total_size(lvl - 1); ++p) {
      const Fiber& fa = ab.level(lvl).fibers[static_cast<size_t>(p)];
      const Fiber& fb = bb.level(lvl).fibers[static_cast<size_t>(p)];
      alen.push_back(fa.size());
      ld.fibers.push_back(Fiber::parse(fa.word() + fb.word().substr(1)));
    }
    for (auto [p, q] : ab.total_poset(lvl - 1).covers()) {
      std::vector<std::pair<int, int>> gen;
      for (auto [t, s] : ab.level(lvl).bordisms.at({p, q}).pairs()) gen.emplace_back(t, s);
      for (auto [t, s] : bb.level(lvl).bordisms.at({p, q}).pairs())
        gen.emplace_back(t + alen[static_cast<size_t>(p)] - 1,
                         s + alen[static_cast<size_t>(q)] - 1);
      ld.bordisms.insert({{p, q}, Bordism::make(ld.fibers[static_cast<size_t>(p)],
                                                ld.fibers[static_cast<size_t>(q)], gen)});
    }
    levels.push_back(std::move(ld));
    TrussBundle prefix = TrussBundle::make(ab.base(), levels);
    amap[static_cast<size_t>(lvl)].assign(static_cast<size_t>(prefix.total_size(lvl)), -1);
    bmap[static_cast<size_t>(lvl)].assign(static_cast<size_t>(prefix.total_size(lvl)), -1);
    for (int e = 0; e < prefix.total_size(lvl); ++e) {
      auto [p, pos] = prefix.coords(lvl, e);
      if (pos <= alen[static_cast<size_t>(p)] - 1)
        amap[static_cast<size_t>(lvl)][static_cast<size_t>(e)] = ab.element_of(lvl, p, pos);
      if (pos >= alen[static_cast<size_t>(p)] - 1)
        bmap[static_cast<size_t>(lvl)][static_cast<size_t>(e)] =
            bb.element_of(lvl, p, pos - alen[static_cast<size_t>(p)] + 1);
    }
  }
  for (int i = lvl + 1; i <= n; ++i) {
    TrussBundle prefix = TrussBundle::make(ab.base(), levels);
    const Poset& parent = prefix.total_poset(i - 1);
    LevelData ld;
    for (int p = 0; p < parent.size(); ++p) {
      int pa = amap[static_cast<size_t>(i - 1)][static_cast<size_t>(p)];
      int pb = bmap[static_cast<size_t>(i - 1)][static_cast<size_t>(p)];
      if (pa >= 0)
        ld.fibers.push_back(ab.level(i).fibers[static_cast<size_t>(pa)]);
      else
        ld.fibers.push_back(bb.level(i).fibers[static_cast<size_t>(pb)]);
    }
    for (auto [p, q] : parent.covers()) {
      int pa = amap[static_cast<size_t>(i - 1)][static_cast<size_t>(p)];
      int qa = amap[static_cast<size_t>(i - 1)][static_cast<size_t>(q)];
      int pb = bmap[static_cast<size_t>(i - 1)][static_cast<size_t>(p)];
      int qb = bmap[static_cast<size_t>(i - 1)][static_cast<size_t>(q)];
      if (pa >= 0 && qa >= 0 && ab.total_poset(i - 1).leq(pa, qa))
        ld.bordisms.insert({{p, q}, ab.arrow_bordism(i, pa, qa)});
      else if (pb >= 0 && qb >= 0 && bb.total_poset(i - 1).leq(pb, qb))
        ld.bordisms.insert({{p, q}, bb.arrow_bordism(i, pb, qb)});
      else
        fail("SidesMismatch", "glued cover has no source bordism");
    }
    levels.push_back(std::move(ld));
    TrussBundle next = TrussBundle::make(ab.base(), levels);
    amap[static_cast<size_t>(i)].assign(static_cast<size_t>(next.total_size(i)), -1);
    bmap[static_cast<size_t>(i)].assign(static_cast<size_t>(next.total_size(i)), -1);
    for (int e = 0; e < next.total_size(i); ++e) {
      auto [p, pos] = next.coords(i, e);
      int pa = amap[static_cast<size_t>(i - 1)][static_cast<size_t>(p)];
      int pb = bmap[static_cast<size_t>(i - 1)][static_cast<size_t>(p)];
      if (pa >= 0 && pos < ab.level(i).fibers[static_cast<size_t>(pa)].size())
        amap[static_cast<size_t>(i)][static_cast<size_t>(e)] = ab.element_of(i, pa, pos);
      if (pb >= 0 && pos < bb.level(i).fibers[static_cast<size_t>(pb)].size())
        bmap[static_cast<size_t>(i)][static_cast<size_t>(e)] = bb.element_of(i, pb, pos);
    }
  }
  TrussBundle glued = TrussBundle::make(ab.base(), levels);
  std::set<std::string> tagged;
  for (int l = 0; l < a.label_poset().size(); ++l) tagged.insert(aname(l));
  for (int l = 0; l < b.label_poset().size(); ++l) tagged.insert(bname(l));
  std::map<std::string, int> cls_index;
  std::vector<std::string> cls_names;
  for (const auto& t : tagged) {
    std::string r = lu.find(t);
    if (!cls_index.count(r)) {
      cls_index[r] = static_cast<int>(cls_names.size());
      cls_names.push_back(r);
    }
  }
  int m = static_cast<int>(cls_names.size());
  std::vector<uint8_t> rel(static_cast<size_t>(m) * m, 0);
  auto relate = [&](const Poset& lp, auto tag) {
    for (int x = 0; x < lp.size(); ++x)
      for (int y = 0; y < lp.size(); ++y)
        if (lp.leq(x, y))
          rel[static_cast<size_t>(cls_index[lu.find(tag(x))]) * m + cls_index[lu.find(tag(y))]] =
              1;
  };
  relate(a.label_poset(), aname);
  relate(b.label_poset(), bname);
  Poset lp = Poset::from_relation(cls_names, std::move(rel));
  std::vector<int> lab(static_cast<size_t>(glued.total_size(n)));
  for (int e = 0; e < glued.total_size(n); ++e) {
    int ea = amap[static_cast<size_t>(n)][static_cast<size_t>(e)];
    int eb = bmap[static_cast<size_t>(n)][static_cast<size_t>(e)];
    std::string t = ea >= 0 ? lu.find(aname(a.label_of(ea))) : lu.find(bname(b.label_of(eb)));
    lab[static_cast<size_t>(e)] = cls_index[t];
  }
  return StratTruss::make(std::move(glued), std::move(lp), std::move(lab));
}

StratTruss subdivide_level1(const StratTruss& st, const std::vector<int>& extra) {
  const TrussBundle& b = st.bundle();
  check(b.base_is_point() && b.n() >= 1, "ValidationError", "subdivision on trusses only");
  const Fiber& f1 = b.level(1).fibers[0];
  check(extra.size() == static_cast<size_t>(f1.size()), "ValidationError", "extra size mismatch");
  std::string word;
  std::vector<int> origin1;
  for (int pos = 0; pos < f1.size(); ++pos) {
    word += f1.word()[static_cast<size_t>(pos)];
    origin1.push_back(pos);
    if (extra[static_cast<size_t>(pos)] > 0)
      check(!f1.singular(pos), "ValidationError", "can only subdivide after regular positions");
    for (int c = 0; c < extra[static_cast<size_t>(pos)]; ++c) {
      word += "SR";
      origin1.push_back(pos);
      origin1.push_back(pos);
    }
  }
  std::vector<LevelData> levels;
  LevelData l1;
  l1.fibers.push_back(Fiber::parse(word));
  levels.push_back(l1);
  std::vector<std::vector<int>> orig(static_cast<size_t>(b.n() + 1));
  orig[0] = {0};
  {
    TrussBundle prefix = TrussBundle::make(Poset::point(), levels);
    orig[1].resize(static_cast<size_t>(prefix.total_size(1)));
    for (int e = 0; e < prefix.total_size(1); ++e)
      orig[1][static_cast<size_t>(e)] =
          b.element_of(1, 0, origin1[static_cast<size_t>(prefix.coords(1, e).second)]);
  }
  for (int i = 2; i <= b.n(); ++i) {
    TrussBundle prefix = TrussBundle::make(Poset::point(), levels);
    const Poset& parent = prefix.total_poset(i - 1);
    LevelData ld;
    for (int p = 0; p < parent.size(); ++p)
      ld.fibers.push_back(
          b.level(i).fibers[static_cast<size_t>(orig[static_cast<size_t>(i - 1)][static_cast<size_t>(p)])]);
    for (auto [p, q] : parent.covers()) {
      int op = orig[static_cast<size_t>(i - 1)][static_cast<size_t>(p)];
      int oq = orig[static_cast<size_t>(i - 1)][static_cast<size_t>(q)];
      if (op == oq)
        ld.bordisms.insert({{p, q}, Bordism::identity(ld.fibers[static_cast<size_t>(p)])});
      else {
        check(b.total_poset(i - 1).leq(op, oq), "ValidationError", "subdivision order mismatch");
        ld.bordisms.insert({{p, q}, b.arrow_bordism(i, op, oq)});
      }
    }
    levels.push_back(std::move(ld));
    TrussBundle next = TrussBundle::make(Poset::point(), levels);
    orig[static_cast<size_t>(i)].resize(static_cast<size_t>(next.total_size(i)));
    for (int e = 0; e < next.total_size(i); ++e) {
      auto [p, pos] = next.coords(i, e);
      orig[static_cast<size_t>(i)][static_cast<size_t>(e)] =
          b.element_of(i, orig[static_cast<size_t>(i - 1)][static_cast<size_t>(p)], pos);
    }
  }
  TrussBundle nb = TrussBundle::make(Poset::point(), levels);
  std::vector<int> lab(static_cast<size_t>(nb.total_size(b.n())));
  for (int e = 0; e < nb.total_size(b.n()); ++e)
    lab[static_cast<size_t>(e)] = st.label_of(orig[static_cast<size_t>(b.n())][static_cast<size_t>(e)]);
  return StratTruss::make(std::move(nb), st.label_poset(), std::move(lab));
}

std::pair<StratTruss, StratTruss> match_sides(const StratTruss& a, const StratTruss& b, int k) {
  try {
    glue(a, b, k);
    return {a, b};
  } catch (const Error&) {
  }
  // Restricted strategy: refine one truss's level-1 fiber and retry once.
  const Fiber& fa = a.bundle().level(1).fibers[0];
  const Fiber& fb = b.bundle().level(1).fibers[0];
  auto try_refine = [&](const StratTruss& coarse, const StratTruss& fine, bool coarse_is_a)
      -> std::optional<std::pair<StratTruss, StratTruss>> {
    const Fiber& fc = coarse.bundle().level(1).fibers[0];
    const Fiber& ff = fine.bundle().level(1).fibers[0];
    if (ff.size() <= fc.size()) return std::nullopt;
    if ((ff.size() - fc.size()) % 2 != 0) return std::nullopt;
    int walls = (ff.size() - fc.size()) / 2;
    std::vector<int> regs = fc.regulars();
    if (regs.empty()) return std::nullopt;
    std::vector<int> comp(regs.size(), 0);
    while (true) {
      int sum = 0;
      for (int c : comp) sum += c;
      if (sum == walls) {
        std::vector<int> extra(static_cast<size_t>(fc.size()), 0);
        for (size_t i = 0; i < regs.size(); ++i)
          extra[static_cast<size_t>(regs[i])] = comp[i];
        try {
          StratTruss refined = subdivide_level1(coarse, extra);
          if (coarse_is_a) {
            glue(refined, fine, k);
            return std::make_pair(refined, fine);
          }
          glue(fine, refined, k);
          return std::make_pair(fine, refined);
        } catch (const Error&) {
        }
      }
      size_t i = 0;
      for (; i < comp.size(); ++i) {
        comp[i]++;
        if (comp[i] <= walls) break;
        comp[i] = 0;
      }
      if (i == comp.size()) break;
    }
    return std::nullopt;
  };
  if (fa.size() < fb.size()) {
    auto r = try_refine(a, b, true);
    if (r) return *r;
  } else if (fb.size() < fa.size()) {
    auto r = try_refine(b, a, false);
    if (r) return *r;
  }
  fail("NoCommonRefinement", "sides cannot be matched by level-1 refinement");
}

}  // namespace trusskit
