#include "trusskit/truss.hpp"

#include <algorithm>
#include <set>

namespace trusskit {

namespace {

std::string child_key(const std::string& parent_key, int pos) {
  if (parent_key.empty()) return std::to_string(pos);
  return parent_key + "-" + std::to_string(pos);
}

}  // namespace

TrussBundle TrussBundle::make(Poset base, std::vector<LevelData> levels) {
  TrussBundle b;
  b.base_ = std::move(base);
  b.levels_ = std::move(levels);
  b.build_and_validate();
  return b;
}

void TrussBundle::build_and_validate() {
  check(base_.size() > 0, "ValidationError", "base poset is empty");
  totals_.clear();
  arrows_.clear();
  // Level 0: the base; pathkey of the unique point-base element is "".
  TotalInfo t0;
  if (base_is_point()) {
    t0.poset = Poset::from_relation({""}, {1});
  } else {
    t0.poset = base_;
  }
  t0.coords.assign(static_cast<size_t>(base_.size()), {-1, -1});
  t0.first_child.clear();
  totals_.push_back(std::move(t0));

  for (int i = 1; i <= n(); ++i) {
    const TotalInfo& parent = totals_[static_cast<size_t>(i - 1)];
    const LevelData& ld = levels_[static_cast<size_t>(i - 1)];
    check(ld.fibers.size() == static_cast<size_t>(parent.poset.size()), "ValidationError",
          "level " + std::to_string(i) + ": expected one fiber per parent element");
    // Every parent cover must carry a bordism of matching sizes.
    std::set<std::pair<int, int>> cover_set(parent.poset.covers().begin(),
                                            parent.poset.covers().end());
    check(ld.bordisms.size() == cover_set.size(), "ValidationError",
          "level " + std::to_string(i) + ": expected one bordism per parent cover");
    for (const auto& [cov, bord] : ld.bordisms) {
      check(cover_set.count(cov) > 0, "ValidationError",
            "level " + std::to_string(i) + ": bordism on a non-cover");
      check(bord.src_size() == ld.fibers[static_cast<size_t>(cov.first)].size() &&
                bord.tgt_size() == ld.fibers[static_cast<size_t>(cov.second)].size(),
            "ValidationError", "level " + std::to_string(i) + ": bordism size mismatch");
    }

    // Composite bordisms for all arrows, with path independence.
    int np = parent.poset.size();
    std::map<std::pair<int, int>, Bordism> arrows;
    for (int p = 0; p < np; ++p)
      arrows.insert({{p, p}, Bordism::identity(ld.fibers[static_cast<size_t>(p)])});
    // Process pairs (p,q) by increasing interval length in a topological sense:
    // repeatedly resolve pairs whose covers' continuations are known.
    bool progress = true;
    while (progress) {
      progress = false;
      for (int p = 0; p < np; ++p)
        for (int q = 0; q < np; ++q) {
          if (p == q || !parent.poset.leq(p, q)) continue;
          if (arrows.count({p, q})) continue;
          std::optional<Bordism> resolved;
          bool all_known = true;
          for (auto [a, c] : parent.poset.covers()) {
            if (a != p || !parent.poset.leq(c, q)) continue;
            auto it = arrows.find({c, q});
            if (it == arrows.end()) {
              all_known = false;
              continue;
            }
            Bordism comp = ld.bordisms.at({a, c}).compose(
                ld.fibers[static_cast<size_t>(p)], ld.fibers[static_cast<size_t>(c)],
                ld.fibers[static_cast<size_t>(q)], it->second);
            if (!resolved) {
              resolved = comp;
            } else {
              check(*resolved == comp, "ValidationError",
                    "level " + std::to_string(i) + ": path independence fails over " +
                        parent.poset.name(p) + " <= " + parent.poset.name(q));
            }
          }
          if (resolved && all_known) {
            arrows.insert({{p, q}, *resolved});
            progress = true;
          }
        }
    }
    // Every related pair must have been resolved.
    for (int p = 0; p < np; ++p)
      for (int q = 0; q < np; ++q)
        if (p != q && parent.poset.leq(p, q))
          check(arrows.count({p, q}) > 0, "ValidationError",
                "level " + std::to_string(i) + ": unresolved composite bordism");
    arrows_.push_back(arrows);

    // Total poset at level i.
    TotalInfo ti;
    std::vector<std::string> names;
    ti.first_child.assign(static_cast<size_t>(np), 0);
    for (int p = 0; p < np; ++p) {
      ti.first_child[static_cast<size_t>(p)] = static_cast<int>(ti.coords.size());
      for (int pos = 0; pos < ld.fibers[static_cast<size_t>(p)].size(); ++pos) {
        ti.coords.emplace_back(p, pos);
        names.push_back(child_key(parent.poset.name(p), pos));
      }
    }
    int m = static_cast<int>(ti.coords.size());
    std::vector<uint8_t> rel(static_cast<size_t>(m) * m, 0);
    for (int e = 0; e < m; ++e)
      for (int f = 0; f < m; ++f) {
        auto [p, t] = ti.coords[static_cast<size_t>(e)];
        auto [q, s] = ti.coords[static_cast<size_t>(f)];
        if (!parent.poset.leq(p, q)) continue;
        if (arrows.at({p, q}).has(t, s)) rel[static_cast<size_t>(e) * m + f] = 1;
      }
    ti.poset = Poset::from_relation(std::move(names), std::move(rel));
    totals_.push_back(std::move(ti));
  }
}

int TrussBundle::total_size(int i) const { return total_poset(i).size(); }

const Poset& TrussBundle::total_poset(int i) const {
  check(i >= 0 && i <= n(), "LevelOutOfRange", "level " + std::to_string(i));
  return totals_[static_cast<size_t>(i)].poset;
}

std::pair<int, int> TrussBundle::coords(int i, int e) const {
  check(i >= 1 && i <= n(), "LevelOutOfRange", "level " + std::to_string(i));
  return totals_[static_cast<size_t>(i)].coords[static_cast<size_t>(e)];
}

int TrussBundle::element_of(int i, int parent, int pos) const {
  check(i >= 1 && i <= n(), "LevelOutOfRange", "level " + std::to_string(i));
  const auto& ti = totals_[static_cast<size_t>(i)];
  int e = ti.first_child[static_cast<size_t>(parent)] + pos;
  check(e >= 0 && e < static_cast<int>(ti.coords.size()) &&
            ti.coords[static_cast<size_t>(e)] == std::make_pair(parent, pos),
        "InvalidPath", "no such fiber position");
  return e;
}

int TrussBundle::project(int from_level, int to_level, int e) const {
  int cur = e;
  for (int i = from_level; i > to_level; --i) cur = coords(i, cur).first;
  return cur;
}

int TrussBundle::cell_dim(int level, int e) const {
  int d = 0;
  int cur = e;
  for (int i = level; i >= 1; --i) {
    auto [p, pos] = coords(i, cur);
    d += levels_[static_cast<size_t>(i - 1)].fibers[static_cast<size_t>(p)].dim(pos);
    cur = p;
  }
  return d;
}

std::vector<int> TrussBundle::cell_dims(int level) const {
  std::vector<int> out;
  for (int e = 0; e < total_size(level); ++e) out.push_back(cell_dim(level, e));
  return out;
}

const Bordism& TrussBundle::arrow_bordism(int level, int a, int b) const {
  check(level >= 1 && level <= n(), "LevelOutOfRange", "level " + std::to_string(level));
  return arrows_[static_cast<size_t>(level - 1)].at({a, b});
}

bool TrussBundle::is_open() const {
  for (const auto& ld : levels_)
    for (const auto& f : ld.fibers)
      if (!f.is_open()) return false;
  return true;
}

bool TrussBundle::is_closed() const {
  for (const auto& ld : levels_)
    for (const auto& f : ld.fibers)
      if (!f.is_closed()) return false;
  return true;
}

TrussBundle TrussBundle::dual() const {
  std::vector<LevelData> levels;
  for (int i = 1; i <= n(); ++i) {
    LevelData ld;
    for (const auto& f : level(i).fibers) ld.fibers.push_back(f.dual());
    // covers of the dual total(i-1) are reversed covers of the original.
    Poset dual_parent = total_poset(i - 1).opposite();
    for (auto [a, b] : dual_parent.covers())
      ld.bordisms.insert({{a, b}, arrow_bordism(i, b, a).transpose()});
    levels.push_back(std::move(ld));
  }
  return make(base_.opposite(), std::move(levels));
}

TrussBundle TrussBundle::product_with(const TrussBundle& t) const {
  check(t.base_is_point(), "ValidationError", "product factor must be a truss");
  std::vector<LevelData> levels = levels_;
  int m = n();
  // tproj: element of result total(m+j) -> element of t.total(j).
  std::vector<int> tproj(static_cast<size_t>(total_size(m)), 0);
  TrussBundle cur = *this;
  for (int j = 1; j <= t.n(); ++j) {
    const Poset& parent = cur.total_poset(m + j - 1);
    LevelData ld;
    std::vector<int> next_tproj;
    for (int p = 0; p < parent.size(); ++p) {
      int pt = tproj[static_cast<size_t>(p)];
      const Fiber& f = t.level(j).fibers[static_cast<size_t>(pt)];
      ld.fibers.push_back(f);
      for (int pos = 0; pos < f.size(); ++pos)
        next_tproj.push_back(t.element_of(j, pt, pos));
    }
    for (auto [a, b] : parent.covers()) {
      int pa = tproj[static_cast<size_t>(a)], pb = tproj[static_cast<size_t>(b)];
      ld.bordisms.insert({{a, b}, t.arrow_bordism(j, pa, pb)});
    }
    levels.push_back(ld);
    cur = make(base_, levels);
    tproj = std::move(next_tproj);
  }
  return cur;
}

TrussBundle TrussBundle::truncate_above(int k) const {
  check(k >= 0 && k <= n(), "LevelOutOfRange", "level " + std::to_string(k));
  std::vector<LevelData> levels(levels_.begin() + k, levels_.end());
  return make(total_poset(k), std::move(levels));
}

TrussBundle TrussBundle::truncate_below(int k) const {
  check(k >= 0 && k <= n(), "LevelOutOfRange", "level " + std::to_string(k));
  std::vector<LevelData> levels(levels_.begin(), levels_.begin() + k);
  return make(base_, std::move(levels));
}

TrussBundle TrussBundle::rebase_to_point() const {
  check(base_.size() == 1, "ValidationError", "rebase requires a singleton base");
  return make(Poset::point(), levels_);
}

TrussRestriction TrussBundle::restrict_levels(std::vector<std::vector<int>> keep) const {
  check(keep.size() == static_cast<size_t>(n() + 1), "ValidationError",
        "restriction needs one keep-set per level");
  for (auto& k : keep) {
    std::sort(k.begin(), k.end());
    check(!k.empty(), "NotASubtruss", "restriction support is empty at some level");
  }
  std::vector<std::vector<int>> old_to_new(static_cast<size_t>(n() + 1));
  for (int i = 0; i <= n(); ++i) {
    old_to_new[static_cast<size_t>(i)].assign(static_cast<size_t>(total_size(i)), -1);
    for (size_t j = 0; j < keep[static_cast<size_t>(i)].size(); ++j)
      old_to_new[static_cast<size_t>(i)][static_cast<size_t>(keep[static_cast<size_t>(i)][j])] =
          static_cast<int>(j);
  }
  Poset new_base = base_is_point() ? Poset::point() : base_.induced(keep[0]);
  std::vector<LevelData> levels;
  for (int i = 1; i <= n(); ++i) {
    LevelData ld;
    // fibers over kept parents: kept positions must form an alternating word.
    std::vector<std::vector<int>> kept_pos(keep[static_cast<size_t>(i - 1)].size());
    for (int e : keep[static_cast<size_t>(i)]) {
      auto [p, pos] = coords(i, e);
      int np = old_to_new[static_cast<size_t>(i - 1)][static_cast<size_t>(p)];
      check(np >= 0, "NotASubtruss", "kept element over a dropped parent");
      kept_pos[static_cast<size_t>(np)].push_back(pos);
    }
    for (size_t np = 0; np < kept_pos.size(); ++np) {
      int p = keep[static_cast<size_t>(i - 1)][np];
      const Fiber& f = level(i).fibers[static_cast<size_t>(p)];
      std::string word;
      for (int pos : kept_pos[np]) word += f.word()[static_cast<size_t>(pos)];
      check(!word.empty(), "NotASubtruss", "restriction drops a whole fiber");
      try {
        ld.fibers.push_back(Fiber::parse(word));
      } catch (const Error&) {
        fail("NotASubtruss", "restricted fiber is not alternating");
      }
    }
    // bordisms over the covers of the restricted parent poset.
    Poset rparent = total_poset(i - 1).induced(keep[static_cast<size_t>(i - 1)]);
    for (auto [a, b] : rparent.covers()) {
      int oa = keep[static_cast<size_t>(i - 1)][static_cast<size_t>(a)];
      int ob = keep[static_cast<size_t>(i - 1)][static_cast<size_t>(b)];
      const Bordism& big = arrow_bordism(i, oa, ob);
      std::vector<std::pair<int, int>> pairs;
      for (auto [t, s] : big.pairs()) {
        auto ita = std::find(kept_pos[static_cast<size_t>(a)].begin(),
                             kept_pos[static_cast<size_t>(a)].end(), t);
        auto itb = std::find(kept_pos[static_cast<size_t>(b)].begin(),
                             kept_pos[static_cast<size_t>(b)].end(), s);
        if (ita != kept_pos[static_cast<size_t>(a)].end() &&
            itb != kept_pos[static_cast<size_t>(b)].end())
          pairs.emplace_back(static_cast<int>(ita - kept_pos[static_cast<size_t>(a)].begin()),
                             static_cast<int>(itb - kept_pos[static_cast<size_t>(b)].begin()));
      }
      auto rb = Bordism::try_make(ld.fibers[static_cast<size_t>(a)],
                                  ld.fibers[static_cast<size_t>(b)], pairs);
      check(rb.has_value(), "NotASubtruss", "restricted bordism is invalid");
      // The restriction of a closed relation need not stay closed if closure
      // witnesses were dropped; require on-the-nose equality.
      check(rb->pairs() == pairs ||
                std::set<std::pair<int, int>>(rb->pairs().begin(), rb->pairs().end()) ==
                    std::set<std::pair<int, int>>(pairs.begin(), pairs.end()),
            "NotASubtruss", "restricted bordism is not closed");
      ld.bordisms.insert({{a, b}, *rb});
    }
    levels.push_back(std::move(ld));
  }
  TrussRestriction out;
  try {
    out.bundle = make(std::move(new_base), std::move(levels));
  } catch (const Error& e) {
    fail("NotASubtruss", std::string("restriction is not a bundle (") + e.what() + ")");
  }
  out.new_to_old = std::move(keep);
  // The restricted totals must carry the induced order.
  for (int i = 0; i <= n(); ++i) {
    Poset induced = total_poset(i).induced(out.new_to_old[static_cast<size_t>(i)]);
    check(out.bundle.total_poset(i).covers() == induced.covers(), "NotASubtruss",
          "restricted total order disagrees with the induced order");
  }
  return out;
}

TrussRestriction TrussBundle::neighborhood(int x) const {
  check(x >= 0 && x < total_size(n()), "InvalidPath", "no such element");
  std::vector<std::vector<int>> keep(static_cast<size_t>(n() + 1));
  keep[static_cast<size_t>(n())] = total_poset(n()).down_set(x);
  for (int i = n(); i >= 1; --i) {
    std::set<int> parents;
    for (int e : keep[static_cast<size_t>(i)]) parents.insert(coords(i, e).first);
    keep[static_cast<size_t>(i - 1)].assign(parents.begin(), parents.end());
  }
  // Soft check (see ledger): supports normally equal down-closures of the
  // projections; they can only be smaller.
  return restrict_levels(std::move(keep));
}

TrussRestriction TrussBundle::closure_up(int x) const {
  check(x >= 0 && x < total_size(n()), "InvalidPath", "no such element");
  std::vector<std::vector<int>> keep(static_cast<size_t>(n() + 1));
  keep[static_cast<size_t>(n())] = total_poset(n()).up_set(x);
  for (int i = n(); i >= 1; --i) {
    std::set<int> parents;
    for (int e : keep[static_cast<size_t>(i)]) parents.insert(coords(i, e).first);
    keep[static_cast<size_t>(i - 1)].assign(parents.begin(), parents.end());
  }
  return restrict_levels(std::move(keep));
}

TrussRestriction TrussBundle::side(int k, int sign) const {
  check(k >= 1 && k <= n(), "LevelOutOfRange", "side direction " + std::to_string(k));
  int lvl = n() - k + 1;
  std::vector<std::vector<int>> keep(static_cast<size_t>(n() + 1));
  for (int i = 0; i < lvl; ++i) {
    keep[static_cast<size_t>(i)].resize(static_cast<size_t>(total_size(i)));
    for (int e = 0; e < total_size(i); ++e) keep[static_cast<size_t>(i)][static_cast<size_t>(e)] = e;
  }
  for (int p = 0; p < total_size(lvl - 1); ++p) {
    const Fiber& f = level(lvl).fibers[static_cast<size_t>(p)];
    int pos = sign < 0 ? 0 : f.size() - 1;
    keep[static_cast<size_t>(lvl)].push_back(element_of(lvl, p, pos));
  }
  for (int i = lvl + 1; i <= n(); ++i) {
    std::set<int> kept_parents(keep[static_cast<size_t>(i - 1)].begin(),
                               keep[static_cast<size_t>(i - 1)].end());
    for (int e = 0; e < total_size(i); ++e)
      if (kept_parents.count(coords(i, e).first)) keep[static_cast<size_t>(i)].push_back(e);
  }
  return restrict_levels(std::move(keep));
}

TrussRestriction TrussBundle::restrict_base(const std::vector<int>& base_keep) const {
  std::vector<std::vector<int>> keep(static_cast<size_t>(n() + 1));
  keep[0] = base_keep;
  for (int i = 1; i <= n(); ++i) {
    std::set<int> kept_parents(keep[static_cast<size_t>(i - 1)].begin(),
                               keep[static_cast<size_t>(i - 1)].end());
    for (int e = 0; e < total_size(i); ++e)
      if (kept_parents.count(coords(i, e).first)) keep[static_cast<size_t>(i)].push_back(e);
  }
  return restrict_levels(std::move(keep));
}

TrussBundle TrussBundle::boundary_dir(bool codomain) const {
  check(base_is_point(), "ValidationError", "boundary of a truss only");
  check(n() >= 1, "LevelOutOfRange", "no levels to drop");
  TrussRestriction s = side(n(), codomain ? +1 : -1);
  const TrussBundle& sb = s.bundle;
  check(sb.total_size(1) == 1, "ValidationError", "side level 1 is not a singleton");
  std::vector<LevelData> levels(sb.levels_.begin() + 1, sb.levels_.end());
  return make(Poset::point(), std::move(levels));
}

TrussCompactified TrussBundle::compactify() const {
  check(is_open(), "NotOpen", "compactification requires an open bundle");
  TrussCompactified out;
  out.retract.resize(static_cast<size_t>(n() + 1));
  out.retract[0].resize(static_cast<size_t>(base_.size()));
  for (int e = 0; e < base_.size(); ++e) out.retract[0][static_cast<size_t>(e)] = e;
  std::vector<LevelData> levels;
  TrussBundle prefix = make(base_, {});
  for (int i = 1; i <= n(); ++i) {
    const Poset& parent = prefix.total_poset(i - 1);
    LevelData ld;
    for (int p = 0; p < parent.size(); ++p) {
      int op = out.retract[static_cast<size_t>(i - 1)][static_cast<size_t>(p)];
      const Fiber& f = level(i).fibers[static_cast<size_t>(op)];
      ld.fibers.push_back(Fiber::parse("S" + f.word() + "S"));
    }
    for (auto [a, b] : parent.covers()) {
      int oa = out.retract[static_cast<size_t>(i - 1)][static_cast<size_t>(a)];
      int ob = out.retract[static_cast<size_t>(i - 1)][static_cast<size_t>(b)];
      std::vector<std::pair<int, int>> gen;
      if (oa == ob) {
        const Fiber& f = ld.fibers[static_cast<size_t>(a)];
        for (int t = 0; t < f.size(); ++t) gen.emplace_back(t, t);
      } else {
        check(total_poset(i - 1).leq(oa, ob), "ValidationError",
              "compactification retraction is not monotone");
        const Bordism& big = arrow_bordism(i, oa, ob);
        for (auto [t, s] : big.pairs()) gen.emplace_back(t + 1, s + 1);
        gen.emplace_back(0, 0);
        gen.emplace_back(big.src_size() + 1, big.tgt_size() + 1);
      }
      ld.bordisms.insert(
          {{a, b}, Bordism::make(ld.fibers[static_cast<size_t>(a)],
                                 ld.fibers[static_cast<size_t>(b)], std::move(gen))});
    }
    levels.push_back(std::move(ld));
    prefix = make(base_, levels);
    // retraction for the new level
    std::vector<int>& r = out.retract[static_cast<size_t>(i)];
    r.resize(static_cast<size_t>(prefix.total_size(i)));
    for (int e = 0; e < prefix.total_size(i); ++e) {
      auto [p, pos] = prefix.coords(i, e);
      int op = out.retract[static_cast<size_t>(i - 1)][static_cast<size_t>(p)];
      const Fiber& f = level(i).fibers[static_cast<size_t>(op)];
      int opos = std::min(std::max(pos - 1, 0), f.size() - 1);
      r[static_cast<size_t>(e)] = element_of(i, op, opos);
    }
  }
  out.bundle = prefix;
  return out;
}

TrussRestriction TrussBundle::interior() const {
  check(is_closed(), "NotClosed", "interior requires a closed bundle");
  std::vector<std::vector<int>> keep(static_cast<size_t>(n() + 1));
  for (int e = 0; e < base_.size(); ++e) keep[0].push_back(e);
  for (int i = 1; i <= n(); ++i) {
    std::set<int> kept_parents(keep[static_cast<size_t>(i - 1)].begin(),
                               keep[static_cast<size_t>(i - 1)].end());
    for (int e = 0; e < total_size(i); ++e) {
      auto [p, pos] = coords(i, e);
      if (!kept_parents.count(p)) continue;
      const Fiber& f = level(i).fibers[static_cast<size_t>(p)];
      if (pos == 0 || pos == f.size() - 1) continue;  // endpoint singulars
      keep[static_cast<size_t>(i)].push_back(e);
    }
    check(!keep[static_cast<size_t>(i)].empty(), "ValidationError",
          "interior is empty at level " + std::to_string(i));
  }
  return restrict_levels(std::move(keep));
}

std::optional<int> TrussBundle::cone_point() const {
  if (!is_open()) return std::nullopt;
  auto top = total_poset(n()).unique_maximum();
  if (!top) return std::nullopt;
  if (cell_dim(n(), *top) != 0) return std::nullopt;
  return top;
}

bool TrussBundle::operator==(const TrussBundle& o) const {
  if (!(base_ == o.base_) || n() != o.n()) return false;
  for (int i = 1; i <= n(); ++i) {
    if (!(level(i).fibers == o.level(i).fibers)) return false;
    if (!(level(i).bordisms == o.level(i).bordisms)) return false;
  }
  return true;
}

}  // namespace trusskit
