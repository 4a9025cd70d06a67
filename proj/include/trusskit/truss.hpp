#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "trusskit/fiber.hpp"
#include "trusskit/poset.hpp"

namespace trusskit {

// One level of a tower: a fiber for every element of the level-below total
// poset, and a bordism for every covering arrow of it. Bordisms over
// composite arrows are derived (path independence is validated).
struct LevelData {
  std::vector<Fiber> fibers;                      // indexed by parent element
  std::map<std::pair<int, int>, Bordism> bordisms;  // keyed by parent cover (a,b)
};

struct TrussRestriction;
struct TrussCompactified;

// An n-truss bundle: a tower of 1-truss bundles over a base poset. A truss is
// the special case of a singleton base. Immutable after construction; all
// derived structure (total posets, composite bordisms) is computed and
// validated up front.
class TrussBundle {
public:
  TrussBundle() = default;

  static TrussBundle make(Poset base, std::vector<LevelData> levels);
  static TrussBundle truss(std::vector<LevelData> levels) {
    return make(Poset::point(), std::move(levels));
  }
  // Convenience: a truss from fiber words per level keyed by parent pathkey,
  // and bordisms keyed by "keyA>keyB" with generating pairs.
  static TrussBundle point_truss() { return make(Poset::point(), {}); }

  int n() const { return static_cast<int>(levels_.size()); }
  const Poset& base() const { return base_; }
  bool base_is_point() const { return base_.size() == 1; }
  const LevelData& level(int i) const { return levels_[static_cast<size_t>(i - 1)]; }

  int total_size(int i) const;
  const Poset& total_poset(int i) const;  // element names are pathkeys
  // coords of element e of total(i), i >= 1: (parent element of total(i-1), frame position)
  std::pair<int, int> coords(int i, int e) const;
  int element_of(int i, int parent, int pos) const;  // inverse of coords
  const std::string& pathkey(int i, int e) const { return total_poset(i).name(e); }
  int project(int from_level, int to_level, int e) const;

  int cell_dim(int level, int e) const;
  std::vector<int> cell_dims(int level) const;

  // Composite bordism over an arrow a <= b of total(level-1).
  const Bordism& arrow_bordism(int level, int a, int b) const;

  bool is_open() const;
  bool is_closed() const;

  TrussBundle dual() const;
  TrussBundle product_with(const TrussBundle& t) const;  // t must be a truss
  TrussBundle truncate_above(int k) const;  // levels k+1..n over total(k)
  TrussBundle truncate_below(int k) const;  // levels 1..k
  TrussBundle rebase_to_point() const;      // singleton base renamed to "*"

  // Generic level-wise restriction. keep[i] lists kept elements of total(i)
  // (sorted); parents of kept elements must be kept. Fails with NotASubtruss
  // if the restriction is not a valid bundle.
  TrussRestriction restrict_levels(std::vector<std::vector<int>> keep) const;

  TrussRestriction neighborhood(int x) const;  // x in total(n); levelwise supports
                                               // are projection images of the top
                                               // down-closure
  TrussRestriction closure_up(int x) const;
  TrussRestriction side(int k, int sign) const;  // sign: -1 or +1
  TrussRestriction restrict_base(const std::vector<int>& base_keep) const;

  // side(n, -/+) with the singleton level 1 dropped; trusses only.
  TrussBundle boundary_dir(bool codomain) const;

  TrussCompactified compactify() const;  // pre: open
  TrussRestriction interior() const;     // pre: closed

  std::optional<int> cone_point() const;  // open + unique top maximum of cell dim 0

  bool operator==(const TrussBundle& o) const;

private:
  Poset base_;
  std::vector<LevelData> levels_;

  struct TotalInfo {
    Poset poset;
    std::vector<std::pair<int, int>> coords;
    std::vector<int> first_child;  // per parent
  };
  std::vector<TotalInfo> totals_;
  // arrow bordisms per level, keyed by (a,b); covers stored in LevelData,
  // composites filled during validation.
  std::vector<std::map<std::pair<int, int>, Bordism>> arrows_;

  void build_and_validate();
};

struct TrussRestriction {
  TrussBundle bundle;
  std::vector<std::vector<int>> new_to_old;  // per level, new index -> old index
};

struct TrussCompactified {
  TrussBundle bundle;
  std::vector<std::vector<int>> retract;  // per level, new index -> old index
};

}  // namespace trusskit
