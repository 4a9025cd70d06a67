#pragma once

#include <optional>
#include <string>
#include <vector>

#include "trusskit/truss.hpp"

namespace trusskit {

// A stratified truss bundle: a bundle with a monotone labeling of the top
// total poset. Strata are connected components of (label fiber ∩ base fiber);
// the entrance-path poset Entr is the induced order on strata.
class StratTruss {
public:
  StratTruss() = default;

  static StratTruss make(TrussBundle bundle, Poset label_poset, std::vector<int> labeling);
  // Trivial (single-label) stratification.
  static StratTruss trivial(TrussBundle bundle);
  // Indicator stratification of an up-closed subset Q (labels in [1]^op).
  static StratTruss indicator(TrussBundle bundle, const std::vector<int>& q_elements);

  const TrussBundle& bundle() const { return bundle_; }
  const Poset& label_poset() const { return label_poset_; }
  const std::vector<int>& labeling() const { return labeling_; }
  int label_of(int e) const { return labeling_[static_cast<size_t>(e)]; }

  int num_strata() const { return entr_.size(); }
  int stratum_of(int e) const { return stratum_of_[static_cast<size_t>(e)]; }
  const Poset& entr() const { return entr_; }
  std::vector<int> stratum_elements(int s) const;

  StratTruss dual() const;
  StratTruss product_with(const StratTruss& t) const;  // t a stratified truss
  StratTruss neighborhood(int x) const;
  StratTruss closure_up(int x) const;
  StratTruss side(int k, int sign) const;
  StratTruss restrict_base(const std::vector<int>& base_keep) const;
  StratTruss truncate_above(int k) const;
  StratTruss rebase_to_point() const;

  struct CompactifiedStrat;
  StratTruss compactified() const;
  // Compactification together with the top-level retraction map.
  std::pair<StratTruss, std::vector<int>> compactified_with_retract() const;
  StratTruss interior() const;

  // Peel level 1 (must be a singleton fiber position `pos` after restriction)
  // and return the tower over it, re-based over the point.
  StratTruss tower_over_level1(int pos) const;

  bool operator==(const StratTruss& o) const {
    return bundle_ == o.bundle_ && label_poset_ == o.label_poset_ && labeling_ == o.labeling_;
  }

private:
  TrussBundle bundle_;
  Poset label_poset_;
  std::vector<int> labeling_;
  std::vector<int> stratum_of_;
  Poset entr_;

  void derive_strata();
};

// Structure-preserving isomorphism over a fixed base; labels matter only
// through strata and Entr.
std::string canonical_form(const StratTruss& st);
bool strat_equal(const StratTruss& a, const StratTruss& b);

// A stratified coarsening candidate: levelwise element assignments.
struct Coarsening {
  StratTruss source;
  StratTruss target;
  std::vector<std::vector<int>> level_map;  // per level 0..n

  bool is_identity() const;
  Coarsening then(const Coarsening& next) const;  // composition
  static Coarsening identity(const StratTruss& st);
};

// Validates every clause of the coarsening definition; diagnostics lists the
// violated ones.
bool is_coarsening(const Coarsening& c, std::vector<std::string>* diagnostics = nullptr);

// Exhaustive generation of all coarsenings out of `st` (test oracle).
// Throws SizeBoundExceeded when the pattern space exceeds `max_patterns`.
std::vector<Coarsening> enumerate_coarsenings(const StratTruss& st,
                                              long long max_patterns = 1 << 20);

struct NormalizeResult {
  StratTruss nf;
  Coarsening witness;
};

NormalizeResult normalize(const StratTruss& st);
NormalizeResult normalize_level_descending(const StratTruss& st);  // fast path
bool is_normalized(const StratTruss& st);

// Leading cube / corner / point factorization of a stratified truss.
enum class FactorMode { Cube, Corner, Point };
struct Factorization {
  std::vector<std::string> sigma;  // factor fiber words, outermost first
  StratTruss remainder;
  int k() const { return static_cast<int>(sigma.size()); }
};
Factorization factor_leading(const StratTruss& st, FactorMode mode);

// Strict gluing along the k-th categorical direction (level n-k+1).
StratTruss glue(const StratTruss& a, const StratTruss& b, int k);
// Refinement-assisted variant (restricted least-common-refinement strategy,
// level-1 subdivisions only).
std::pair<StratTruss, StratTruss> match_sides(const StratTruss& a, const StratTruss& b, int k);

// Subdivide the level-1 fiber: each regular position r gains extra[r] copies
// of a degenerate wall+regular pair after it, labeled like r.
StratTruss subdivide_level1(const StratTruss& st, const std::vector<int>& extra);

}  // namespace trusskit
