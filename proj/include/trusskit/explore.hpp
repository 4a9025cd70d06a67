#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "trusskit/tangle.hpp"

namespace trusskit {

// A stratified bundle of m-tangle n-trusses over a finite base poset.
class TangleBundle {
public:
  TangleBundle() = default;
  static TangleBundle make(TrussBundle bundle, std::vector<int> q, int m);

  const TrussBundle& bundle() const { return strat_.bundle(); }
  const StratTruss& strat() const { return strat_; }
  const std::vector<int>& q() const { return q_; }
  int m() const { return m_; }

  // Fiber over a base element, re-based over the point.
  TanglePresentation fiber_over(int base_elt) const;
  // Restriction to an induced subposet of the base.
  TangleBundle restrict_to(const std::vector<int>& base_keep) const;

  bool operator==(const TangleBundle& o) const {
    return strat_ == o.strat_ && q_ == o.q_ && m_ == o.m_;
  }

private:
  StratTruss strat_;  // indicator stratification (strata refined by base fibers)
  std::vector<int> q_;
  int m_ = 0;
};

// The constant bundle base x tp.
TangleBundle constant_bundle(const Poset& base, const TanglePresentation& tp);

struct BundleReport {
  bool yes = false;
  std::string reason;
};

BundleReport is_tangle_bundle(const TangleBundle& tb);

// Fiber transition condition via disk recognition (Unknown above m = 2).
Verdict is_fiber_bundle(const TangleBundle& tb);

// A path of m-tangle n-trusses is a 1-fiber-bundle (m+1)-tangle (n+1)-truss.
bool is_path(const TanglePresentation& tp, std::string* reason = nullptr);
// A coherence is a path without tdim-0 points.
bool is_coherence(const TanglePresentation& tp, std::string* reason = nullptr);

// A perturbation: a tangle bundle over [1]^op = (0 <- 1) whose special fiber
// (over 0) is levelwise connected onto from the generic fiber (over 1).
class Perturbation {
public:
  Perturbation() = default;
  explicit Perturbation(TangleBundle tb) : tb_(std::move(tb)) {}
  const TangleBundle& tangle_bundle() const { return tb_; }
  TanglePresentation special_fiber() const;
  TanglePresentation generic_fiber() const;

private:
  TangleBundle tb_;
};

Perturbation identity_perturbation(const TanglePresentation& tp);
bool verify_perturbation(const Perturbation& p, std::string* diagnostics = nullptr);
Perturbation compose_perturbations(const Perturbation& p1, const Perturbation& p2);

// Exhaustive enumeration (deterministic order, duplicate-free).
std::vector<TrussBundle> enumerate_trusses(int n, int max_top);
std::vector<StratTruss> enumerate_stratified(int n, int max_top, int max_strata);
std::vector<TanglePresentation> enumerate_tangles(int n, int max_top, int m);

struct SearchBounds {
  int max_generic_q = 4;
  int max_total = 32;
  long long max_attempts = 2'000'000;
};

enum class SearchStatus { Found, None, Inconclusive };

struct SearchResult {
  SearchStatus status = SearchStatus::None;
  std::optional<Perturbation> certificate;
  long long candidates_tried = 0;
};

// Bounded exhaustive search for a perturbation whose generic fiber is
// pointwise strictly simpler than the singularity (#Q > #W^{<=x}).
SearchResult search_perturbation(const TanglePresentation& tp, const SearchBounds& bounds);

enum class StabilityStatus { StableWithinBounds, Unstable, Inconclusive };

struct StabilityResult {
  StabilityStatus status = StabilityStatus::Inconclusive;
  std::optional<Perturbation> certificate;
  // Only set when the inductive check runs: false iff some non-constant
  // perturbation onto another singularity was found within bounds.
  std::optional<bool> inductively_stable;
};

StabilityResult stability(const TanglePresentation& tp, const SearchBounds& bounds,
                          bool inductive = false);

// Attempt to build a perturbation bundle with the given fibers; used by the
// search and by fixture construction. Returns the first verified bundle in
// deterministic order.
std::optional<Perturbation> connect_perturbation(const TanglePresentation& special,
                                                 const TanglePresentation& generic,
                                                 long long* attempts = nullptr,
                                                 long long max_attempts = 2'000'000);

}  // namespace trusskit
