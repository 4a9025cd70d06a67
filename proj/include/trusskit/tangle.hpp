#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "trusskit/strat.hpp"

namespace trusskit {

// An m-tangle presentation: an open truss with an up-closed subset Q of the
// top total poset (the tangle manifold) and a declared dimension m. The
// derived stratification is the indicator labeling of Q.
class TanglePresentation {
public:
  TanglePresentation() = default;
  static TanglePresentation make(TrussBundle bundle, std::vector<int> q, int m);

  const TrussBundle& bundle() const { return strat_.bundle(); }
  const StratTruss& strat() const { return strat_; }
  const std::vector<int>& q() const { return q_; }
  bool in_q(int e) const;
  int m() const { return m_; }

  bool operator==(const TanglePresentation& o) const {
    return strat_ == o.strat_ && q_ == o.q_ && m_ == o.m_;
  }

private:
  StratTruss strat_;
  std::vector<int> q_;  // sorted top-total element indices
  int m_ = 0;
};

struct TransversalCheck {
  Verdict verdict = Verdict::No;
  int k = 0;
  StratTruss cone;      // remainder (C with indicator labels)
  std::vector<int> d;   // Q-elements of the cone (indices in its top total)
  std::string reason;
};

TransversalCheck check_transversal_at(const TanglePresentation& tp, int x, bool compact = false);

struct TangleReport {
  Verdict verdict = Verdict::No;
  std::map<int, int> tdim;  // per Q element, on yes
  int failed_element = -1;
  std::string reason;
};

TangleReport is_tangle(const TanglePresentation& tp);
TangleReport is_compact_tangle(const TanglePresentation& tp);

// Transversal stratification: strata are the components of tdim^{-1}(k) and
// of the complement. The tdim-antitonicity assertion can be overridden.
StratTruss tstr(const TanglePresentation& tp, bool assert_antitone = true);

bool is_singularity(const TanglePresentation& tp);

// The (m-k)-tangle (n-k)-truss remainder at x.
TanglePresentation normal_singularity_at(const TanglePresentation& tp, int x);

struct CellStructure {
  Poset cells;
  std::vector<int> dims;
  std::vector<std::string> embedding;  // pathkeys into the ambient top poset
  Verdict cellular = Verdict::Unknown;
  long long euler = 0;
};

CellStructure cell_structure(const TanglePresentation& tp);
CellStructure dual_cell_structure(const TanglePresentation& tp);

int complexity(const TanglePresentation& tp);

}  // namespace trusskit
