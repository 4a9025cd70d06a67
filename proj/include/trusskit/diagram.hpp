#pragma once

#include <optional>
#include <string>
#include <vector>

#include "trusskit/strat.hpp"

namespace trusskit {

// Per-element outcome of a conicality/facetality check.
struct ConeData {
  int k = 0;                       // cube / corner / point factor length
  std::vector<std::string> sigma;  // factor words (corner mode)
  StratTruss cone;                 // normalized remainder
};

struct DiagramReport {
  bool yes = false;
  std::vector<ConeData> elements;  // per top element, on success
  int failed_element = -1;
  std::string reason;
};

// Conicality at one element: normal form of the stratified neighborhood,
// leading cube (or corner) factored off, remainder must be a stratified open
// cone truss (cone point its own stratum).
std::optional<ConeData> check_conical_at(const StratTruss& st, int x, bool compact = false);

DiagramReport is_manifold_diagram(const StratTruss& st);
DiagramReport is_compact_manifold_diagram(const StratTruss& st);

// Facetality at one element (closed trusses): normal form of the stratified
// closure, leading closed-point factors, remainder a closed facet truss.
std::optional<ConeData> check_facetal_at(const StratTruss& st, int x);

// Computed two ways (direct facetality; manifold diagram of the dual) and
// cross-asserted; disagreement raises InternalDisagreement.
DiagramReport is_cell_diagram(const StratTruss& st);

struct LabeledPoset {
  Poset poset;
  std::vector<int> labels;  // canonical stratum ids
};

// Canonical link of a stratum: compactify the cone factor at any point of the
// stratum and restrict to the boundary. Choice independence is asserted.
LabeledPoset canonical_link(const StratTruss& st, int stratum);

struct CellInfo {
  int element;
  int dim;
  bool degenerate;
};

std::vector<CellInfo> cells_report(const StratTruss& st);

}  // namespace trusskit
