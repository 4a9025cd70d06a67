#include "trusskit/diagram.hpp"

#include <algorithm>

namespace trusskit {

std::optional<ConeData> check_conical_at(const StratTruss& st, int x, bool compact) {
  StratTruss nf = normalize(st.neighborhood(x)).nf;
  Factorization fac = factor_leading(nf, compact ? FactorMode::Corner : FactorMode::Cube);
  const StratTruss& c = fac.remainder;
  if (!c.bundle().is_open()) return std::nullopt;
  auto top = c.bundle().cone_point();
  if (!top) return std::nullopt;
  if (c.stratum_elements(c.stratum_of(*top)).size() != 1) return std::nullopt;
  ConeData out;
  out.k = fac.k();
  out.sigma = fac.sigma;
  out.cone = c;
  return out;
}

namespace {

DiagramReport conical_report(const StratTruss& st, bool compact) {
  DiagramReport rep;
  if (!st.bundle().base_is_point()) {
    rep.reason = "not a truss (non-trivial base)";
    return rep;
  }
  if (compact ? !st.bundle().is_closed() : !st.bundle().is_open()) {
    rep.reason = compact ? "not closed" : "not open";
    return rep;
  }
  if (!is_normalized(st)) {
    rep.reason = "not normalized";
    return rep;
  }
  int n = st.bundle().total_size(st.bundle().n());
  for (int x = 0; x < n; ++x) {
    auto cd = check_conical_at(st, x, compact);
    if (!cd) {
      rep.failed_element = x;
      rep.reason = "not conical at " + st.bundle().total_poset(st.bundle().n()).name(x);
      rep.elements.clear();
      return rep;
    }
    rep.elements.push_back(std::move(*cd));
  }
  rep.yes = true;
  return rep;
}

}  // namespace

DiagramReport is_manifold_diagram(const StratTruss& st) { return conical_report(st, false); }

DiagramReport is_compact_manifold_diagram(const StratTruss& st) {
  return conical_report(st, true);
}

std::optional<ConeData> check_facetal_at(const StratTruss& st, int x) {
  // Facets live in the cellular (dual) world: the closure normalizes by
  // cellular coarsenings, i.e. by cocellular normalization of its dual.
  StratTruss nf = normalize(st.closure_up(x).dual()).nf;
  Factorization fac = factor_leading(nf, FactorMode::Cube);
  const StratTruss& c = fac.remainder;
  if (!c.bundle().is_open()) return std::nullopt;
  auto top = c.bundle().cone_point();
  if (!top) return std::nullopt;
  if (c.stratum_elements(c.stratum_of(*top)).size() != 1) return std::nullopt;
  StratTruss facet = c.dual();
  // the facet has a minimum of full cell dimension, dually to the cone point
  ConeData out;
  out.k = fac.k();
  out.sigma = fac.sigma;
  out.cone = facet;
  return out;
}

DiagramReport is_cell_diagram(const StratTruss& st) {
  DiagramReport rep;
  bool direct_ok = true;
  std::string reason;
  int failed = -1;
  if (!st.bundle().base_is_point()) {
    direct_ok = false;
    reason = "not a truss (non-trivial base)";
  } else if (!st.bundle().is_closed()) {
    direct_ok = false;
    reason = "not closed";
  } else if (!is_normalized(st)) {
    direct_ok = false;
    reason = "not normalized";
  } else {
    int n = st.bundle().total_size(st.bundle().n());
    for (int x = 0; x < n && direct_ok; ++x) {
      auto fd = check_facetal_at(st, x);
      if (!fd) {
        direct_ok = false;
        failed = x;
        reason = "not facetal at " + st.bundle().total_poset(st.bundle().n()).name(x);
      } else {
        rep.elements.push_back(std::move(*fd));
      }
    }
  }
  DiagramReport dual_rep = is_manifold_diagram(st.dual());
  check(direct_ok == dual_rep.yes, "InternalDisagreement",
        "facetality and dual conicality disagree");
  rep.yes = direct_ok;
  if (!direct_ok) {
    rep.elements.clear();
    rep.failed_element = failed;
    rep.reason = reason;
  }
  return rep;
}

LabeledPoset canonical_link(const StratTruss& st, int stratum) {
  DiagramReport rep = is_manifold_diagram(st);
  check(rep.yes, "NotADiagram", "canonical links require a manifold diagram");
  check(stratum >= 0 && stratum < st.num_strata(), "UnknownElement", "no such stratum");
  std::vector<int> pts = st.stratum_elements(stratum);
  std::optional<LabeledPoset> result;
  for (int x : pts) {
    const ConeData& cd = rep.elements[static_cast<size_t>(x)];
    LabeledPoset link;
    if (cd.cone.bundle().n() == 0) {
      link.poset = Poset::empty();
    } else {
      StratTruss comp = cd.cone.compactified();
      TrussRestriction inside = comp.bundle().interior();
      std::vector<bool> interior_img(
          static_cast<size_t>(comp.bundle().total_size(comp.bundle().n())), false);
      for (int e : inside.new_to_old.back()) interior_img[static_cast<size_t>(e)] = true;
      std::vector<int> boundary;
      for (int e = 0; e < comp.bundle().total_size(comp.bundle().n()); ++e)
        if (!interior_img[static_cast<size_t>(e)]) boundary.push_back(e);
      link.poset = comp.bundle().total_poset(comp.bundle().n()).induced(boundary);
      for (int e : boundary) link.labels.push_back(comp.stratum_of(e));
    }
    if (!result) {
      result = link;
    } else {
      check(isomorphic_labeled(result->poset, result->labels, link.poset, link.labels),
            "InternalDisagreement", "canonical link depends on the chosen point");
    }
  }
  check(result.has_value(), "UnknownElement", "empty stratum");
  return *result;
}

std::vector<CellInfo> cells_report(const StratTruss& st) {
  DiagramReport rep = is_cell_diagram(st);
  check(rep.yes, "NotACellDiagram", "cells report requires a cell diagram");
  std::vector<CellInfo> out;
  int n = st.bundle().n();
  for (int x = 0; x < st.bundle().total_size(n); ++x) {
    StratTruss nb = st.neighborhood(x);
    auto top = nb.bundle().total_poset(n).unique_maximum();
    check(top.has_value(), "InternalDisagreement", "neighborhood lost its maximum");
    bool own = nb.stratum_elements(nb.stratum_of(*top)).size() == 1;
    out.push_back({x, st.bundle().cell_dim(n, x), !own});
  }
  return out;
}

}  // namespace trusskit
