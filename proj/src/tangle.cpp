#include "trusskit/tangle.hpp"

#include <algorithm>
#include <set>

#include "trusskit/diagram.hpp"

namespace trusskit {

TanglePresentation TanglePresentation::make(TrussBundle bundle, std::vector<int> q, int m) {
  std::sort(q.begin(), q.end());
  q.erase(std::unique(q.begin(), q.end()), q.end());
  TanglePresentation tp;
  tp.strat_ = StratTruss::indicator(std::move(bundle), q);  // validates up-closedness
  tp.q_ = std::move(q);
  tp.m_ = m;
  return tp;
}

bool TanglePresentation::in_q(int e) const {
  return std::binary_search(q_.begin(), q_.end(), e);
}

TransversalCheck check_transversal_at(const TanglePresentation& tp, int x, bool compact) {
  TransversalCheck out;
  if (!tp.in_q(x)) fail("NotInQ", "element is not in the tangle manifold");
  StratTruss nf = normalize(tp.strat().neighborhood(x)).nf;
  Factorization fac = factor_leading(nf, compact ? FactorMode::Corner : FactorMode::Cube);
  const StratTruss& c = fac.remainder;
  out.k = fac.k();
  out.cone = c;
  if (!c.bundle().is_open()) {
    out.reason = "remainder is not open";
    return out;
  }
  auto top = c.bundle().cone_point();
  if (!top) {
    out.reason = "remainder is not a cone truss";
    return out;
  }
  // D: the in-Q elements of the remainder (label "0" of the indicator poset).
  int in_q_label = c.label_poset().index("0");
  for (int e = 0; e < c.bundle().total_size(c.bundle().n()); ++e)
    if (c.label_of(e) == in_q_label) out.d.push_back(e);
  if (!std::binary_search(out.d.begin(), out.d.end(), *top)) {
    out.reason = "cone point is not in the tangle manifold";
    return out;
  }
  std::vector<int> d_minus_top;
  for (int e : out.d)
    if (e != *top) d_minus_top.push_back(e);
  Poset link = c.bundle().total_poset(c.bundle().n()).induced(d_minus_top);
  Verdict sphere = recognize_sphere(link, tp.m() - out.k - 1);
  if (sphere == Verdict::No) {
    out.reason = "link is not a sphere of the required dimension";
    return out;
  }
  out.verdict = sphere;  // Yes or Unknown
  return out;
}

namespace {

TangleReport tangle_report(const TanglePresentation& tp, bool compact) {
  TangleReport rep;
  const TrussBundle& b = tp.bundle();
  if (!b.base_is_point()) {
    rep.reason = "not a truss (non-trivial base)";
    return rep;
  }
  if (compact ? !b.is_closed() : !b.is_open()) {
    rep.reason = compact ? "not closed" : "not open";
    return rep;
  }
  if (!is_normalized(tp.strat())) {
    rep.reason = "derived stratification is not normalized";
    return rep;
  }
  bool unknown = false;
  for (int x : tp.q()) {
    TransversalCheck tc = check_transversal_at(tp, x, compact);
    if (tc.verdict == Verdict::No) {
      rep.failed_element = x;
      rep.reason = "not transversal at " + b.total_poset(b.n()).name(x) + " (" + tc.reason + ")";
      rep.tdim.clear();
      return rep;
    }
    if (tc.verdict == Verdict::Unknown) unknown = true;
    rep.tdim[x] = tc.k;
  }
  rep.verdict = unknown ? Verdict::Unknown : Verdict::Yes;
  return rep;
}

}  // namespace

TangleReport is_tangle(const TanglePresentation& tp) { return tangle_report(tp, false); }
TangleReport is_compact_tangle(const TanglePresentation& tp) { return tangle_report(tp, true); }

StratTruss tstr(const TanglePresentation& tp, bool assert_antitone) {
  TangleReport rep = is_tangle(tp);
  check(rep.verdict == Verdict::Yes, "NotATangle", "transversal stratification requires a tangle");
  const TrussBundle& b = tp.bundle();
  const Poset& top = b.total_poset(b.n());
  if (assert_antitone) {
    for (int x : tp.q())
      for (int y : tp.q())
        if (top.lt(x, y))
          check(rep.tdim[x] >= rep.tdim[y], "ValidationError",
                "tdim is not antitone along " + top.name(x) + " <= " + top.name(y));
  }
  // label chain: c < t_m < ... < t_0
  std::vector<std::string> names{"c"};
  std::vector<std::pair<std::string, std::string>> covers;
  for (int k = tp.m(); k >= 0; --k) {
    std::string t = "t" + std::to_string(k);
    covers.push_back({names.back(), t});
    names.push_back(t);
  }
  Poset L = Poset::build(names, covers);
  std::vector<int> lab(static_cast<size_t>(top.size()), L.index_checked("c"));
  for (int x : tp.q())
    lab[static_cast<size_t>(x)] = L.index_checked("t" + std::to_string(rep.tdim[x]));
  return StratTruss::make(b, L, lab);
}

bool is_singularity(const TanglePresentation& tp) {
  if (is_tangle(tp).verdict != Verdict::Yes) return false;
  return tp.bundle().cone_point().has_value();
}

TanglePresentation normal_singularity_at(const TanglePresentation& tp, int x) {
  TangleReport rep = is_tangle(tp);
  check(rep.verdict == Verdict::Yes, "NotATangle", "normal singularity requires a tangle");
  TransversalCheck tc = check_transversal_at(tp, x);
  check(tc.verdict != Verdict::No, "NotATangle", "element is not transversal");
  return TanglePresentation::make(tc.cone.bundle(), tc.d, tp.m() - tc.k);
}

int complexity(const TanglePresentation& tp) { return static_cast<int>(tp.q().size()); }

CellStructure cell_structure(const TanglePresentation& tp) {
  TangleReport rep = is_tangle(tp);
  check(rep.verdict == Verdict::Yes, "NotATangle", "cell structure requires a tangle");
  auto [comp, retract] = tp.strat().compactified_with_retract();
  (void)retract;
  int n = comp.bundle().n();
  int in_q = comp.label_poset().index("0");
  std::vector<int> qbar;
  for (int e = 0; e < comp.bundle().total_size(n); ++e)
    if (comp.label_of(e) == in_q) qbar.push_back(e);
  CellStructure out;
  out.cells = comp.bundle().total_poset(n).induced(qbar);
  for (int e : qbar) {
    out.dims.push_back(comp.bundle().cell_dim(n, e));
    out.embedding.push_back(comp.bundle().pathkey(n, e));
  }
  out.cellular = is_cellular(out.cells, out.dims);
  out.euler = euler_characteristic(order_complex(out.cells));
  return out;
}

CellStructure dual_cell_structure(const TanglePresentation& tp) {
  TangleReport rep = is_tangle(tp);
  check(rep.verdict == Verdict::Yes, "NotATangle", "dual cell structure requires a tangle");
  const TrussBundle& b = tp.bundle();
  CellStructure out;
  Poset qpos = b.total_poset(b.n()).induced(tp.q());
  out.cells = qpos.opposite();
  for (int x : tp.q()) {
    out.dims.push_back(tp.m() - rep.tdim[x]);
    out.embedding.push_back(b.pathkey(b.n(), x));
  }
  out.cellular = is_cellular(out.cells, out.dims);
  out.euler = euler_characteristic(order_complex(out.cells));
  return out;
}

}  // namespace trusskit
