#include "trusskit/poset.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace trusskit {

namespace {

// Reflexive-transitive closure in place; returns false on an antisymmetry
// violation (a cycle through distinct elements).
bool close_relation(std::vector<uint8_t>& leq, int n) {
  for (int i = 0; i < n; ++i) leq[static_cast<size_t>(i) * n + i] = 1;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) {
      if (!leq[static_cast<size_t>(i) * n + k]) continue;
      for (int j = 0; j < n; ++j)
        if (leq[static_cast<size_t>(k) * n + j]) leq[static_cast<size_t>(i) * n + j] = 1;
    }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (leq[static_cast<size_t>(i) * n + j] && leq[static_cast<size_t>(j) * n + i]) return false;
  return true;
}

}  // namespace

void Poset::derive_covers() {
  covers_.clear();
  int n = size();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a == b || !leq(a, b)) continue;
      bool direct = true;
      for (int z = 0; z < n && direct; ++z)
        if (z != a && z != b && leq(a, z) && leq(z, b)) direct = false;
      if (direct) covers_.emplace_back(a, b);
    }
}

Poset Poset::build(std::vector<std::string> elements,
                   const std::vector<std::pair<std::string, std::string>>& covers) {
  std::sort(elements.begin(), elements.end());
  check(std::adjacent_find(elements.begin(), elements.end()) == elements.end(),
        "ValidationError", "duplicate element name");
  Poset p;
  p.names_ = std::move(elements);
  int n = p.size();
  p.leq_.assign(static_cast<size_t>(n) * n, 0);
  for (const auto& [a, b] : covers) {
    int ia = p.index(a), ib = p.index(b);
    check(ia >= 0, "UnknownElement", "cover references unknown element '" + a + "'");
    check(ib >= 0, "UnknownElement", "cover references unknown element '" + b + "'");
    check(ia != ib, "CycleDetected", "self-loop on '" + a + "'");
    p.leq_[static_cast<size_t>(ia) * n + ib] = 1;
  }
  check(close_relation(p.leq_, n), "CycleDetected", "cover relation has a cycle");
  p.derive_covers();
  return p;
}

Poset Poset::from_relation(std::vector<std::string> names, std::vector<uint8_t> leq) {
  Poset p;
  p.names_ = std::move(names);
  p.leq_ = std::move(leq);
  check(close_relation(p.leq_, p.size()), "CycleDetected", "relation has a cycle");
  p.derive_covers();
  return p;
}

Poset Poset::point(const std::string& name) {
  return Poset::build({name}, {});
}

int Poset::index(const std::string& name) const {
  for (int i = 0; i < size(); ++i)
    if (names_[static_cast<size_t>(i)] == name) return i;
  return -1;
}

int Poset::index_checked(const std::string& name) const {
  int i = index(name);
  check(i >= 0, "UnknownElement", "no element named '" + name + "'");
  return i;
}

std::vector<int> Poset::down_set(int x, bool strict) const {
  std::vector<int> out;
  for (int y = 0; y < size(); ++y)
    if (leq(y, x) && (!strict || y != x)) out.push_back(y);
  return out;
}

std::vector<int> Poset::up_set(int x, bool strict) const {
  std::vector<int> out;
  for (int y = 0; y < size(); ++y)
    if (leq(x, y) && (!strict || y != x)) out.push_back(y);
  return out;
}

Poset Poset::induced(const std::vector<int>& keep) const {
  std::vector<std::string> names;
  names.reserve(keep.size());
  for (int k : keep) names.push_back(name(k));
  int m = static_cast<int>(keep.size());
  std::vector<uint8_t> rel(static_cast<size_t>(m) * m, 0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      rel[static_cast<size_t>(i) * m + j] = leq(keep[static_cast<size_t>(i)], keep[static_cast<size_t>(j)]) ? 1 : 0;
  return from_relation(std::move(names), std::move(rel));
}

Poset Poset::closure_of(int x, ClosureMode mode) const {
  check(x >= 0 && x < size(), "UnknownElement", "element index out of range");
  switch (mode) {
    case ClosureMode::Down: return induced(down_set(x));
    case ClosureMode::Up: return induced(up_set(x));
    case ClosureMode::StrictDown: return induced(down_set(x, true));
    default: return induced(up_set(x, true));
  }
}

Poset Poset::opposite() const {
  int n = size();
  std::vector<uint8_t> rel(static_cast<size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      rel[static_cast<size_t>(i) * n + j] = leq(j, i) ? 1 : 0;
  return from_relation(names_, std::move(rel));
}

std::vector<int> Poset::maxima() const {
  std::vector<int> out;
  for (int x = 0; x < size(); ++x) {
    bool maximal = true;
    for (int y = 0; y < size() && maximal; ++y)
      if (y != x && leq(x, y)) maximal = false;
    if (maximal) out.push_back(x);
  }
  return out;
}

std::vector<int> Poset::minima() const {
  std::vector<int> out;
  for (int x = 0; x < size(); ++x) {
    bool minimal = true;
    for (int y = 0; y < size() && minimal; ++y)
      if (y != x && leq(y, x)) minimal = false;
    if (minimal) out.push_back(x);
  }
  return out;
}

std::optional<int> Poset::unique_maximum() const {
  auto m = maxima();
  if (m.size() == 1 && size() > 0) return m[0];
  return std::nullopt;
}

std::optional<int> Poset::unique_minimum() const {
  auto m = minima();
  if (m.size() == 1 && size() > 0) return m[0];
  return std::nullopt;
}

std::vector<int> Poset::components() const {
  int n = size();
  std::vector<int> comp(static_cast<size_t>(n), -1);
  int next = 0;
  for (int s = 0; s < n; ++s) {
    if (comp[static_cast<size_t>(s)] >= 0) continue;
    std::vector<int> stack{s};
    comp[static_cast<size_t>(s)] = next;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int y = 0; y < n; ++y)
        if (comp[static_cast<size_t>(y)] < 0 && comparable(x, y)) {
          comp[static_cast<size_t>(y)] = next;
          stack.push_back(y);
        }
    }
    ++next;
  }
  return comp;
}

int Poset::component_count() const {
  auto c = components();
  return c.empty() ? 0 : 1 + *std::max_element(c.begin(), c.end());
}

PosetMap PosetMap::make(Poset source, Poset target, std::vector<int> assignment) {
  check(assignment.size() == static_cast<size_t>(source.size()), "ValidationError",
        "assignment size mismatch");
  for (int v : assignment)
    check(v >= 0 && v < target.size(), "UnknownElement", "assignment target out of range");
  for (auto [a, b] : source.covers())
    check(target.leq(assignment[static_cast<size_t>(a)], assignment[static_cast<size_t>(b)]),
          "NotMonotone", "map does not preserve order on cover " + source.name(a) + " -> " + source.name(b));
  return PosetMap{std::move(source), std::move(target), std::move(assignment)};
}

CcSplit cc_split(const Poset& P, const Poset& L, const std::vector<int>& f) {
  PosetMap fm = PosetMap::make(P, L, f);  // monotonicity check
  int n = P.size();
  // Components of label-constant subposets.
  std::vector<int> stratum(static_cast<size_t>(n), -1);
  int next = 0;
  for (int s = 0; s < n; ++s) {
    if (stratum[static_cast<size_t>(s)] >= 0) continue;
    std::vector<int> stack{s};
    stratum[static_cast<size_t>(s)] = next;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int y = 0; y < n; ++y)
        if (stratum[static_cast<size_t>(y)] < 0 && f[static_cast<size_t>(y)] == f[static_cast<size_t>(x)] &&
            P.comparable(x, y)) {
          stratum[static_cast<size_t>(y)] = next;
          stack.push_back(y);
        }
    }
    ++next;
  }
  // Entrance-path poset on strata: generated by elementwise order.
  std::vector<uint8_t> rel(static_cast<size_t>(next) * next, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (P.leq(a, b))
        rel[static_cast<size_t>(stratum[static_cast<size_t>(a)]) * next + stratum[static_cast<size_t>(b)]] = 1;
  std::vector<std::string> snames;
  snames.reserve(static_cast<size_t>(next));
  for (int i = 0; i < next; ++i) snames.push_back("s" + std::to_string(i));
  Poset E = Poset::from_relation(std::move(snames), std::move(rel));
  std::vector<int> cons(static_cast<size_t>(next), 0);
  for (int x = 0; x < n; ++x) cons[static_cast<size_t>(stratum[static_cast<size_t>(x)])] = f[static_cast<size_t>(x)];
  CcSplit out{E, PosetMap::make(P, E, stratum), PosetMap::make(E, L, cons), stratum};
  return out;
}

OrderComplex order_complex(const Poset& P) {
  OrderComplex K;
  int n = P.size();
  if (n == 0) return K;
  // Grow chains by appending strictly larger elements.
  std::vector<std::vector<int>> current;
  for (int i = 0; i < n; ++i) current.push_back({i});
  K.simplices.push_back(current);
  while (true) {
    std::vector<std::vector<int>> longer;
    for (const auto& c : K.simplices.back()) {
      int last = c.back();
      for (int y = 0; y < n; ++y) {
        if (y == last || !P.leq(last, y)) continue;
        auto ext = c;
        ext.push_back(y);
        longer.push_back(std::move(ext));
      }
    }
    if (longer.empty()) break;
    K.simplices.push_back(std::move(longer));
  }
  return K;
}

long long euler_characteristic(const OrderComplex& K) {
  long long chi = 0;
  for (size_t d = 0; d < K.simplices.size(); ++d)
    chi += (d % 2 == 0 ? 1 : -1) * static_cast<long long>(K.simplices[d].size());
  return chi;
}

long long euler_characteristic_moebius(const Poset& P) {
  // chi(|order complex of P|) = 1 + mu(0^, 1^) in P with adjoined bounds.
  int n = P.size();
  int bot = n, top = n + 1, m = n + 2;
  auto leq = [&](int a, int b) {
    if (a == bot || b == top) return true;
    if (a == top) return b == top;
    if (b == bot) return a == bot;
    return P.leq(a, b);
  };
  // mu(bot, z) by recursion over a linear extension.
  std::vector<int> order(static_cast<size_t>(m));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (a == b) return false;
    if (leq(a, b) && !leq(b, a)) return true;
    return false;
  });
  // Straightforward O(m^3) Moebius computation.
  std::map<int, long long> mu;
  std::vector<int> topo;
  {
    std::vector<int> remaining(static_cast<size_t>(m));
    std::iota(remaining.begin(), remaining.end(), 0);
    std::vector<bool> placed(static_cast<size_t>(m), false);
    for (int step = 0; step < m; ++step) {
      for (int z = 0; z < m; ++z) {
        if (placed[static_cast<size_t>(z)]) continue;
        bool ready = true;
        for (int w = 0; w < m && ready; ++w)
          if (w != z && !placed[static_cast<size_t>(w)] && leq(w, z)) ready = false;
        if (ready) {
          topo.push_back(z);
          placed[static_cast<size_t>(z)] = true;
          break;
        }
      }
    }
  }
  for (int z : topo) {
    if (!leq(bot, z)) continue;
    if (z == bot) {
      mu[z] = 1;
      continue;
    }
    long long s = 0;
    for (int w : topo)
      if (w != z && leq(bot, w) && leq(w, z) && mu.count(w)) s += mu[w];
    mu[z] = -s;
  }
  return 1 + mu[top];
}

namespace {

// Comparability-graph data for d<=2 recognition.
struct Graph1 {
  int n = 0;
  std::vector<std::pair<int, int>> edges;             // 2-chains
  std::vector<std::vector<int>> tri;                  // 3-chains
  std::vector<int> degree;
  bool has_4chain = false;
};

Graph1 complex_graph(const Poset& P) {
  Graph1 g;
  g.n = P.size();
  g.degree.assign(static_cast<size_t>(g.n), 0);
  OrderComplex K = order_complex(P);
  if (K.dim() >= 1)
    for (const auto& e : K.simplices[1]) {
      g.edges.emplace_back(e[0], e[1]);
      g.degree[static_cast<size_t>(e[0])]++;
      g.degree[static_cast<size_t>(e[1])]++;
    }
  if (K.dim() >= 2) g.tri = K.simplices[2];
  g.has_4chain = K.dim() >= 3;
  return g;
}

bool connected_complex(const Poset& P) {
  return P.size() > 0 && P.component_count() == 1;
}

// Is the simple graph on `verts` with `edges` a single cycle?
bool is_single_cycle(const std::vector<int>& verts, const std::vector<std::pair<int, int>>& edges) {
  if (verts.size() < 3 || edges.size() != verts.size()) return false;
  std::map<int, int> deg;
  for (int v : verts) deg[v] = 0;
  for (auto [a, b] : edges) {
    if (!deg.count(a) || !deg.count(b)) return false;
    deg[a]++;
    deg[b]++;
  }
  for (auto& [v, d] : deg)
    if (d != 2) return false;
  // connected?
  std::set<int> seen{verts[0]};
  std::vector<int> stack{verts[0]};
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (auto [a, b] : edges) {
      int y = -1;
      if (a == x) y = b;
      if (b == x) y = a;
      if (y >= 0 && !seen.count(y)) {
        seen.insert(y);
        stack.push_back(y);
      }
    }
  }
  return seen.size() == verts.size();
}

// Single open path (arc): degrees 1,1,2,...; connected; at least one vertex.
bool is_single_arc(const std::vector<int>& verts, const std::vector<std::pair<int, int>>& edges) {
  if (verts.empty()) return false;
  if (verts.size() == 1) return edges.empty();
  if (edges.size() != verts.size() - 1) return false;
  std::map<int, int> deg;
  for (int v : verts) deg[v] = 0;
  for (auto [a, b] : edges) {
    if (!deg.count(a) || !deg.count(b)) return false;
    deg[a]++;
    deg[b]++;
  }
  int ones = 0;
  for (auto& [v, d] : deg) {
    if (d == 1)
      ones++;
    else if (d != 2)
      return false;
  }
  if (ones != 2) return false;
  std::set<int> seen{verts[0]};
  std::vector<int> stack{verts[0]};
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (auto [a, b] : edges) {
      int y = -1;
      if (a == x) y = b;
      if (b == x) y = a;
      if (y >= 0 && !seen.count(y)) {
        seen.insert(y);
        stack.push_back(y);
      }
    }
  }
  return seen.size() == verts.size();
}

}  // namespace

Verdict recognize_sphere(const Poset& P, int d) {
  if (d < -1) return Verdict::No;
  if (d == -1) return P.size() == 0 ? Verdict::Yes : Verdict::No;
  if (P.size() == 0) return Verdict::No;
  if (d == 0) {
    return (P.size() == 2 && !P.comparable(0, 1)) ? Verdict::Yes : Verdict::No;
  }
  Graph1 g = complex_graph(P);
  if (d == 1) {
    if (!g.tri.empty() || g.has_4chain) return Verdict::No;
    if (!connected_complex(P)) return Verdict::No;
    for (int v = 0; v < g.n; ++v)
      if (g.degree[static_cast<size_t>(v)] != 2) return Verdict::No;
    std::vector<int> verts(static_cast<size_t>(g.n));
    std::iota(verts.begin(), verts.end(), 0);
    return is_single_cycle(verts, g.edges) ? Verdict::Yes : Verdict::No;
  }
  if (d == 2) {
    if (g.has_4chain) return Verdict::No;
    if (g.tri.empty()) return Verdict::No;
    if (!connected_complex(P)) return Verdict::No;
    // pure 2-dimensional: every vertex and edge lies in a triangle
    std::set<std::pair<int, int>> edge_in;
    std::set<int> vert_in;
    std::map<std::pair<int, int>, int> tri_count;
    for (const auto& t : g.tri) {
      vert_in.insert(t.begin(), t.end());
      tri_count[{t[0], t[1]}]++;
      tri_count[{t[0], t[2]}]++;
      tri_count[{t[1], t[2]}]++;
    }
    if (static_cast<int>(vert_in.size()) != g.n) return Verdict::No;
    for (auto [a, b] : g.edges)
      if (tri_count[{a, b}] != 2) return Verdict::No;
    // vertex links are single cycles
    for (int v = 0; v < g.n; ++v) {
      std::vector<int> lverts;
      std::vector<std::pair<int, int>> ledges;
      for (auto [a, b] : g.edges) {
        if (a == v) lverts.push_back(b);
        if (b == v) lverts.push_back(a);
      }
      for (const auto& t : g.tri) {
        if (t[0] == v) ledges.emplace_back(t[1], t[2]);
        else if (t[1] == v) ledges.emplace_back(t[0], t[2]);
        else if (t[2] == v) ledges.emplace_back(t[0], t[1]);
      }
      if (!is_single_cycle(lverts, ledges)) return Verdict::No;
    }
    long long chi = static_cast<long long>(g.n) - static_cast<long long>(g.edges.size()) +
                    static_cast<long long>(g.tri.size());
    return chi == 2 ? Verdict::Yes : Verdict::No;
  }
  return Verdict::Unknown;
}

Verdict recognize_disk(const Poset& P, int d) {
  if (d < 0) return Verdict::No;
  if (P.size() == 0) return Verdict::No;
  if (d == 0) {
    return P.size() == 1 ? Verdict::Yes : Verdict::No;
  }
  Graph1 g = complex_graph(P);
  if (d == 1) {
    if (!g.tri.empty() || g.has_4chain) return Verdict::No;
    std::vector<int> verts(static_cast<size_t>(g.n));
    std::iota(verts.begin(), verts.end(), 0);
    return is_single_arc(verts, g.edges) && g.n >= 2 ? Verdict::Yes : Verdict::No;
  }
  if (d == 2) {
    if (g.has_4chain || g.tri.empty()) return Verdict::No;
    if (!connected_complex(P)) return Verdict::No;
    std::set<int> vert_in;
    std::map<std::pair<int, int>, int> tri_count;
    for (const auto& t : g.tri) {
      vert_in.insert(t.begin(), t.end());
      tri_count[{t[0], t[1]}]++;
      tri_count[{t[0], t[2]}]++;
      tri_count[{t[1], t[2]}]++;
    }
    if (static_cast<int>(vert_in.size()) != g.n) return Verdict::No;
    std::vector<std::pair<int, int>> boundary;
    for (auto [a, b] : g.edges) {
      int c = tri_count[{a, b}];
      if (c == 1)
        boundary.emplace_back(a, b);
      else if (c != 2)
        return Verdict::No;
    }
    if (boundary.empty()) return Verdict::No;
    // boundary forms a single cycle
    std::set<int> bverts;
    for (auto [a, b] : boundary) {
      bverts.insert(a);
      bverts.insert(b);
    }
    if (!is_single_cycle(std::vector<int>(bverts.begin(), bverts.end()), boundary)) return Verdict::No;
    // vertex links: interior -> cycle, boundary -> arc
    for (int v = 0; v < g.n; ++v) {
      std::vector<int> lverts;
      std::vector<std::pair<int, int>> ledges;
      for (auto [a, b] : g.edges) {
        if (a == v) lverts.push_back(b);
        if (b == v) lverts.push_back(a);
      }
      for (const auto& t : g.tri) {
        if (t[0] == v) ledges.emplace_back(t[1], t[2]);
        else if (t[1] == v) ledges.emplace_back(t[0], t[2]);
        else if (t[2] == v) ledges.emplace_back(t[0], t[1]);
      }
      bool on_boundary = bverts.count(v) > 0;
      if (on_boundary ? !is_single_arc(lverts, ledges) : !is_single_cycle(lverts, ledges))
        return Verdict::No;
    }
    long long chi = static_cast<long long>(g.n) - static_cast<long long>(g.edges.size()) +
                    static_cast<long long>(g.tri.size());
    return chi == 1 ? Verdict::Yes : Verdict::No;
  }
  return Verdict::Unknown;
}

Verdict is_cellular(const Poset& P, const std::vector<int>& with_dim) {
  check(with_dim.size() == static_cast<size_t>(P.size()), "ValidationError",
        "with_dim size mismatch");
  bool unknown = false;
  for (int x = 0; x < P.size(); ++x) {
    Poset up = P.closure_of(x, ClosureMode::StrictUp);
    Verdict v = recognize_sphere(up, with_dim[static_cast<size_t>(x)] - 1);
    if (v == Verdict::No) return Verdict::No;
    if (v == Verdict::Unknown) unknown = true;
  }
  return unknown ? Verdict::Unknown : Verdict::Yes;
}

namespace {

bool iso_search(const Poset& P, const std::vector<int>& plab, const Poset& Q,
                const std::vector<int>& qlab, std::vector<int>& map, std::vector<bool>& used,
                int next) {
  int n = P.size();
  if (next == n) return true;
  for (int cand = 0; cand < n; ++cand) {
    if (used[static_cast<size_t>(cand)]) continue;
    if (plab[static_cast<size_t>(next)] != qlab[static_cast<size_t>(cand)]) continue;
    bool ok = true;
    for (int prev = 0; prev < next && ok; ++prev) {
      if (P.leq(prev, next) != Q.leq(map[static_cast<size_t>(prev)], cand)) ok = false;
      if (P.leq(next, prev) != Q.leq(cand, map[static_cast<size_t>(prev)])) ok = false;
    }
    if (!ok) continue;
    map[static_cast<size_t>(next)] = cand;
    used[static_cast<size_t>(cand)] = true;
    if (iso_search(P, plab, Q, qlab, map, used, next + 1)) return true;
    used[static_cast<size_t>(cand)] = false;
  }
  return false;
}

}  // namespace

bool isomorphic_labeled(const Poset& P, const std::vector<int>& plab, const Poset& Q,
                        const std::vector<int>& qlab) {
  if (P.size() != Q.size()) return false;
  // label multiset must agree
  auto a = plab;
  auto b = qlab;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  if (a != b) return false;
  std::vector<int> map(static_cast<size_t>(P.size()), -1);
  std::vector<bool> used(static_cast<size_t>(P.size()), false);
  return iso_search(P, plab, Q, qlab, map, used, 0);
}

}  // namespace trusskit
