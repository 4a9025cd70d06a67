#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "trusskit/errors.hpp"

namespace trusskit {

enum class ClosureMode { Down, Up, StrictDown, StrictUp };

enum class Verdict { Yes, No, Unknown };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "yes";
    case Verdict::No: return "no";
    default: return "unknown";
  }
}

// Finite poset. Stores element names, the full order relation as a dense
// matrix, and the covering relations (transitive reduction).
class Poset {
public:
  Poset() = default;

  // Public constructor: validates covers, rejects cycles, removes transitive
  // cover pairs. Elements are sorted lexicographically so derived data is
  // reproducible regardless of input order.
  static Poset build(std::vector<std::string> elements,
                     const std::vector<std::pair<std::string, std::string>>& covers);

  // Trusted constructor for derived posets (total posets, restrictions):
  // keeps the given element order. `leq` is any relation whose reflexive
  // transitive closure is antisymmetric; closure and reduction are applied.
  static Poset from_relation(std::vector<std::string> names,
                             std::vector<uint8_t> leq /* n*n, row-major */);

  static Poset point(const std::string& name = "*");
  static Poset empty() { return Poset(); }

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int i) const { return names_[static_cast<size_t>(i)]; }
  const std::vector<std::string>& names() const { return names_; }
  int index(const std::string& name) const;          // -1 if absent
  int index_checked(const std::string& name) const;  // throws UnknownElement

  bool leq(int a, int b) const { return leq_[static_cast<size_t>(a) * names_.size() + static_cast<size_t>(b)] != 0; }
  bool lt(int a, int b) const { return a != b && leq(a, b); }
  bool comparable(int a, int b) const { return leq(a, b) || leq(b, a); }
  const std::vector<std::pair<int, int>>& covers() const { return covers_; }

  std::vector<int> down_set(int x, bool strict = false) const;
  std::vector<int> up_set(int x, bool strict = false) const;

  // Induced subposet on `keep` (indices, any order; result keeps that order).
  Poset induced(const std::vector<int>& keep) const;
  Poset closure_of(int x, ClosureMode mode) const;
  Poset opposite() const;

  std::vector<int> maxima() const;
  std::vector<int> minima() const;
  std::optional<int> unique_maximum() const;  // greatest element, if any
  std::optional<int> unique_minimum() const;

  // Connected components of the comparability graph; returns component id per
  // element, components numbered by least member index.
  std::vector<int> components() const;
  int component_count() const;

  bool operator==(const Poset& o) const { return names_ == o.names_ && leq_ == o.leq_; }

private:
  std::vector<std::string> names_;
  std::vector<uint8_t> leq_;
  std::vector<std::pair<int, int>> covers_;

  void derive_covers();
};

// Monotone map between posets, by target index per source element.
struct PosetMap {
  Poset source;
  Poset target;
  std::vector<int> assignment;

  static PosetMap make(Poset source, Poset target, std::vector<int> assignment);
  int operator()(int i) const { return assignment[static_cast<size_t>(i)]; }
};

// Connected-component splitting of a monotone map f : P -> L. `strata` is the
// entrance-path poset E; char_map : P -> E is characteristic, cons : E -> L is
// conservative, and cons ∘ char = f.
struct CcSplit {
  Poset strata;
  PosetMap char_map;
  PosetMap cons;
  std::vector<int> stratum_of;  // = char_map.assignment
};

CcSplit cc_split(const Poset& P, const Poset& L, const std::vector<int>& f);

// All chains of P, grouped by dimension (chain of k+1 elements = k-simplex).
struct OrderComplex {
  // simplices[d] lists d-simplices as increasing index chains.
  std::vector<std::vector<std::vector<int>>> simplices;
  int dim() const { return static_cast<int>(simplices.size()) - 1; }
  long long count(int d) const {
    return d >= 0 && d < static_cast<int>(simplices.size())
               ? static_cast<long long>(simplices[static_cast<size_t>(d)].size())
               : 0;
  }
};

OrderComplex order_complex(const Poset& P);
long long euler_characteristic(const OrderComplex& K);

// Independent oracle: Euler characteristic of |order_complex(P)| via the
// Moebius function of P with adjoined bottom/top. Test cross-check only.
long long euler_characteristic_moebius(const Poset& P);

// Exact recognition for d <= 2 (spheres) resp. d <= 2 (disks); Unknown above.
Verdict recognize_sphere(const Poset& P, int d);
Verdict recognize_disk(const Poset& P, int d);

// Cellularity: every strict upper closure of x is a sphere of dimension
// with_dim(x) - 1. Unknown propagates from sphere recognition.
Verdict is_cellular(const Poset& P, const std::vector<int>& with_dim);

// Isomorphism of labeled posets; labels must match exactly under the iso.
// Brute force with label pruning, intended for link-sized posets only.
bool isomorphic_labeled(const Poset& P, const std::vector<int>& plab,
                        const Poset& Q, const std::vector<int>& qlab);

}  // namespace trusskit
