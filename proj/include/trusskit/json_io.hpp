#pragma once

#include <optional>
#include <string>

#include "trusskit/explore.hpp"

namespace trusskit {

// A parsed document. `kind` selects which member is engaged.
struct Document {
  std::string kind;  // poset | truss | strat | tangle | bundle | certificate
  std::optional<Poset> poset;
  std::optional<TrussBundle> truss;
  std::optional<StratTruss> strat;
  std::optional<TanglePresentation> tangle;
  std::optional<TangleBundle> bundle;  // bundle and certificate kinds
};

// Canonical serialization: fixed key order, sorted map keys, one trailing
// newline. parse(serialize(d)) == d and serialize is byte-stable.
std::string serialize(const Document& doc);
Document parse_document(const std::string& bytes);

Document doc_of(Poset p);
Document doc_of(TrussBundle t);
Document doc_of(StratTruss st);
Document doc_of(TanglePresentation tp);
Document doc_of(TangleBundle tb, bool certificate = false);

// Global size guard (env TRUSSKIT_MAX_TOTAL, default 100000 elements).
long long max_total_guard();

}  // namespace trusskit
