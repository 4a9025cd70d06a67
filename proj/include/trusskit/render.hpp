#pragma once

#include <string>
#include <vector>

#include "trusskit/strat.hpp"

namespace trusskit {

// Deterministic SVG rendering of the classifying stratification for n <= 2.
// Level-1 singular elements sit on vertical lines at integer abscissae;
// level-2 fibers are drawn along each vertical slice. Strata are colored by
// a stable hash; elements of `emphasize` (top total indices) are drawn bold.
std::string render_svg(const StratTruss& st, const std::vector<int>& emphasize = {});

}  // namespace trusskit
