#pragma once

#include <map>
#include <string>
#include <vector>

#include "trusskit/explore.hpp"
#include "trusskit/tangle.hpp"

namespace trusskit {
namespace fixtures {

// Builders for 2- and 3-level trusses from slice data. Generating pairs are
// closed on construction; everything is validated by TrussBundle::make.

TrussBundle truss2(const std::string& l1, const std::vector<std::string>& fibers,
                   const std::map<std::pair<int, int>, std::vector<std::pair<int, int>>>& bordisms);

// One time-slice of a 3-truss: its own 2-level structure.
struct Slice {
  std::string l2;
  std::vector<std::string> l3;
  // vertical bordisms keyed by l2 cover (p, q), as generating pairs
  std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> vertical;
};

// Bordism data across one L1 cover (a -> b).
struct Step {
  std::vector<std::pair<int, int>> l2;  // generating pairs
  // l3 generating pairs keyed by (l2 position in slice a, l2 position in b)
  std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> l3;
};

TrussBundle truss3(const std::string& l1, const std::vector<Slice>& slices,
                   const std::map<std::pair<int, int>, Step>& steps);

// The canonical fixture catalog.
TanglePresentation pt1();      // 0-tangle point singularity in dim 1
TanglePresentation pt2();      // 0-tangle point singularity in dim 2
TanglePresentation strand();   // id_1 (1-tangle identity)
TanglePresentation cap();      // the A1 cap
TanglePresentation cup();      // the A1 cup
TanglePresentation circle();   // 1-tangle circle (two caps composed)
TanglePresentation bifur();    // non-example: bifurcating tangle line
TanglePresentation sheet();    // id over one strand in dim 3 (2-tangle)
TanglePresentation wiggle2();  // the double-wiggle 2-singularity in dim 3
TanglePresentation uturn_ng();  // non-generic 1-singularity in dim 3
TanglePresentation uturn_gen();  // generic 1-singularity in dim 3
TanglePresentation braid();    // the braid coherence (1-tangle 3-truss path)
TanglePresentation empty1();   // the empty 1-tangle in dim 2 (id_0)

// Bundle fixtures.
TangleBundle cap_creation();   // special CAP, generic empty: fails fiber/surjectivity checks
Perturbation uturn_perturbation();  // non-generic u-turn ~> generic u-turn

}  // namespace fixtures
}  // namespace trusskit
