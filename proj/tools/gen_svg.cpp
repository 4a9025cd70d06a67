// Regenerates the golden SVG renderings under fixtures/.
#include <fstream>
#include <iostream>

#include "trusskit/fixtures.hpp"
#include "trusskit/render.hpp"

using namespace trusskit;
namespace fx = trusskit::fixtures;

int main(int argc, char** argv) {
  std::string dir = argc > 1 ? argv[1] : "fixtures";
  auto write = [&](const std::string& name, const TanglePresentation& tp) {
    std::ofstream out(dir + "/" + name + ".svg", std::ios::binary);
    std::vector<int> emph(tp.q().begin(), tp.q().end());
    out << render_svg(tp.strat(), emph);
    std::cout << name << ".svg\n";
  };
  write("pt2", fx::pt2());
  write("cap", fx::cap());
  write("strand", fx::strand());
  return 0;
}
