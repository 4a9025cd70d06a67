// Regenerates the canonical fixture documents under fixtures/.
#include <fstream>
#include <iostream>

#include "trusskit/fixtures.hpp"
#include "trusskit/json_io.hpp"

using namespace trusskit;
namespace fx = trusskit::fixtures;

int main(int argc, char** argv) {
  std::string dir = argc > 1 ? argv[1] : "fixtures";
  auto write = [&](const std::string& name, const Document& d) {
    std::ofstream out(dir + "/" + name + ".json", std::ios::binary);
    out << serialize(d);
    std::cout << name << ".json\n";
  };
  write("pt1", doc_of(fx::pt1()));
  write("pt2", doc_of(fx::pt2()));
  write("strand", doc_of(fx::strand()));
  write("cap", doc_of(fx::cap()));
  write("cup", doc_of(fx::cup()));
  write("circle", doc_of(fx::circle()));
  write("bifur", doc_of(fx::bifur()));
  write("sheet", doc_of(fx::sheet()));
  write("wiggle2", doc_of(fx::wiggle2()));
  write("uturn_ng", doc_of(fx::uturn_ng()));
  write("uturn_gen", doc_of(fx::uturn_gen()));
  write("braid", doc_of(fx::braid()));
  write("empty1", doc_of(fx::empty1()));
  write("cap_creation", doc_of(fx::cap_creation()));
  write("uturn_cert", doc_of(fx::uturn_perturbation().tangle_bundle(), true));
  return 0;
}
