#include "trusskit/render.hpp"

#include <algorithm>
#include <sstream>

namespace trusskit {

namespace {

uint32_t fnv1a(const std::string& s) {
  uint32_t h = 2166136261u;
  for (unsigned char c : s) {
    h ^= c;
    h *= 16777619u;
  }
  return h;
}

std::string stratum_color(int stratum) {
  uint32_t h = fnv1a("stratum-" + std::to_string(stratum));
  int hue = static_cast<int>(h % 360);
  int light = 45 + static_cast<int>((h / 360) % 30);
  std::ostringstream os;
  os << "hsl(" << hue << ",70%," << light << "%)";
  return os.str();
}

}  // namespace

std::string render_svg(const StratTruss& st, const std::vector<int>& emphasize) {
  const TrussBundle& b = st.bundle();
  check(b.base_is_point(), "DimensionUnsupported", "rendering draws trusses only");
  check(b.n() >= 1 && b.n() <= 2, "DimensionUnsupported",
        "rendering supports n <= 2; use --slices for level dumps");
  auto bold = [&](int e) {
    return std::find(emphasize.begin(), emphasize.end(), e) != emphasize.end();
  };
  std::ostringstream svg;
  const int cell = 48;
  const Fiber& f1 = b.level(1).fibers[0];
  int width = cell * (f1.size() + 1);
  if (b.n() == 1) {
    int height = 2 * cell;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    int y = cell;
    for (int i = 0; i < f1.size(); ++i) {
      int x = cell * (i + 1);
      std::string color = stratum_color(st.stratum_of(i));
      if (f1.singular(i)) {
        svg << " <circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"" << (bold(i) ? 7 : 5)
            << "\" fill=\"" << color << "\"/>\n";
      } else {
        svg << " <line x1=\"" << (x - cell / 2 + 6) << "\" y1=\"" << y << "\" x2=\""
            << (x + cell / 2 - 6) << "\" y2=\"" << y << "\" stroke=\"" << color
            << "\" stroke-width=\"" << (bold(i) ? 6 : 3) << "\"/>\n";
      }
    }
    svg << "</svg>\n";
    return svg.str();
  }
  // n == 2
  int maxlen = 1;
  for (const auto& f : b.level(2).fibers) maxlen = std::max(maxlen, f.size());
  int height = cell * (maxlen + 1);
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  for (int i = 0; i < f1.size(); ++i) {
    int x = cell * (i + 1);
    const Fiber& f2 = b.level(2).fibers[static_cast<size_t>(i)];
    if (f1.singular(i))
      svg << " <line x1=\"" << x << "\" y1=\"" << cell / 2 << "\" x2=\"" << x << "\" y2=\""
          << (height - cell / 2) << "\" stroke=\"#888\" stroke-width=\"1\"/>\n";
    for (int j = 0; j < f2.size(); ++j) {
      int e = b.element_of(2, i, j);
      int y = height - (height * (j + 1)) / (f2.size() + 1);
      std::string color = stratum_color(st.stratum_of(e));
      int w = bold(e) ? 6 : 3;
      if (f1.singular(i) && f2.singular(j)) {
        svg << " <circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"" << (bold(e) ? 7 : 5)
            << "\" fill=\"" << color << "\"/>\n";
      } else if (f1.singular(i)) {
        svg << " <line x1=\"" << x << "\" y1=\"" << (y - cell / 3) << "\" x2=\"" << x
            << "\" y2=\"" << (y + cell / 3) << "\" stroke=\"" << color << "\" stroke-width=\""
            << w << "\"/>\n";
      } else if (f2.singular(j)) {
        svg << " <line x1=\"" << (x - cell / 2) << "\" y1=\"" << y << "\" x2=\""
            << (x + cell / 2) << "\" y2=\"" << y << "\" stroke=\"" << color
            << "\" stroke-width=\"" << w << "\"/>\n";
      } else {
        svg << " <rect x=\"" << (x - cell / 3) << "\" y=\"" << (y - cell / 3) << "\" width=\""
            << (2 * cell / 3) << "\" height=\"" << (2 * cell / 3) << "\" fill=\"" << color
            << "\" fill-opacity=\"0.35\"/>\n";
      }
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace trusskit
