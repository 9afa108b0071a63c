#include "diskgraph/geometry.hpp"

#include <algorithm>
#include <limits>

namespace diskgraph {

ScaleReport normalize(std::vector<Site>& sites) {
  ScaleReport rep;
  if (sites.empty()) return rep;
  double minx = std::numeric_limits<double>::infinity();
  double miny = minx;
  double minr = minx;
  for (const Site& s : sites) {
    minx = std::min(minx, s.center.x);
    miny = std::min(miny, s.center.y);
    minr = std::min(minr, s.radius);
  }
  if (minr <= 0.0) throw std::invalid_argument("normalize: radii must be positive");
  rep.translate_x = -minx;
  rep.translate_y = -miny;
  rep.scale = 1.0 / minr;
  for (Site& s : sites) {
    // Dividing keeps every radius >= 1 exactly (the smallest becomes 1.0),
    // which downstream level assignment relies on.
    s.center.x = (s.center.x - minx) / minr;
    s.center.y = (s.center.y - miny) / minr;
    s.radius /= minr;
  }
  return rep;
}

}  // namespace diskgraph
