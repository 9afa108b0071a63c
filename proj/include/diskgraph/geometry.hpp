#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace diskgraph {

using SiteId = std::int64_t;

struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline double dist2(const Point& a, const Point& b) {
  double dx = a.x - b.x, dy = a.y - b.y;
  return dx * dx + dy * dy;
}

struct Site {
  SiteId id = -1;
  Point center;
  double radius = 1.0;
};

// Edge test for disk graphs: touching disks count as adjacent.
inline bool disks_intersect(const Site& a, const Site& b) {
  double r = a.radius + b.radius;
  return dist2(a.center, b.center) <= r * r;
}

// Affine map applied by normalize(): out = (in + translate) * scale,
// radii multiplied by scale. Connectivity is invariant under it.
struct ScaleReport {
  double translate_x = 0.0;
  double translate_y = 0.0;
  double scale = 1.0;
};

// Shifts centers so min x = min y = 0, then rescales centers and radii
// uniformly so the smallest radius becomes 1. Empty input: identity.
ScaleReport normalize(std::vector<Site>& sites);

}  // namespace diskgraph
