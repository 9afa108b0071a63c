#include "diskgraph/grid.hpp"

#include <algorithm>
#include <cassert>
#include <numbers>
#include <stdexcept>

namespace diskgraph {

CellId cell_of(const Point& p, std::int32_t level) {
  if (p.x < 0.0 || p.y < 0.0) throw std::invalid_argument("cell_of: negative coordinate");
  // ldexp by -level divides by an exact power of two, so parent/child index
  // arithmetic agrees exactly with recomputation at the coarser level.
  double sx = std::ldexp(p.x * kGridScale, -level);
  double sy = std::ldexp(p.y * kGridScale, -level);
  return CellId{level, static_cast<std::int64_t>(std::floor(sx)),
                static_cast<std::int64_t>(std::floor(sy))};
}

std::int32_t level_of_radius(double r) {
  if (!(r >= 1.0)) throw std::invalid_argument("level_of_radius: radius must be >= 1");
  int e = 0;
  double m = std::frexp(r, &e);  // r = m * 2^e, m in [0.5, 1)
  (void)m;
  return e - 1;  // 2^{e-1} <= r < 2^e
}

Point cell_center(const CellId& c) {
  double side = std::ldexp(1.0, c.level);
  double sx = (static_cast<double>(c.ix) + 0.5) * side;
  double sy = (static_cast<double>(c.iy) + 0.5) * side;
  return Point{sx / kGridScale, sy / kGridScale};
}

namespace {

// Axis gap between [a0,a1) and [b0,b1): 0 when they overlap.
double interval_gap(double a0, double a1, double b0, double b1) {
  if (a1 < b0) return b0 - a1;
  if (b1 < a0) return a0 - b1;
  return 0.0;
}

}  // namespace

double cell_min_dist(const CellId& a, const CellId& b) {
  double sa = std::ldexp(1.0, a.level), sb = std::ldexp(1.0, b.level);
  double ax0 = a.ix * sa, ax1 = ax0 + sa, ay0 = a.iy * sa, ay1 = ay0 + sa;
  double bx0 = b.ix * sb, bx1 = bx0 + sb, by0 = b.iy * sb, by1 = by0 + sb;
  double gx = interval_gap(ax0, ax1, bx0, bx1);
  double gy = interval_gap(ay0, ay1, by0, by1);
  return std::sqrt(gx * gx + gy * gy) / kGridScale;
}

double cell_max_dist(const CellId& c, const Point& p) {
  double side = std::ldexp(1.0, c.level);
  double px = p.x * kGridScale, py = p.y * kGridScale;
  double x0 = c.ix * side, y0 = c.iy * side;
  double dx = std::max(std::abs(px - x0), std::abs(px - (x0 + side)));
  double dy = std::max(std::abs(py - y0), std::abs(py - (y0 + side)));
  return std::sqrt(dx * dx + dy * dy) / kGridScale;
}

bool point_in_cell(const CellId& c, const Point& p) {
  if (p.x < 0.0 || p.y < 0.0) return false;
  CellId got = cell_of(p, c.level);
  return got.ix == c.ix && got.iy == c.iy;
}

std::vector<CellId> neighborhood(const CellId& c, int k) {
  assert(k % 2 == 1 && k >= 1);
  int h = k / 2;
  std::vector<CellId> out;
  out.reserve(static_cast<std::size_t>(k) * k);
  for (std::int64_t dy = -h; dy <= h; ++dy) {
    for (std::int64_t dx = -h; dx <= h; ++dx) {
      std::int64_t ix = c.ix + dx, iy = c.iy + dy;
      if (ix < 0 || iy < 0) continue;
      out.push_back(CellId{c.level, ix, iy});
    }
  }
  return out;
}

int cone_index(const Point& apex, const Point& q, int d) {
  assert(d >= 1);
  if (q.x == apex.x && q.y == apex.y) {
    throw std::invalid_argument("cone_index: q coincides with the apex");
  }
  double ang = std::atan2(q.y - apex.y, q.x - apex.x);
  if (ang < 0.0) ang += 2.0 * std::numbers::pi;
  int k = static_cast<int>(std::floor(ang * d / (2.0 * std::numbers::pi)));
  return std::clamp(k, 0, d - 1);
}

bool in_annulus(const Point& apex, const Point& q, double rin, double rout) {
  double d2 = dist2(apex, q);
  return rin * rin <= d2 && d2 < rout * rout;
}

}  // namespace diskgraph
