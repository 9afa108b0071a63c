#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <functional>
#include <vector>

#include "diskgraph/geometry.hpp"

namespace diskgraph {

// Hierarchical grid over the first quadrant. A level-i cell has *diameter*
// 2^i in input coordinates. Index arithmetic runs in a frame scaled by
// sqrt(2), where the same cell is an axis-aligned square of integer side
// 2^i anchored at the origin; cells are half-open on both axes. Distances,
// radii and region geometry always stay in input coordinates.
inline constexpr double kGridScale = 1.4142135623730951;  // sqrt(2)

struct CellId {
  std::int32_t level = 0;
  std::int64_t ix = 0;
  std::int64_t iy = 0;

  friend auto operator<=>(const CellId&, const CellId&) = default;
};

struct CellIdHash {
  std::size_t operator()(const CellId& c) const {
    std::uint64_t h = static_cast<std::uint64_t>(c.level) * 0x9e3779b97f4a7c15ULL;
    h ^= static_cast<std::uint64_t>(c.ix) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= static_cast<std::uint64_t>(c.iy) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

// Cell of the grid at `level` containing p. Requires p.x, p.y >= 0.
CellId cell_of(const Point& p, std::int32_t level);

// The unique i with 2^i <= r < 2^{i+1}. Requires r >= 1.
std::int32_t level_of_radius(double r);

inline CellId parent_cell(const CellId& c) {
  return CellId{c.level + 1, c.ix >> 1, c.iy >> 1};
}

inline CellId child_cell(const CellId& c, int quadrant) {  // 0..3 = (xbit | ybit<<1)
  return CellId{c.level - 1, (c.ix << 1) | (quadrant & 1), (c.iy << 1) | (quadrant >> 1)};
}

inline bool is_ancestor_cell(const CellId& anc, const CellId& desc) {
  if (anc.level < desc.level) return false;
  std::int32_t d = anc.level - desc.level;
  if (d >= 63) return true;
  return (desc.ix >> d) == anc.ix && (desc.iy >> d) == anc.iy;
}

// Cell diameter in input coordinates (= its side length in the scaled frame).
inline double cell_diameter(std::int32_t level) { return std::ldexp(1.0, level); }
inline double cell_diameter(const CellId& c) { return cell_diameter(c.level); }

// Center a(sigma) of the cell, in input coordinates.
Point cell_center(const CellId& c);

// Smallest input-coordinate distance between any point of cell a and any
// point of cell b (0 if they touch or overlap). Cells may differ in level.
double cell_min_dist(const CellId& a, const CellId& b);

// Largest input-coordinate distance from p to a point of the cell (attained
// at a corner).
double cell_max_dist(const CellId& c, const Point& p);

bool point_in_cell(const CellId& c, const Point& p);

// The k x k block of same-level cells centered on c (k odd), clipped to
// non-negative indices. Row-major order, deterministic.
std::vector<CellId> neighborhood(const CellId& c, int k);

// Index in [0, d) of the cone with apex `apex` containing q. Cones of angle
// 2*pi/d, cone 0 starting at the positive x direction. Throws if q == apex;
// callers route apex-coincident points to the inner region themselves.
int cone_index(const Point& apex, const Point& q, int d);

// rin <= dist(apex, q) < rout.
bool in_annulus(const Point& apex, const Point& q, double rin, double rout);

}  // namespace diskgraph
