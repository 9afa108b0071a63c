#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

#include "diskgraph/geometry.hpp"
#include "diskgraph/grid.hpp"
#include "diskgraph/rng.hpp"
#include "doctest.h"

using namespace diskgraph;

TEST_CASE("origin sits in the zero cell of every level") {
  CHECK(cell_of({0, 0}, 3) == CellId{3, 0, 0});
  CHECK(cell_of({0, 0}, 0) == CellId{0, 0, 0});
  CHECK(cell_of({0, 0}, 5) == CellId{5, 0, 0});
}

TEST_CASE("parent cell agrees with direct computation one level up") {
  Rng rng(3);
  for (int i = 0; i < 20000; ++i) {
    Point p{rng.uniform(0, 300), rng.uniform(0, 300)};
    int level = static_cast<int>(rng.below(12));
    CellId c = cell_of(p, level);
    CHECK(parent_cell(c) == cell_of(p, level + 1));
    CHECK(is_ancestor_cell(cell_of(p, level + 1), c));
    CHECK(is_ancestor_cell(c, c));
  }
}

TEST_CASE("child cells tile their parent") {
  CellId parent{4, 3, 7};
  std::set<CellId> seen;
  for (int q = 0; q < 4; ++q) {
    CellId ch = child_cell(parent, q);
    CHECK(parent_cell(ch) == parent);
    CHECK(ch.level == 3);
    seen.insert(ch);
  }
  CHECK(seen.size() == 4);
}

TEST_CASE("level of radius matches the dyadic window") {
  CHECK(level_of_radius(1) == 0);
  CHECK(level_of_radius(5) == 2);
  CHECK(level_of_radius(8) == 3);
  CHECK_THROWS_AS(level_of_radius(0.5), std::invalid_argument);
  Rng rng(11);
  for (int i = 0; i < 100000; ++i) {
    double r = rng.uniform(1, 1 << 20);
    int lvl = level_of_radius(r);
    CHECK(std::ldexp(1.0, lvl) <= r);
    CHECK(r < std::ldexp(1.0, lvl + 1));
  }
}

TEST_CASE("cell diameter bounds the spread of its points") {
  Rng rng(13);
  for (int i = 0; i < 5000; ++i) {
    int level = static_cast<int>(rng.below(8));
    Point p{rng.uniform(0, 200), rng.uniform(0, 200)};
    Point q{rng.uniform(0, 200), rng.uniform(0, 200)};
    if (cell_of(p, level) == cell_of(q, level)) {
      CHECK(std::sqrt(dist2(p, q)) <= cell_diameter(level) + 1e-9);
    }
  }
}

TEST_CASE("neighborhood of size one is the cell itself") {
  CellId c{0, 5, 5};
  auto n1 = neighborhood(c, 1);
  REQUIRE(n1.size() == 1);
  CHECK(n1[0] == c);
}

TEST_CASE("five by five neighborhood spans indices three to seven") {
  auto n = neighborhood({0, 5, 5}, 5);
  CHECK(n.size() == 25);
  for (const CellId& c : n) {
    CHECK(c.level == 0);
    CHECK(c.ix >= 3);
    CHECK(c.ix <= 7);
    CHECK(c.iy >= 3);
    CHECK(c.iy <= 7);
  }
}

TEST_CASE("neighborhood clips at the coordinate axes") {
  auto n = neighborhood({0, 0, 0}, 5);
  CHECK(n.size() == 9);
  for (const CellId& c : n) {
    CHECK(c.ix >= 0);
    CHECK(c.iy >= 0);
    CHECK(c.ix <= 2);
    CHECK(c.iy <= 2);
  }
}

TEST_CASE("cone index follows the angle in fixed openings") {
  Point apex{0, 0};
  CHECK(cone_index(apex, {1, 0}, 8) == 0);
  CHECK(cone_index(apex, {0, 1}, 8) == 2);
  CHECK(cone_index(apex, {-1, -1e-9}, 23) == 11);
  for (int d : {1, 8, 23}) {
    Rng rng(17);
    for (int i = 0; i < 3000; ++i) {
      Point q{rng.uniform(-5, 5), rng.uniform(-5, 5)};
      if (q.x == 0 && q.y == 0) continue;
      int k = cone_index(apex, q, d);
      CHECK(k >= 0);
      CHECK(k < d);
      double ang = std::atan2(q.y, q.x);
      if (ang < 0) ang += 2 * 3.14159265358979323846;
      CHECK(std::abs(k - std::min<double>(d - 1, std::floor(ang * d / (2 * 3.14159265358979323846)))) <= 1);
    }
  }
}

TEST_CASE("annulus membership is low inclusive high exclusive") {
  Point apex{0, 0};
  CHECK(in_annulus(apex, {3, 0}, 2.5, 4.5));
  CHECK(in_annulus(apex, {2.5, 0}, 2.5, 4.5));
  CHECK(!in_annulus(apex, {4.5, 0}, 2.5, 4.5));
  CHECK(!in_annulus(apex, {0.5, 0}, 2.5, 4.5));
}

TEST_CASE("inner middle outer regions tile the disk of radius nine halves") {
  // Every point within 9/2 of the cell center, other than the center
  // itself, lands in exactly one of: the inner disk, one of 8 middle
  // cone-annulus sectors, or one of 23 outer cone-annulus sectors.
  Rng rng(23);
  int level = 1;
  CellId sigma{level, 4, 6};
  Point a = cell_center(sigma);
  double diam = cell_diameter(level);
  for (int i = 0; i < 100000; ++i) {
    double ang = rng.uniform(0, 2 * 3.14159265358979323846);
    double rad = rng.uniform(0, 4.5 * diam);
    Point q{a.x + rad * std::cos(ang), a.y + rad * std::sin(ang)};
    if (q.x == a.x && q.y == a.y) continue;
    int hits = 0;
    if (std::sqrt(dist2(a, q)) < diam) ++hits;
    for (int k = 0; k < 8; ++k) {
      if (cone_index(a, q, 8) == k && in_annulus(a, q, diam, 2.5 * diam)) ++hits;
    }
    for (int k = 0; k < 23; ++k) {
      if (cone_index(a, q, 23) == k && in_annulus(a, q, 2.5 * diam, 4.5 * diam)) {
        ++hits;
      }
    }
    REQUIRE(hits == (std::sqrt(dist2(a, q)) < 4.5 * diam ? 1 : 0));
  }
}

TEST_CASE("cell distance brackets the distance of member points") {
  Rng rng(29);
  for (int i = 0; i < 4000; ++i) {
    int level = static_cast<int>(rng.below(6));
    Point p{rng.uniform(0, 100), rng.uniform(0, 100)};
    Point q{rng.uniform(0, 100), rng.uniform(0, 100)};
    CellId cp = cell_of(p, level);
    CellId cq = cell_of(q, level);
    double d = std::sqrt(dist2(p, q));
    CHECK(cell_min_dist(cp, cq) <= d + 1e-9);
    CHECK(d <= cell_max_dist(cq, p) + 1e-9);
    CHECK(d <= cell_max_dist(cp, q) + 1e-9);
  }
}

TEST_CASE("cell center and membership agree") {
  Rng rng(37);
  for (int i = 0; i < 4000; ++i) {
    int level = static_cast<int>(rng.below(10));
    Point p{rng.uniform(0, 500), rng.uniform(0, 500)};
    CellId c = cell_of(p, level);
    CHECK(point_in_cell(c, p));
    CHECK(point_in_cell(c, cell_center(c)));
    CHECK(cell_of(cell_center(c), level) == c);
  }
}

TEST_CASE("site level assignment puts the radius inside the cell diameter window") {
  Rng rng(41);
  for (int i = 0; i < 10000; ++i) {
    double r = rng.uniform(1, 4000);
    int lvl = level_of_radius(r);
    CHECK(cell_diameter(lvl) <= r);
    CHECK(r < 2 * cell_diameter(lvl));
  }
}
