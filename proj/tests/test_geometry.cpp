#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <stdexcept>
#include <vector>

#include "diskgraph/geometry.hpp"
#include "diskgraph/oracle.hpp"
#include "diskgraph/rng.hpp"
#include "doctest.h"

using namespace diskgraph;

TEST_CASE("intersection is inclusive at tangency") {
  Site a{0, {0, 0}, 1};
  Site b{1, {2, 0}, 1};
  CHECK(disks_intersect(a, b));
  Site c{2, {2.01, 0}, 1};
  CHECK(!disks_intersect(a, c));
}

TEST_CASE("containment counts as intersection") {
  Site a{0, {0, 0}, 3};
  Site b{1, {1, 1}, 0.1};
  CHECK(disks_intersect(a, b));
}

TEST_CASE("intersection is symmetric") {
  Rng rng(7);
  for (int i = 0; i < 2000; ++i) {
    Site a{0, {rng.uniform(0, 50), rng.uniform(0, 50)}, rng.uniform(0.1, 9)};
    Site b{1, {rng.uniform(0, 50), rng.uniform(0, 50)}, rng.uniform(0.1, 9)};
    CHECK(disks_intersect(a, b) == disks_intersect(b, a));
  }
}

TEST_CASE("normalize translates and rescales to unit minimum radius") {
  std::vector<Site> out{{1, {5, 5}, 2}, {2, {7, 5}, 2}};
  ScaleReport report = normalize(out);
  REQUIRE(out.size() == 2);
  CHECK(out[0].center.x == doctest::Approx(0));
  CHECK(out[0].center.y == doctest::Approx(0));
  CHECK(out[0].radius == doctest::Approx(1));
  CHECK(out[1].center.x == doctest::Approx(1));
  CHECK(out[1].center.y == doctest::Approx(0));
  CHECK(out[1].radius == doctest::Approx(1));
  CHECK(report.scale == doctest::Approx(0.5));
}

TEST_CASE("normalize leaves a lone unit disk at the origin unchanged") {
  std::vector<Site> out{{1, {0, 0}, 1}};
  ScaleReport report = normalize(out);
  REQUIRE(out.size() == 1);
  CHECK(out[0].center.x == 0);
  CHECK(out[0].center.y == 0);
  CHECK(out[0].radius == 1);
  CHECK(report.scale == 1);
}

TEST_CASE("normalize of empty input is an identity report") {
  std::vector<Site> out;
  ScaleReport report = normalize(out);
  CHECK(out.empty());
  CHECK(report.scale == 1);
  CHECK(report.translate_x == 0);
  CHECK(report.translate_y == 0);
}

TEST_CASE("normalize rejects non-positive radii") {
  std::vector<Site> zero{{1, {0, 0}, 0}};
  CHECK_THROWS_AS(normalize(zero), std::invalid_argument);
  std::vector<Site> negative{{1, {0, 0}, -2}};
  CHECK_THROWS_AS(normalize(negative), std::invalid_argument);
}

TEST_CASE("normalize preserves the full edge set") {
  Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Site> sites;
    int n = 3 + static_cast<int>(rng.below(197));
    for (int i = 0; i < n; ++i) {
      sites.push_back({i, {rng.uniform(-30, 70), rng.uniform(-30, 70)},
                       rng.uniform(0.2, 12)});
    }
    std::vector<Site> out = sites;
    normalize(out);
    REQUIRE(out.size() == sites.size());
    for (std::size_t i = 0; i < sites.size(); ++i) {
      CHECK(out[i].center.x >= 0);
      CHECK(out[i].center.y >= 0);
      CHECK(out[i].radius >= 1);
      for (std::size_t j = i + 1; j < sites.size(); ++j) {
        REQUIRE(disks_intersect(sites[i], sites[j]) ==
                disks_intersect(out[i], out[j]));
      }
    }
  }
}

TEST_CASE("normalize keeps connectivity verdicts") {
  Rng rng(47);
  std::vector<Site> sites;
  for (int i = 0; i < 60; ++i) {
    sites.push_back({i, {rng.uniform(0, 40), rng.uniform(0, 40)},
                     rng.uniform(0.3, 4)});
  }
  std::vector<Site> out = sites;
  normalize(out);
  for (int t = 0; t < 200; ++t) {
    auto a = static_cast<std::size_t>(rng.below(sites.size()));
    auto b = static_cast<std::size_t>(rng.below(sites.size()));
    REQUIRE(oracle_connected(sites, sites[a].id, sites[b].id) ==
            oracle_connected(out, out[a].id, out[b].id));
  }
}
