#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

#include "diskgraph/mbm.hpp"
#include "diskgraph/rng.hpp"
#include "doctest.h"

using namespace diskgraph;

namespace {

// Matched pairs intersect, edges are vertex-disjoint, no unmatched pair
// intersects, and the matching is non-empty exactly when some P-B pair
// intersects.
void audit_matching(const Matching& m, const std::map<SiteId, Site>& ps,
                    const std::map<SiteId, Site>& bs) {
  auto edges = m.edges();
  REQUIRE(m.edge_count() == edges.size());
  std::set<SiteId> mp, mb;
  bool edges_sound = true;
  for (auto [pid, bid] : edges) {
    if (ps.count(pid) == 0 || bs.count(bid) == 0) edges_sound = false;
    if (!mp.insert(pid).second || !mb.insert(bid).second) edges_sound = false;
    if (edges_sound && !disks_intersect(ps.at(pid), bs.at(bid))) edges_sound = false;
  }
  REQUIRE(edges_sound);
  bool any_pair_intersects = false;
  bool maximal = true;
  for (const auto& [pid, p] : ps) {
    for (const auto& [bid, b] : bs) {
      if (!disks_intersect(p, b)) continue;
      any_pair_intersects = true;
      if (mp.count(pid) == 0 && mb.count(bid) == 0) maximal = false;
    }
  }
  REQUIRE(maximal);
  REQUIRE(m.has_edges() == any_pair_intersects);
}

void run_workload(Matching& m, SiteRegistry& reg, Rng& rng, int ops,
                  const std::function<Site(SiteId, MatchSide)>& make_site) {
  std::map<SiteId, Site> live_p, live_b;
  SiteId next = 0;
  for (int op = 0; op < ops; ++op) {
    MatchSide side = rng.next_double() < 0.5 ? MatchSide::kP : MatchSide::kB;
    auto& live = side == MatchSide::kP ? live_p : live_b;
    bool grow = live.empty() || rng.next_double() < 0.58;
    bool before = m.has_edges();
    MatchingDelta d;
    if (grow) {
      Site s = make_site(next++, side);
      reg.add(s);
      live.emplace(s.id, s);
      d = m.insert(side, s.id);
    } else {
      auto it = live.begin();
      std::advance(it, static_cast<long>(rng.below(live.size())));
      SiteId victim = it->first;
      live.erase(it);
      d = m.erase(side, victim);
      reg.remove(victim);
    }
    MatchingDelta expect =
        m.has_edges() == before
            ? MatchingDelta::kNone
            : (m.has_edges() ? MatchingDelta::kBecameNonEmpty : MatchingDelta::kBecameEmpty);
    REQUIRE(d == expect);
    audit_matching(m, live_p, live_b);
  }
}

// Uniform position inside the cell, away from its boundary.
Site site_in_cell(Rng& rng, const CellId& c, SiteId id) {
  double side = std::ldexp(1.0, c.level);
  double x = (static_cast<double>(c.ix) + rng.uniform(0.02, 0.98)) * side / kGridScale;
  double y = (static_cast<double>(c.iy) + rng.uniform(0.02, 0.98)) * side / kGridScale;
  return Site{id, {x, y}, 1.0};
}

}  // namespace

TEST_CASE("unit matching needs two distinct same-level cells") {
  SiteRegistry reg;
  CHECK_THROWS_AS(Matching::unit(&reg, CellId{1, 0, 0}, CellId{1, 0, 0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(Matching::unit(&reg, CellId{1, 0, 0}, CellId{2, 1, 0}),
                  std::invalid_argument);
}

TEST_CASE("insert with an empty opposite side stores the site unmatched") {
  SiteRegistry reg;
  reg.add(Site{1, {0.5, 0.5}, 1.0});

  Matching unit = Matching::unit(&reg, CellId{1, 0, 1}, CellId{1, 0, 0});
  CHECK(unit.insert(MatchSide::kB, 1) == MatchingDelta::kNone);
  CHECK(!unit.has_edges());
  CHECK(unit.side_size(MatchSide::kB) == 1);

  Matching gen = Matching::general(&reg);
  CHECK(gen.insert(MatchSide::kB, 1) == MatchingDelta::kNone);
  CHECK(!gen.has_edges());
}

TEST_CASE("intersecting insert matches and reports the first edge") {
  SiteRegistry reg;
  reg.add(Site{1, {0.5, 2.0}, 1.0});
  reg.add(Site{2, {0.5, 0.5}, 1.0});
  Matching m = Matching::unit(&reg, CellId{1, 0, 1}, CellId{1, 0, 0});
  CHECK(m.insert(MatchSide::kP, 1) == MatchingDelta::kNone);
  // Distance 1.5 between unit disks: they intersect, so the insert matches.
  CHECK(m.insert(MatchSide::kB, 2) == MatchingDelta::kBecameNonEmpty);
  auto edges = m.edges();
  REQUIRE(edges.size() == 1);
  CHECK(edges[0].first == 1);
  CHECK(edges[0].second == 2);
}

TEST_CASE("general matching pairs disks across the plane") {
  SiteRegistry reg;
  reg.add(Site{1, {0.0, 1.0}, 1.0});
  reg.add(Site{2, {0.0, -0.5}, 1.0});
  reg.add(Site{3, {50.0, 50.0}, 1.0});
  Matching m = Matching::general(&reg);
  CHECK(m.insert(MatchSide::kP, 1) == MatchingDelta::kNone);
  CHECK(m.insert(MatchSide::kB, 2) == MatchingDelta::kBecameNonEmpty);
  auto edges = m.edges();
  REQUIRE(edges.size() == 1);
  CHECK(edges[0] == std::pair<SiteId, SiteId>{1, 2});
  CHECK(m.insert(MatchSide::kB, 3) == MatchingDelta::kNone);
  CHECK(m.edge_count() == 1);
}

TEST_CASE("duplicate and unknown ids are rejected") {
  SiteRegistry reg;
  reg.add(Site{1, {0.5, 0.5}, 1.0});
  auto exercise = [](Matching m) {
    m.insert(MatchSide::kB, 1);
    CHECK_THROWS_AS(m.insert(MatchSide::kB, 1), std::invalid_argument);
    CHECK_THROWS_AS(m.erase(MatchSide::kB, 99), std::invalid_argument);
    CHECK_THROWS_AS(m.erase(MatchSide::kP, 1), std::invalid_argument);
  };
  exercise(Matching::unit(&reg, CellId{1, 0, 1}, CellId{1, 0, 0}));
  exercise(Matching::general(&reg));
}

TEST_CASE("unit matching rejects sites that break its frame") {
  SiteRegistry reg;
  reg.add(Site{1, {0.5, 0.5}, 2.0});
  reg.add(Site{2, {5.0, 5.0}, 1.0});
  Matching m = Matching::unit(&reg, CellId{1, 0, 1}, CellId{1, 0, 0});
  CHECK_THROWS_AS(m.insert(MatchSide::kB, 1), std::invalid_argument);
  CHECK_THROWS_AS(m.insert(MatchSide::kB, 2), std::invalid_argument);
}

TEST_CASE("deleting a matched site re-matches the orphan when possible") {
  SiteRegistry reg;
  reg.add(Site{1, {0.7, 1.5}, 1.0});
  reg.add(Site{2, {0.7, 0.7}, 1.0});
  reg.add(Site{3, {1.0, 0.5}, 1.0});
  Matching m = Matching::unit(&reg, CellId{1, 0, 1}, CellId{1, 0, 0});
  m.insert(MatchSide::kP, 1);
  CHECK(m.insert(MatchSide::kB, 2) == MatchingDelta::kBecameNonEmpty);
  CHECK(m.insert(MatchSide::kB, 3) == MatchingDelta::kNone);

  // The orphaned p site immediately pairs with the stored unmatched b site.
  CHECK(m.erase(MatchSide::kB, 2) == MatchingDelta::kNone);
  auto edges = m.edges();
  REQUIRE(edges.size() == 1);
  CHECK(edges[0] == std::pair<SiteId, SiteId>{1, 3});

  CHECK(m.erase(MatchSide::kB, 3) == MatchingDelta::kBecameEmpty);
  CHECK(!m.has_edges());
  CHECK(m.side_size(MatchSide::kP) == 1);
  CHECK(m.erase(MatchSide::kP, 1) == MatchingDelta::kNone);
  CHECK(m.side_size(MatchSide::kP) == 0);
}

TEST_CASE("unit workloads stay maximal after every operation") {
  struct Config {
    CellId pc, bc;
  };
  const Config configs[] = {
      {CellId{1, 0, 1}, CellId{1, 0, 0}},
      {CellId{1, 0, 0}, CellId{1, 1, 0}},
      {CellId{1, 1, 1}, CellId{1, 0, 0}},
      {CellId{1, 2, 0}, CellId{1, 0, 0}},
  };
  for (const Config& cfg : configs) {
    for (std::uint64_t salt : {1u, 2u}) {
      Rng rng(derive_seed(5100, salt * 17 + static_cast<std::uint64_t>(cfg.pc.ix * 5 + cfg.pc.iy)));
      SiteRegistry reg;
      Matching m = Matching::unit(&reg, cfg.pc, cfg.bc);
      run_workload(m, reg, rng, 500, [&](SiteId id, MatchSide side) {
        return site_in_cell(rng, side == MatchSide::kP ? cfg.pc : cfg.bc, id);
      });
    }
  }
}

TEST_CASE("general workloads stay maximal after every operation") {
  for (std::uint64_t salt : {11u, 12u, 13u}) {
    Rng rng(derive_seed(5200, salt));
    SiteRegistry reg;
    Matching m = Matching::general(&reg);
    run_workload(m, reg, rng, 500, [&](SiteId id, MatchSide) {
      return Site{id, {rng.uniform(0.0, 30.0), rng.uniform(0.0, 30.0)},
                  rng.uniform(1.0, 6.0)};
    });
  }
}
