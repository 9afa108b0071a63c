#pragma once

#include <map>
#include <set>
#include <vector>

#include "diskgraph/geometry.hpp"

namespace diskgraph {

// Brute-force ground truth. Every function here recomputes from the plain
// site list by definition, never from another structure's internals, so the
// fast structures can be pinned against it differentially.

// BFS over all pairwise disk intersections.
bool oracle_connected(const std::vector<Site>& sites, SiteId a, SiteId b);

// Connected component labels (component id = smallest member id), keyed by
// site id. Useful for whole-graph comparisons.
std::map<SiteId, SiteId> oracle_components(const std::vector<Site>& sites);

// Ids of p's with no intersecting b left, sorted ascending.
std::vector<SiteId> oracle_revealed(const std::vector<Site>& bs, const std::vector<Site>& ps);

// True iff no unmatched p intersects an unmatched b. `matched_p`/`matched_b`
// are the currently matched ids on each side.
bool oracle_mbm_maximal(const std::vector<Site>& ps, const std::vector<Site>& bs,
                        const std::set<SiteId>& matched_p, const std::set<SiteId>& matched_b);

// Incremental mirror of the disk graph for replay checking: keeps adjacency
// lists current under insert/delete and answers connectivity by BFS.
class OracleGraph {
 public:
  void insert(const Site& s);
  void remove(SiteId id);
  bool connected(SiteId a, SiteId b) const;
  bool contains(SiteId id) const { return sites_.count(id) != 0; }
  const std::map<SiteId, Site>& sites() const { return sites_; }
  std::vector<Site> site_list() const;

 private:
  std::map<SiteId, Site> sites_;
  std::map<SiteId, std::set<SiteId>> adj_;
};

}  // namespace diskgraph
