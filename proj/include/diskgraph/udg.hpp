#pragma once

#include <map>
#include <set>
#include <utility>
#include <vector>

#include "diskgraph/dynconn.hpp"
#include "diskgraph/grid.hpp"
#include "diskgraph/mbm.hpp"
#include "diskgraph/registry.hpp"

namespace diskgraph {

// Fully dynamic connectivity over unit disks. Sites live in diameter-2 grid
// cells; same-cell disks always pairwise intersect, so each non-empty cell
// is one proxy-graph vertex, and two cells of a 5x5 neighborhood are linked
// exactly while their bichromatic matching is non-empty. Connectivity of
// the proxy graph then equals connectivity of the disk graph.
class UnitDiskConnectivity {
 public:
  void insert(const Site& s);  // radius must be exactly 1
  void erase(SiteId id);
  bool connected(SiteId a, SiteId b);

  std::size_t num_sites() const { return site_cell_.size(); }
  std::size_t num_cells() const { return cells_.size(); }  // tombstones included
  std::size_t num_proxy_edges() const;

  // Cross-checks the coupling invariants: a pair's HDT edge exists iff its
  // matching is non-empty, each matching holds exactly the sites of its two
  // cells, and no cell carries more than the 24 neighborhood edges. Throws
  // std::logic_error on violation.
  void check_consistency() const;

 private:
  struct CellState {
    VertexHandle vertex = -1;
    std::set<SiteId> sites;
  };
  struct PairState {
    Matching matching;
    EdgeHandle edge = -1;
    VertexHandle va = -1;
    VertexHandle vb = -1;
  };

  PairState& create_pair(const std::pair<CellId, CellId>& key);
  void sync_edge(PairState& ps);

  SiteRegistry registry_;
  HdtConnectivity hdt_;
  std::map<CellId, CellState> cells_;
  std::map<std::pair<CellId, CellId>, PairState> pairs_;
  std::map<SiteId, CellId> site_cell_;
};

}  // namespace diskgraph
