#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "diskgraph/awnn.hpp"
#include "diskgraph/envelope.hpp"
#include "diskgraph/grid.hpp"
#include "diskgraph/registry.hpp"

namespace diskgraph {

enum class MatchSide { kP, kB };

// Empty/non-empty transition of the matching, the only signal proxy graphs
// consume: a cell pair contributes an edge while its matching is non-empty.
enum class MatchingDelta { kNone, kBecameNonEmpty, kBecameEmpty };

// Maximal bichromatic matching between site sets P and B: matched pairs
// intersect and no unmatched p intersects an unmatched b. Only ids are
// stored; the registry holds the geometry and must outlive the matching and
// keep every site while it is a member.
class Matching {
 public:
  // Sites of two distinct same-level cells, every radius exactly 1. The
  // unmatched stores are lower envelopes of radius-2 arcs in a frame whose
  // x axis runs along the grid line separating the cells.
  static Matching unit(const SiteRegistry* registry, const CellId& p_cell,
                       const CellId& b_cell);

  // Arbitrary radii and positions; the unmatched stores are weighted
  // nearest-neighbor indexes.
  static Matching general(const SiteRegistry* registry);

  MatchingDelta insert(MatchSide side, SiteId id);
  MatchingDelta erase(MatchSide side, SiteId id);

  bool has_edges() const { return !matched_pb_.empty(); }
  std::size_t edge_count() const { return matched_pb_.size(); }
  std::vector<std::pair<SiteId, SiteId>> edges() const;  // (p, b), sorted by p
  std::size_t side_size(MatchSide side) const;

 private:
  struct Frame {
    bool vertical = false;  // the separating grid line has constant x
    double boundary = 0.0;  // line coordinate in input coordinates
    bool p_high = false;    // P side has the larger coordinate
  };

  Matching() = default;

  Point to_frame(const Point& p) const;
  std::optional<SiteId> find_partner(MatchSide side, const Site& s) const;
  void store_unmatched(MatchSide side, const Site& s);
  void drop_unmatched(MatchSide side, SiteId id);
  void link(MatchSide side, SiteId id, SiteId partner);

  bool unit_ = false;
  const SiteRegistry* registry_ = nullptr;
  Frame frame_;
  CellId p_cell_, b_cell_;
  std::unique_ptr<LowerEnvelope> env_p_, env_b_;
  std::unique_ptr<AwnnStore> awnn_p_, awnn_b_;
  std::set<SiteId> members_p_, members_b_;
  std::map<SiteId, SiteId> matched_pb_, matched_bp_;
};

}  // namespace diskgraph
