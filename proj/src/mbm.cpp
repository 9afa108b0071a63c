#include "diskgraph/mbm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace diskgraph {

namespace {

MatchSide opposite(MatchSide side) {
  return side == MatchSide::kP ? MatchSide::kB : MatchSide::kP;
}

MatchingDelta transition(bool before, bool after) {
  if (before == after) return MatchingDelta::kNone;
  return after ? MatchingDelta::kBecameNonEmpty : MatchingDelta::kBecameEmpty;
}

}  // namespace

Matching Matching::unit(const SiteRegistry* registry, const CellId& p_cell,
                        const CellId& b_cell) {
  if (p_cell.level != b_cell.level)
    throw std::invalid_argument("unit matching: cells must share a level");
  if (p_cell == b_cell) throw std::invalid_argument("unit matching: cells must be distinct");
  Matching m;
  m.unit_ = true;
  m.registry_ = registry;
  m.p_cell_ = p_cell;
  m.b_cell_ = b_cell;
  double side = std::ldexp(1.0, p_cell.level);
  if (p_cell.ix != b_cell.ix) {
    m.frame_.vertical = true;
    m.frame_.p_high = p_cell.ix > b_cell.ix;
    m.frame_.boundary =
        side * static_cast<double>(std::max(p_cell.ix, b_cell.ix)) / kGridScale;
  } else {
    m.frame_.vertical = false;
    m.frame_.p_high = p_cell.iy > b_cell.iy;
    m.frame_.boundary =
        side * static_cast<double>(std::max(p_cell.iy, b_cell.iy)) / kGridScale;
  }
  m.env_p_ = make_envelope(EnvelopeKind::kTree);
  m.env_b_ = make_envelope(EnvelopeKind::kTree);
  return m;
}

Matching Matching::general(const SiteRegistry* registry) {
  Matching m;
  m.registry_ = registry;
  m.awnn_p_ = make_awnn(AwnnKind::kGrid);
  m.awnn_b_ = make_awnn(AwnnKind::kGrid);
  return m;
}

Point Matching::to_frame(const Point& p) const {
  double along = frame_.vertical ? p.y : p.x;
  double raw = frame_.vertical ? p.x : p.y;
  double height = frame_.p_high ? raw - frame_.boundary : frame_.boundary - raw;
  return Point{along, height};
}

std::optional<SiteId> Matching::find_partner(MatchSide side, const Site& s) const {
  if (unit_) {
    // Two unit disks intersect exactly when the center of one lies in the
    // radius-2 disk around the other; for a querier on the far side of the
    // line that is a comparison against the stored side's lower envelope.
    Point f = to_frame(s.center);
    const auto& env = side == MatchSide::kB ? env_p_ : env_b_;
    double height = side == MatchSide::kB ? f.y : -f.y;
    auto hit = env->ray_shoot(f.x);
    if (hit && hit->value <= height) return hit->owner;
    return std::nullopt;
  }
  const auto& store = side == MatchSide::kB ? awnn_p_ : awnn_b_;
  auto hit = store->query(s.center);
  if (hit && hit->score <= s.radius) return hit->owner;
  return std::nullopt;
}

void Matching::store_unmatched(MatchSide side, const Site& s) {
  if (unit_) {
    Point f = to_frame(s.center);
    if (side == MatchSide::kP) {
      env_p_->insert(ArcCurve{s.id, f.x, f.y, 2.0});
    } else {
      env_b_->insert(ArcCurve{s.id, f.x, -f.y, 2.0});
    }
    return;
  }
  (side == MatchSide::kP ? awnn_p_ : awnn_b_)->insert(WeightedPoint{s.id, s.center, -s.radius});
}

void Matching::drop_unmatched(MatchSide side, SiteId id) {
  if (unit_) {
    (side == MatchSide::kP ? env_p_ : env_b_)->erase(id);
  } else {
    (side == MatchSide::kP ? awnn_p_ : awnn_b_)->erase(id);
  }
}

void Matching::link(MatchSide side, SiteId id, SiteId partner) {
  SiteId p = side == MatchSide::kP ? id : partner;
  SiteId b = side == MatchSide::kP ? partner : id;
  matched_pb_.emplace(p, b);
  matched_bp_.emplace(b, p);
}

MatchingDelta Matching::insert(MatchSide side, SiteId id) {
  auto& members = side == MatchSide::kP ? members_p_ : members_b_;
  if (members.count(id) != 0) throw std::invalid_argument("matching insert: duplicate id");
  const Site& s = registry_->get(id);
  if (unit_) {
    if (s.radius != 1.0) throw std::invalid_argument("unit matching: radius must be 1");
    const CellId& home = side == MatchSide::kP ? p_cell_ : b_cell_;
    if (cell_of(s.center, home.level) != home)
      throw std::invalid_argument("unit matching: site outside its cell");
  }
  bool before = has_edges();
  members.insert(id);
  if (auto partner = find_partner(side, s)) {
    drop_unmatched(opposite(side), *partner);
    link(side, id, *partner);
  } else {
    store_unmatched(side, s);
  }
  return transition(before, has_edges());
}

MatchingDelta Matching::erase(MatchSide side, SiteId id) {
  auto& members = side == MatchSide::kP ? members_p_ : members_b_;
  if (members.erase(id) == 0) throw std::invalid_argument("matching erase: unknown id");
  bool before = has_edges();
  auto& fwd = side == MatchSide::kP ? matched_pb_ : matched_bp_;
  auto& rev = side == MatchSide::kP ? matched_bp_ : matched_pb_;
  auto it = fwd.find(id);
  if (it == fwd.end()) {
    drop_unmatched(side, id);
    return transition(before, has_edges());
  }
  SiteId orphan = it->second;
  rev.erase(orphan);
  fwd.erase(it);
  // The orphan rejoins its side: either it pairs with an unmatched site of
  // the deleted one's side or it returns to the unmatched store.
  MatchSide oside = opposite(side);
  const Site& os = registry_->get(orphan);
  if (auto partner = find_partner(oside, os)) {
    drop_unmatched(side, *partner);
    link(oside, orphan, *partner);
  } else {
    store_unmatched(oside, os);
  }
  return transition(before, has_edges());
}

std::vector<std::pair<SiteId, SiteId>> Matching::edges() const {
  std::vector<std::pair<SiteId, SiteId>> out;
  out.reserve(matched_pb_.size());
  for (const auto& [p, b] : matched_pb_) out.emplace_back(p, b);
  return out;
}

std::size_t Matching::side_size(MatchSide side) const {
  return (side == MatchSide::kP ? members_p_ : members_b_).size();
}

}  // namespace diskgraph
