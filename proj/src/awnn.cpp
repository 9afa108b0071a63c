#include "diskgraph/awnn.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>

#include "diskgraph/grid.hpp"

namespace diskgraph {

namespace {

class LinearAwnn final : public AwnnStore {
 public:
  void insert(const WeightedPoint& e) override {
    auto [it, fresh] = entries_.emplace(e.owner, e);
    (void)it;
    if (!fresh) throw std::invalid_argument("awnn insert: duplicate owner");
  }

  void erase(SiteId owner) override {
    if (entries_.erase(owner) == 0) throw std::invalid_argument("awnn erase: unknown owner");
  }

  std::optional<AwnnHit> query(const Point& q) const override {
    std::optional<AwnnHit> best;
    for (const auto& [id, e] : entries_) {
      double sc = awnn_score(e, q);
      if (!best || sc < best->score) best = AwnnHit{id, sc};
    }
    return best;
  }

  std::size_t size() const override { return entries_.size(); }

 private:
  std::map<SiteId, WeightedPoint> entries_;
};

struct CellKey {
  std::int64_t ix = 0;
  std::int64_t iy = 0;

  friend auto operator<=>(const CellKey&, const CellKey&) = default;
};

// Entries whose weight is -r for some radius r >= 1 live in buckets keyed by
// the level-of-r grid cell of their location; a whole bucket is skipped when
// even its closest point with the largest level radius cannot beat the best
// score so far. Entries with weight > -1 have no grid level and are kept in
// a side list that every query scans.
class GridAwnn final : public AwnnStore {
 public:
  void insert(const WeightedPoint& e) override {
    auto [it, fresh] = all_.emplace(e.owner, e);
    (void)it;
    if (fresh) {
      if (e.weight <= -1.0) {
        std::int32_t lvl = level_of_radius(-e.weight);
        levels_[lvl][bucket_key(e.location, lvl)].emplace(e.owner, e);
      } else {
        loose_.emplace(e.owner, e);
      }
    } else {
      throw std::invalid_argument("awnn insert: duplicate owner");
    }
  }

  void erase(SiteId owner) override {
    auto it = all_.find(owner);
    if (it == all_.end()) throw std::invalid_argument("awnn erase: unknown owner");
    const WeightedPoint e = it->second;
    all_.erase(it);
    if (e.weight <= -1.0) {
      std::int32_t lvl = level_of_radius(-e.weight);
      auto lit = levels_.find(lvl);
      auto cit = lit->second.find(bucket_key(e.location, lvl));
      cit->second.erase(owner);
      if (cit->second.empty()) lit->second.erase(cit);
      if (lit->second.empty()) levels_.erase(lit);
    } else {
      loose_.erase(owner);
    }
  }

  std::optional<AwnnHit> query(const Point& q) const override {
    std::optional<AwnnHit> best;
    auto consider = [&](const WeightedPoint& e) {
      double sc = awnn_score(e, q);
      if (!best || sc < best->score || (sc == best->score && e.owner < best->owner)) {
        best = AwnnHit{e.owner, sc};
      }
    };
    for (const auto& [id, e] : loose_) consider(e);
    double px = q.x * kGridScale, py = q.y * kGridScale;
    for (const auto& [lvl, cells] : levels_) {
      double side = std::ldexp(1.0, lvl);
      double rmax = std::ldexp(1.0, lvl + 1);
      for (const auto& [key, bucket] : cells) {
        if (best) {
          double gx = axis_gap(px, static_cast<double>(key.ix) * side, side);
          double gy = axis_gap(py, static_cast<double>(key.iy) * side, side);
          double mind = std::sqrt(gx * gx + gy * gy) / kGridScale;
          // Every entry here scores at least its distance minus its radius,
          // the distance is at least mind and the radius is below rmax; the
          // shave keeps rounding of mind itself from over-pruning.
          if (mind * 0.999999 - rmax > best->score) continue;
        }
        for (const auto& [id, e] : bucket) consider(e);
      }
    }
    return best;
  }

  std::size_t size() const override { return all_.size(); }

 private:
  static CellKey bucket_key(const Point& p, std::int32_t level) {
    double sx = std::ldexp(p.x * kGridScale, -level);
    double sy = std::ldexp(p.y * kGridScale, -level);
    return CellKey{static_cast<std::int64_t>(std::floor(sx)),
                   static_cast<std::int64_t>(std::floor(sy))};
  }

  static double axis_gap(double p, double lo, double side) {
    if (p < lo) return lo - p;
    if (p > lo + side) return p - (lo + side);
    return 0.0;
  }

  using Bucket = std::map<SiteId, WeightedPoint>;
  std::map<std::int32_t, std::map<CellKey, Bucket>, std::greater<>> levels_;
  std::map<SiteId, WeightedPoint> loose_;
  std::map<SiteId, WeightedPoint> all_;
};

}  // namespace

std::unique_ptr<AwnnStore> make_awnn(AwnnKind kind) {
  switch (kind) {
    case AwnnKind::kLinear:
      return std::make_unique<LinearAwnn>();
    case AwnnKind::kGrid:
      return std::make_unique<GridAwnn>();
  }
  throw std::invalid_argument("make_awnn: unknown kind");
}

}  // namespace diskgraph
