#pragma once

#include <cmath>
#include <memory>
#include <optional>

#include "diskgraph/geometry.hpp"

namespace diskgraph {

// Entry of an additively weighted nearest-neighbor store. Disk consumers
// store weight = -radius, so the query score dist(q, location) + weight is
// dist(q, s) - r_s and "score <= r_q" is exactly the disk intersection test.
struct WeightedPoint {
  SiteId owner = -1;
  Point location;
  double weight = 0.0;
};

struct AwnnHit {
  SiteId owner = -1;
  double score = 0.0;
};

// Both store kinds evaluate entries with this exact expression, so their
// results are comparable as doubles, not merely up to rounding.
inline double awnn_score(const WeightedPoint& e, const Point& q) {
  return std::sqrt(dist2(e.location, q)) + e.weight;
}

// Additively weighted nearest neighbor over a mutable set of entries:
// query(q) returns the live entry minimizing dist(q, location) + weight,
// ties going to the smallest owner id.
class AwnnStore {
 public:
  virtual ~AwnnStore() = default;

  // Throws std::invalid_argument when the owner is already present.
  virtual void insert(const WeightedPoint& e) = 0;
  // Throws std::invalid_argument when the owner is not present.
  virtual void erase(SiteId owner) = 0;

  virtual std::optional<AwnnHit> query(const Point& q) const = 0;
  virtual std::size_t size() const = 0;
};

enum class AwnnKind {
  kLinear,  // scan of every live entry, the reference
  kGrid,    // entries bucketed by the grid level of their implied radius
};

std::unique_ptr<AwnnStore> make_awnn(AwnnKind kind);

}  // namespace diskgraph
