#pragma once

#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "diskgraph/geometry.hpp"

namespace diskgraph {

// Lower circular arc in a rotated frame: the curve sits above the x-axis
// and opens upward, extended to +infinity outside its x-support. The
// matching layer uses R = sum of two unit radii = 2.
struct ArcCurve {
  SiteId owner = -1;
  double cx = 0.0;
  double cy = 0.0;
  double R = 2.0;
};

// cy - sqrt(R^2 - (x-cx)^2) inside the support, +infinity outside.
inline double arc_value(const ArcCurve& c, double x) {
  double dx = x - c.cx;
  double rad = c.R * c.R - dx * dx;
  if (rad < 0.0) return std::numeric_limits<double>::infinity();
  return c.cy - std::sqrt(rad);
}

struct EnvelopeHit {
  SiteId owner = -1;
  double value = 0.0;
};

// Dynamic lower envelope: insert/erase curves by owner, query the pointwise
// argmin at an x (ties by smallest owner; no hit where every curve is
// +infinity). Two interchangeable implementations back this interface; the
// tests pin the tree against the linear scan.
class LowerEnvelope {
 public:
  virtual ~LowerEnvelope() = default;
  virtual void insert(const ArcCurve& c) = 0;
  virtual void erase(SiteId owner) = 0;
  virtual std::optional<EnvelopeHit> ray_shoot(double x) const = 0;
  virtual std::size_t size() const = 0;
};

// Reference implementation: O(k) scan per query, no preconditions beyond
// owner uniqueness.
class LinearEnvelope final : public LowerEnvelope {
 public:
  void insert(const ArcCurve& c) override;
  void erase(SiteId owner) override;
  std::optional<EnvelopeHit> ray_shoot(double x) const override;
  std::size_t size() const override { return curves_.size(); }

 private:
  std::map<SiteId, ArcCurve> curves_;
};

// Envelope tree: curves at the leaves sorted by (cx, cy, owner), every
// internal node storing the part of its children's envelopes that its own
// envelope hides, the root holding the full envelope as a concatenable
// piece queue. Updates rebuild the merges along one root-leaf path.
//
// Preconditions beyond the interface (enforced, throwing): all live curves
// share one R, and their centers span less than 2R in x, so the union of
// supports has no interior gap. Both hold for arcs raised from disks of
// one grid cell, and they make the merge's advantage predicate monotone,
// which the bridge search relies on.
class TreeEnvelope final : public LowerEnvelope {
 public:
  TreeEnvelope();
  ~TreeEnvelope() override;
  TreeEnvelope(const TreeEnvelope&) = delete;
  TreeEnvelope& operator=(const TreeEnvelope&) = delete;

  void insert(const ArcCurve& c) override;
  void erase(SiteId owner) override;
  std::optional<EnvelopeHit> ray_shoot(double x) const override;
  std::size_t size() const override;

  // The full envelope as (owner, right end) pieces, left to right; the last
  // right end is +infinity. Exposed for the breakpoint-count property test.
  std::vector<std::pair<SiteId, double>> pieces() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

enum class EnvelopeKind { kLinear, kTree };

std::unique_ptr<LowerEnvelope> make_envelope(EnvelopeKind kind);

}  // namespace diskgraph
