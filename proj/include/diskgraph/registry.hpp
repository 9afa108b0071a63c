#pragma once

#include <map>
#include <stdexcept>

#include "diskgraph/geometry.hpp"

namespace diskgraph {

// Single source of geometry for sites that appear in many per-cell-pair
// structures; matchings and proxy graphs store ids only and fetch from here.
class SiteRegistry {
 public:
  void add(const Site& s) {
    auto [it, fresh] = sites_.emplace(s.id, s);
    (void)it;
    if (!fresh) throw std::invalid_argument("registry add: duplicate site");
  }

  void remove(SiteId id) {
    if (sites_.erase(id) == 0) throw std::invalid_argument("registry remove: unknown site");
  }

  const Site& get(SiteId id) const {
    auto it = sites_.find(id);
    if (it == sites_.end()) throw std::invalid_argument("registry get: unknown site");
    return it->second;
  }

  bool contains(SiteId id) const { return sites_.count(id) != 0; }
  std::size_t size() const { return sites_.size(); }

 private:
  std::map<SiteId, Site> sites_;
};

}  // namespace diskgraph
