#include "diskgraph/oracle.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace diskgraph {

namespace {

std::size_t index_of(const std::vector<Site>& sites, SiteId id) {
  for (std::size_t i = 0; i < sites.size(); ++i)
    if (sites[i].id == id) return i;
  throw std::invalid_argument("oracle: unknown site id");
}

}  // namespace

bool oracle_connected(const std::vector<Site>& sites, SiteId a, SiteId b) {
  std::size_t ia = index_of(sites, a), ib = index_of(sites, b);
  if (ia == ib) return true;
  std::vector<char> seen(sites.size(), 0);
  std::deque<std::size_t> q{ia};
  seen[ia] = 1;
  while (!q.empty()) {
    std::size_t cur = q.front();
    q.pop_front();
    if (cur == ib) return true;
    for (std::size_t j = 0; j < sites.size(); ++j) {
      if (!seen[j] && disks_intersect(sites[cur], sites[j])) {
        seen[j] = 1;
        q.push_back(j);
      }
    }
  }
  return false;
}

std::map<SiteId, SiteId> oracle_components(const std::vector<Site>& sites) {
  std::vector<std::size_t> comp(sites.size(), SIZE_MAX);
  for (std::size_t i = 0; i < sites.size(); ++i) {
    if (comp[i] != SIZE_MAX) continue;
    comp[i] = i;
    std::deque<std::size_t> q{i};
    while (!q.empty()) {
      std::size_t cur = q.front();
      q.pop_front();
      for (std::size_t j = 0; j < sites.size(); ++j) {
        if (comp[j] == SIZE_MAX && disks_intersect(sites[cur], sites[j])) {
          comp[j] = i;
          q.push_back(j);
        }
      }
    }
  }
  std::map<SiteId, SiteId> out;
  for (std::size_t i = 0; i < sites.size(); ++i) {
    std::size_t root = comp[i];
    SiteId label = sites[root].id;
    // Use the smallest id within the component as its label.
    for (std::size_t j = 0; j < sites.size(); ++j)
      if (comp[j] == root) label = std::min(label, sites[j].id);
    out[sites[i].id] = label;
  }
  return out;
}

std::vector<SiteId> oracle_revealed(const std::vector<Site>& bs, const std::vector<Site>& ps) {
  std::vector<SiteId> out;
  for (const Site& p : ps) {
    bool hit = false;
    for (const Site& b : bs) {
      if (disks_intersect(p, b)) {
        hit = true;
        break;
      }
    }
    if (!hit) out.push_back(p.id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool oracle_mbm_maximal(const std::vector<Site>& ps, const std::vector<Site>& bs,
                        const std::set<SiteId>& matched_p, const std::set<SiteId>& matched_b) {
  for (const Site& p : ps) {
    if (matched_p.count(p.id)) continue;
    for (const Site& b : bs) {
      if (matched_b.count(b.id)) continue;
      if (disks_intersect(p, b)) return false;
    }
  }
  return true;
}

void OracleGraph::insert(const Site& s) {
  if (sites_.count(s.id)) throw std::invalid_argument("oracle: duplicate id");
  auto& nbrs = adj_[s.id];
  for (const auto& [oid, other] : sites_) {
    if (disks_intersect(s, other)) {
      nbrs.insert(oid);
      adj_[oid].insert(s.id);
    }
  }
  sites_.emplace(s.id, s);
}

void OracleGraph::remove(SiteId id) {
  auto it = sites_.find(id);
  if (it == sites_.end()) throw std::invalid_argument("oracle: unknown id");
  for (SiteId nb : adj_[id]) adj_[nb].erase(id);
  adj_.erase(id);
  sites_.erase(it);
}

bool OracleGraph::connected(SiteId a, SiteId b) const {
  if (!sites_.count(a) || !sites_.count(b)) throw std::invalid_argument("oracle: unknown id");
  if (a == b) return true;
  std::set<SiteId> seen{a};
  std::deque<SiteId> q{a};
  while (!q.empty()) {
    SiteId cur = q.front();
    q.pop_front();
    if (cur == b) return true;
    auto it = adj_.find(cur);
    if (it == adj_.end()) continue;
    for (SiteId nb : it->second) {
      if (seen.insert(nb).second) q.push_back(nb);
    }
  }
  return false;
}

std::vector<Site> OracleGraph::site_list() const {
  std::vector<Site> out;
  out.reserve(sites_.size());
  for (const auto& [id, s] : sites_) out.push_back(s);
  return out;
}

}  // namespace diskgraph
