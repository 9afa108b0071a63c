#include "diskgraph/dynconn.hpp"

#include <algorithm>
#include <cstddef>
#include <random>
#include <stdexcept>
#include <utility>

namespace diskgraph {

VertexHandle UnionFind::make_vertex() {
  auto v = static_cast<VertexHandle>(parent_.size());
  parent_.push_back(v);
  rank_.push_back(0);
  return v;
}

VertexHandle UnionFind::find(VertexHandle v) {
  VertexHandle root = v;
  while (parent_[root] != root) root = parent_[root];
  while (parent_[v] != root) {
    VertexHandle next = parent_[v];
    parent_[v] = root;
    v = next;
  }
  return root;
}

bool UnionFind::unite(VertexHandle a, VertexHandle b) {
  a = find(a);
  b = find(b);
  if (a == b) return false;
  if (rank_[a] < rank_[b]) std::swap(a, b);
  parent_[b] = a;
  if (rank_[a] == rank_[b]) ++rank_[a];
  return true;
}

// Euler-tour node: either the loop occurrence of a vertex or one of the
// two arc occurrences of a tree edge. Trees are treaps ordered by tour
// position (no keys), with parent pointers so a node can locate its own
// index and root.
struct HdtConnectivity::Node {
  Node* l = nullptr;
  Node* r = nullptr;
  Node* p = nullptr;
  std::uint64_t prio = 0;
  VertexHandle vertex = -1;  // >= 0 for loop nodes
  EdgeHandle edge = -1;      // >= 0 for arc nodes
  std::int32_t cnt = 1;      // subtree node count
  std::int32_t loops = 0;    // subtree loop-node count
  // self_*: this node's own mark. sub_*: OR over the subtree.
  // nontree: loop node of a vertex with non-tree edges at this level.
  // levelarc: arc of a tree edge whose level equals this forest's level.
  bool self_nontree = false;
  bool self_levelarc = false;
  bool sub_nontree = false;
  bool sub_levelarc = false;
};

struct HdtConnectivity::Edge {
  VertexHandle u = -1;
  VertexHandle v = -1;
  int level = 0;
  bool live = false;
  bool tree = false;
  // arcs[lvl] = the two arc nodes in the level-lvl forest (tree edges only).
  std::vector<std::array<Node*, 2>> arcs;
};

namespace {

std::uint64_t next_priority() {
  // Fixed seed: treap shapes, and therefore internal traversal order,
  // reproduce run to run.
  static std::mt19937_64 gen(0x9e3779b97f4a7c15ULL);
  return gen();
}

int levels_for_capacity(std::size_t cap) {
  // Edge levels stay below log2(capacity): promotion halves component
  // size, which starts at most at capacity.
  int lv = 1;
  while ((std::size_t{1} << lv) < cap) ++lv;
  return std::max(1, lv);
}

}  // namespace

HdtConnectivity::HdtConnectivity() { rebuild(16); }

HdtConnectivity::~HdtConnectivity() = default;

HdtConnectivity::Node* HdtConnectivity::alloc_node() {
  Node* n;
  if (!free_nodes_.empty()) {
    n = free_nodes_.back();
    free_nodes_.pop_back();
  } else {
    n = &pool_.emplace_back();
  }
  *n = Node{};
  n->prio = next_priority();
  return n;
}

void HdtConnectivity::free_node(Node* n) { free_nodes_.push_back(n); }

void HdtConnectivity::pull(Node* n) {
  n->cnt = 1;
  n->loops = n->vertex >= 0 ? 1 : 0;
  n->sub_nontree = n->self_nontree;
  n->sub_levelarc = n->self_levelarc;
  for (Node* c : {n->l, n->r}) {
    if (!c) continue;
    n->cnt += c->cnt;
    n->loops += c->loops;
    n->sub_nontree = n->sub_nontree || c->sub_nontree;
    n->sub_levelarc = n->sub_levelarc || c->sub_levelarc;
  }
}

void HdtConnectivity::fix_up(Node* n) {
  for (; n; n = n->p) pull(n);
}

HdtConnectivity::Node* HdtConnectivity::merge_trees(Node* a, Node* b) {
  if (!a) return b;
  if (!b) return a;
  if (a->prio > b->prio) {
    Node* m = merge_trees(a->r, b);
    a->r = m;
    m->p = a;
    pull(a);
    return a;
  }
  Node* m = merge_trees(a, b->l);
  b->l = m;
  m->p = b;
  pull(b);
  return b;
}

// First k tour positions go left, the rest right; both halves become
// parentless roots.
std::pair<HdtConnectivity::Node*, HdtConnectivity::Node*>
HdtConnectivity::split_at(Node* t, std::size_t k) {
  if (!t) return {nullptr, nullptr};
  std::size_t left_cnt = t->l ? static_cast<std::size_t>(t->l->cnt) : 0;
  if (k <= left_cnt) {
    auto [a, b] = split_at(t->l, k);
    t->l = b;
    if (b) b->p = t;
    pull(t);
    t->p = nullptr;
    if (a) a->p = nullptr;
    return {a, t};
  }
  auto [a, b] = split_at(t->r, k - left_cnt - 1);
  t->r = a;
  if (a) a->p = t;
  pull(t);
  t->p = nullptr;
  if (b) b->p = nullptr;
  return {t, b};
}

std::size_t HdtConnectivity::index_of(Node* n) {
  std::size_t idx = n->l ? static_cast<std::size_t>(n->l->cnt) : 0;
  for (Node* c = n; c->p; c = c->p) {
    if (c == c->p->r) {
      idx += 1 + (c->p->l ? static_cast<std::size_t>(c->p->l->cnt) : 0);
    }
  }
  return idx;
}

HdtConnectivity::Node* HdtConnectivity::root_of(Node* n) {
  while (n->p) n = n->p;
  return n;
}

HdtConnectivity::Node* HdtConnectivity::ensure_loop(VertexHandle v, int lvl) {
  auto& per_level = loops_[static_cast<std::size_t>(v)];
  if (per_level.size() <= static_cast<std::size_t>(lvl)) {
    per_level.resize(static_cast<std::size_t>(lvl) + 1, nullptr);
  }
  Node*& n = per_level[static_cast<std::size_t>(lvl)];
  if (!n) {
    n = alloc_node();
    n->vertex = v;
    pull(n);
  }
  return n;
}

void HdtConnectivity::refresh_nontree_flag(VertexHandle v, int lvl) {
  Node* n = ensure_loop(v, lvl);
  auto& bags = adj_[static_cast<std::size_t>(v)];
  bool has = bags.size() > static_cast<std::size_t>(lvl) &&
             !bags[static_cast<std::size_t>(lvl)].empty();
  n->self_nontree = has;
  fix_up(n);
}

bool HdtConnectivity::connected_at(VertexHandle u, VertexHandle v, int lvl) {
  return root_of(ensure_loop(u, lvl)) == root_of(ensure_loop(v, lvl));
}

// Splices the two tours into one: rotate each tour to start at its
// endpoint's loop, then concatenate with an arc between and an arc after.
void HdtConnectivity::link(VertexHandle u, VertexHandle v, EdgeHandle e,
                           int lvl) {
  Node* lu = ensure_loop(u, lvl);
  Node* lv = ensure_loop(v, lvl);
  auto rotate_to_front = [](Node* loop) {
    Node* root = root_of(loop);
    auto [a, b] = split_at(root, index_of(loop));
    return merge_trees(b, a);
  };
  Node* tu = rotate_to_front(lu);
  Node* tv = rotate_to_front(lv);
  Edge& ed = edges_[static_cast<std::size_t>(e)];
  if (ed.arcs.size() <= static_cast<std::size_t>(lvl)) {
    ed.arcs.resize(static_cast<std::size_t>(lvl) + 1, {nullptr, nullptr});
  }
  Node* a1 = alloc_node();
  Node* a2 = alloc_node();
  for (Node* a : {a1, a2}) {
    a->edge = e;
    a->self_levelarc = ed.level == lvl;
    pull(a);
  }
  ed.arcs[static_cast<std::size_t>(lvl)] = {a1, a2};
  merge_trees(merge_trees(merge_trees(tu, a1), tv), a2);
}

void HdtConnectivity::cut(EdgeHandle e, int lvl) {
  Edge& ed = edges_[static_cast<std::size_t>(e)];
  auto [a1, a2] = ed.arcs[static_cast<std::size_t>(lvl)];
  std::size_t i = index_of(a1);
  std::size_t j = index_of(a2);
  if (i > j) {
    std::swap(a1, a2);
    std::swap(i, j);
  }
  Node* root = root_of(a1);
  auto [head, rest] = split_at(root, i);
  auto [first_arc, mid] = split_at(rest, 1);
  auto [inner, tail_with_arc] = split_at(mid, j - i - 1);
  auto [second_arc, tail] = split_at(tail_with_arc, 1);
  (void)first_arc;
  (void)second_arc;
  merge_trees(head, tail);
  // `inner` (the subtree between the arcs) stays behind as its own tour.
  (void)inner;
  ed.arcs[static_cast<std::size_t>(lvl)] = {nullptr, nullptr};
  free_node(a1);
  free_node(a2);
}

VertexHandle HdtConnectivity::add_vertex() {
  if (num_vertices_ == capacity_) rebuild(capacity_ * 2);
  auto v = static_cast<VertexHandle>(num_vertices_++);
  loops_.emplace_back();
  adj_.emplace_back();
  return v;
}

EdgeHandle HdtConnectivity::insert_edge(VertexHandle u, VertexHandle v) {
  if (u == v) throw std::invalid_argument("self loops are not supported");
  EdgeHandle e;
  if (!free_edges_.empty()) {
    e = free_edges_.back();
    free_edges_.pop_back();
  } else {
    e = static_cast<EdgeHandle>(edges_.size());
    edges_.emplace_back();
  }
  Edge& ed = edges_[static_cast<std::size_t>(e)];
  ed = Edge{};
  ed.u = u;
  ed.v = v;
  ed.live = true;
  if (!connected_at(u, v, 0)) {
    ed.tree = true;
    link(u, v, e, 0);
  } else {
    for (VertexHandle w : {u, v}) {
      auto& bags = adj_[static_cast<std::size_t>(w)];
      if (bags.empty()) bags.resize(1);
      bags[0].insert(e);
      refresh_nontree_flag(w, 0);
    }
  }
  ++num_edges_;
  return e;
}

// Installs a replacement (or fresh) tree edge into forests 0..up_to_lvl.
void HdtConnectivity::make_tree_edge(EdgeHandle e, int up_to_lvl) {
  Edge& ed = edges_[static_cast<std::size_t>(e)];
  ed.tree = true;
  for (int lvl = 0; lvl <= up_to_lvl; ++lvl) link(ed.u, ed.v, e, lvl);
}

void HdtConnectivity::delete_edge(EdgeHandle e) {
  Edge& ed = edges_[static_cast<std::size_t>(e)];
  if (!ed.live) throw std::invalid_argument("edge handle is not live");
  ed.live = false;
  --num_edges_;
  if (!ed.tree) {
    for (VertexHandle w : {ed.u, ed.v}) {
      adj_[static_cast<std::size_t>(w)][static_cast<std::size_t>(ed.level)]
          .erase(e);
      refresh_nontree_flag(w, ed.level);
    }
    free_edges_.push_back(e);
    return;
  }
  int top = ed.level;
  VertexHandle u = ed.u;
  VertexHandle v = ed.v;
  for (int lvl = 0; lvl <= top; ++lvl) cut(e, lvl);
  free_edges_.push_back(e);
  // Search the smaller half for a replacement, highest level first. Every
  // edge inspected without reconnecting moves one level up, so it is
  // scanned at this level at most once more over its lifetime.
  for (int lvl = top; lvl >= 0; --lvl) {
    Node* ru = root_of(ensure_loop(u, lvl));
    Node* rv = root_of(ensure_loop(v, lvl));
    Node* small = ru->loops <= rv->loops ? ru : rv;
    // Tree edges of the smaller half move up wholesale; the half is small
    // enough that the level above can absorb it.
    while (small->sub_levelarc) {
      Node* a = small;
      while (!a->self_levelarc) {
        a = (a->l && a->l->sub_levelarc) ? a->l : a->r;
      }
      EdgeHandle f = a->edge;
      Edge& fe = edges_[static_cast<std::size_t>(f)];
      fe.level = lvl + 1;
      for (Node* arc : fe.arcs[static_cast<std::size_t>(lvl)]) {
        arc->self_levelarc = false;
        fix_up(arc);
      }
      link(fe.u, fe.v, f, lvl + 1);
      small = root_of(small);
    }
    while (small->sub_nontree) {
      Node* ln = small;
      while (!ln->self_nontree) {
        ln = (ln->l && ln->l->sub_nontree) ? ln->l : ln->r;
      }
      VertexHandle w = ln->vertex;
      bool reconnected = false;
      // Re-fetch the bag each round: the promote branch may grow the
      // per-vertex bag vector and move the sets.
      while (true) {
        const auto& bag =
            adj_[static_cast<std::size_t>(w)][static_cast<std::size_t>(lvl)];
        if (bag.empty()) break;
        EdgeHandle f = *bag.begin();
        Edge& fe = edges_[static_cast<std::size_t>(f)];
        VertexHandle x = fe.u == w ? fe.v : fe.u;
        for (VertexHandle y : {fe.u, fe.v}) {
          adj_[static_cast<std::size_t>(y)][static_cast<std::size_t>(lvl)]
              .erase(f);
          refresh_nontree_flag(y, lvl);
        }
        if (root_of(ensure_loop(x, lvl)) == root_of(small)) {
          // Both endpoints inside the half: promote and keep scanning.
          fe.level = lvl + 1;
          for (VertexHandle y : {fe.u, fe.v}) {
            auto& bags = adj_[static_cast<std::size_t>(y)];
            if (bags.size() <= static_cast<std::size_t>(lvl) + 1) {
              bags.resize(static_cast<std::size_t>(lvl) + 2);
            }
            bags[static_cast<std::size_t>(lvl) + 1].insert(f);
            refresh_nontree_flag(y, lvl + 1);
          }
        } else {
          // Crosses the cut: becomes the replacement tree edge.
          make_tree_edge(f, lvl);
          reconnected = true;
          break;
        }
      }
      refresh_nontree_flag(w, lvl);
      if (reconnected) return;
      small = root_of(small);
    }
  }
}

bool HdtConnectivity::connected(VertexHandle u, VertexHandle v) {
  return u == v || connected_at(u, v, 0);
}

std::size_t HdtConnectivity::component_size(VertexHandle u) {
  return static_cast<std::size_t>(root_of(ensure_loop(u, 0))->loops);
}

void HdtConnectivity::rebuild(std::size_t new_capacity) {
  std::vector<std::pair<EdgeHandle, std::pair<VertexHandle, VertexHandle>>>
      live;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (edges_[i].live) {
      live.push_back({static_cast<EdgeHandle>(i), {edges_[i].u, edges_[i].v}});
    }
  }
  pool_.clear();
  free_nodes_.clear();
  for (auto& per_level : loops_) per_level.assign(per_level.size(), nullptr);
  for (auto& bags : adj_) bags.clear();
  capacity_ = new_capacity;
  num_levels_ = levels_for_capacity(capacity_);
  // Handles survive: every live edge re-enters at level 0 under its old id.
  for (auto& [e, uv] : live) {
    Edge& ed = edges_[static_cast<std::size_t>(e)];
    ed.level = 0;
    ed.tree = false;
    ed.arcs.clear();
    if (!connected_at(uv.first, uv.second, 0)) {
      ed.tree = true;
      link(uv.first, uv.second, e, 0);
    } else {
      for (VertexHandle w : {uv.first, uv.second}) {
        auto& bags = adj_[static_cast<std::size_t>(w)];
        if (bags.empty()) bags.resize(1);
        bags[0].insert(e);
        refresh_nontree_flag(w, 0);
      }
    }
  }
}

void HdtConnectivity::check_invariants() {
  auto fail = [](const char* what) { throw std::logic_error(what); };
  // Subtree aggregates recomputed bottom-up must match stored values.
  std::set<Node*> roots;
  for (auto& per_level : loops_) {
    for (Node* n : per_level) {
      if (n) roots.insert(root_of(n));
    }
  }
  struct Agg {
    std::int32_t cnt, loops;
    bool nontree, levelarc;
  };
  auto recount = [&](Node* n, auto&& self) -> Agg {
    if (!n) return {0, 0, false, false};
    Agg a = self(n->l, self);
    Agg b = self(n->r, self);
    Agg out{static_cast<std::int32_t>(a.cnt + b.cnt + 1),
            static_cast<std::int32_t>(a.loops + b.loops +
                                      (n->vertex >= 0 ? 1 : 0)),
            a.nontree || b.nontree || n->self_nontree,
            a.levelarc || b.levelarc || n->self_levelarc};
    if (out.cnt != n->cnt || out.loops != n->loops ||
        out.nontree != n->sub_nontree || out.levelarc != n->sub_levelarc) {
      throw std::logic_error("stale subtree aggregate");
    }
    return out;
  };
  for (Node* r : roots) recount(r, recount);

  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& ed = edges_[i];
    if (!ed.live) continue;
    if (ed.level < 0 || ed.level >= num_levels_) fail("edge level out of range");
    if (ed.tree) {
      for (int lvl = 0; lvl <= ed.level; ++lvl) {
        auto [a1, a2] = ed.arcs[static_cast<std::size_t>(lvl)];
        if (!a1 || !a2) fail("tree edge missing an arc");
        Node* r = root_of(a1);
        if (r != root_of(a2) || r != root_of(ensure_loop(ed.u, lvl)) ||
            r != root_of(ensure_loop(ed.v, lvl))) {
          fail("tree edge arcs and endpoints in different tours");
        }
        bool want = lvl == ed.level;
        if (a1->self_levelarc != want || a2->self_levelarc != want) {
          fail("levelarc mark on wrong forest");
        }
      }
    } else {
      auto e = static_cast<EdgeHandle>(i);
      for (VertexHandle w : {ed.u, ed.v}) {
        const auto& bags = adj_[static_cast<std::size_t>(w)];
        if (bags.size() <= static_cast<std::size_t>(ed.level) ||
            !bags[static_cast<std::size_t>(ed.level)].count(e)) {
          fail("non-tree edge missing from endpoint bag");
        }
      }
      if (!connected_at(ed.u, ed.v, ed.level)) {
        fail("non-tree edge spans two trees of its level");
      }
    }
  }
  // Trees shrink as levels rise: a level-lvl tree fits in capacity/2^lvl.
  for (std::size_t v = 0; v < loops_.size(); ++v) {
    const auto& per_level = loops_[v];
    for (std::size_t lvl = 0; lvl < per_level.size(); ++lvl) {
      if (!per_level[lvl]) continue;
      std::size_t limit = std::max<std::size_t>(capacity_ >> lvl, 1);
      if (static_cast<std::size_t>(root_of(per_level[lvl])->loops) > limit) {
        fail("tree exceeds its level size bound");
      }
    }
  }
  // Loop-node identities are stable.
  for (std::size_t v = 0; v < loops_.size(); ++v) {
    for (Node* n : loops_[v]) {
      if (n && n->vertex != static_cast<VertexHandle>(v)) {
        fail("loop node vertex mismatch");
      }
    }
  }
}

}  // namespace diskgraph
