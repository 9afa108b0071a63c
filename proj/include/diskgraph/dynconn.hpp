#pragma once

#include <array>
#include <cstdint>
#include <deque>
#include <set>
#include <vector>

namespace diskgraph {

using VertexHandle = std::int32_t;
using EdgeHandle = std::int64_t;

// Union-find over an append-only vertex set (union by rank, path
// compression). Backbone for the incremental structure.
class UnionFind {
 public:
  VertexHandle make_vertex();
  VertexHandle find(VertexHandle v);
  // Returns false if already in the same set.
  bool unite(VertexHandle a, VertexHandle b);
  bool same(VertexHandle a, VertexHandle b) { return find(a) == find(b); }
  std::size_t size() const { return parent_.size(); }

 private:
  std::vector<VertexHandle> parent_;
  std::vector<std::int8_t> rank_;
};

// Fully dynamic connectivity on a multigraph, amortized polylog updates:
// a hierarchy of Euler-tour forests with edge levels, where deleting a
// spanning-forest edge searches the smaller side for a replacement,
// promoting scanned edges one level up to pay for future searches.
//
// Handles are never recycled while live; parallel edges are distinct
// handles. Vertex capacity doubles with a full rebuild (handles survive,
// edge levels reset).
class HdtConnectivity {
 public:
  HdtConnectivity();
  ~HdtConnectivity();
  HdtConnectivity(const HdtConnectivity&) = delete;
  HdtConnectivity& operator=(const HdtConnectivity&) = delete;

  VertexHandle add_vertex();
  EdgeHandle insert_edge(VertexHandle u, VertexHandle v);
  void delete_edge(EdgeHandle e);
  bool connected(VertexHandle u, VertexHandle v);

  std::size_t num_vertices() const { return num_vertices_; }
  std::size_t num_edges() const { return num_edges_; }
  std::size_t component_size(VertexHandle u);

  // Verifies the level invariants from first principles:
  //  - a level-L non-tree edge joins vertices of one level-L tree;
  //  - a level-L tree edge is present in every forest 0..L;
  //  - a level-L tree spans at most capacity/2^L vertices;
  //  - all subtree aggregates match a bottom-up recount.
  // Throws std::logic_error on violation. Test/debug hook.
  void check_invariants();

 private:
  struct Node;
  struct Edge;

  Node* alloc_node();
  void free_node(Node* n);
  static void pull(Node* n);
  static void fix_up(Node* n);
  static Node* merge_trees(Node* a, Node* b);
  static std::pair<Node*, Node*> split_at(Node* t, std::size_t k);
  static std::size_t index_of(Node* n);
  static Node* root_of(Node* n);

  Node* ensure_loop(VertexHandle v, int lvl);
  void refresh_nontree_flag(VertexHandle v, int lvl);
  void link(VertexHandle u, VertexHandle v, EdgeHandle e, int lvl);
  void cut(EdgeHandle e, int lvl);
  bool connected_at(VertexHandle u, VertexHandle v, int lvl);
  void rebuild(std::size_t new_capacity);
  void make_tree_edge(EdgeHandle e, int up_to_lvl);

  std::deque<Node> pool_;
  std::vector<Node*> free_nodes_;
  std::deque<Edge> edges_;
  std::vector<EdgeHandle> free_edges_;
  // loops_[v][lvl] / adj_[v][lvl]: Euler-tour loop node and non-tree edge
  // bag of vertex v in the level-lvl forest.
  std::vector<std::vector<Node*>> loops_;
  std::vector<std::vector<std::set<EdgeHandle>>> adj_;
  std::size_t num_vertices_ = 0;
  std::size_t num_edges_ = 0;
  std::size_t capacity_ = 0;
  int num_levels_ = 1;
};

}  // namespace diskgraph
