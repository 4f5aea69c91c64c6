#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace nearforest {

using VertexId = std::uint32_t;
using VertexSet = std::set<VertexId>;

// Undirected multigraph with parallel edges and loops.
//
// Vertex ids are dense indices handed out at construction (or by
// add_vertex) and are never reused: deleting a vertex tombstones its id, so
// ids stay meaningful across every mutation of one graph value. A loop adds
// 2 to the degree of its vertex and 1 to the edge count.
class MultiGraph {
 public:
  using Adjacency = std::map<VertexId, int>;

  MultiGraph() = default;
  explicit MultiGraph(std::size_t vertex_count);

  VertexId add_vertex();
  void add_edge(VertexId u, VertexId v);
  void delete_vertex(VertexId v);
  void delete_vertices(const VertexSet& vs);

  // Removes a loop-free degree-2 vertex and joins its two edge endpoints by
  // a new edge, or by a new loop when both edges go to the same vertex.
  void bypass_degree2(VertexId u);

  bool contains(VertexId v) const { return v < alive_.size() && alive_[v]; }
  std::size_t id_bound() const { return alive_.size(); }
  std::size_t vertex_count() const { return vertex_count_; }
  std::size_t edge_count() const { return edge_count_; }
  bool empty() const { return vertex_count_ == 0; }

  std::vector<VertexId> vertices() const;
  VertexSet vertex_set() const;

  int multiplicity(VertexId u, VertexId v) const;
  int loops(VertexId v) const;
  int degree(VertexId v) const;
  // Distinct non-loop neighbors with their multiplicities, ascending id.
  const Adjacency& neighbors(VertexId v) const;

  int max_degree() const;
  int min_degree() const;

  // Same ids, every vertex outside `keep` tombstoned.
  MultiGraph induced(const VertexSet& keep) const;
  MultiGraph without(const VertexSet& drop) const;

  // Symmetry plus the degree and edge-count identities.
  bool is_consistent() const;

  friend bool operator==(const MultiGraph& a, const MultiGraph& b);

 private:
  void require(VertexId v) const;

  std::vector<Adjacency> adjacency_;
  std::vector<int> loops_;
  std::vector<bool> alive_;
  std::size_t vertex_count_ = 0;
  std::size_t edge_count_ = 0;
};

struct Component {
  VertexSet vertices;
  long edge_count = 0;
};

// Connected components ordered by smallest vertex id.
std::vector<Component> components(const MultiGraph& g);

// Components of g[region]; edges leaving the region are ignored.
std::vector<Component> components_within(const MultiGraph& g, const VertexSet& region);

struct RegionNeighbors {
  VertexSet distinct;
  int total = 0;
};

RegionNeighbors neighbors_in(const MultiGraph& g, VertexId v, const VertexSet& region);

// Shortest path inside `inside` whose two endpoints have edges to `anchors`
// and whose internal vertices have none. A single vertex qualifies when it
// carries at least two edges to `anchors`. Ties go to the lexicographically
// smallest vertex sequence.
std::optional<std::vector<VertexId>> shortest_attached_path(const MultiGraph& g,
                                                            const VertexSet& inside,
                                                            const VertexSet& anchors);

}  // namespace nearforest
