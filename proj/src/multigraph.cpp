#include "nearforest/multigraph.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <string>

#include "nearforest/errors.hpp"

namespace nearforest {

MultiGraph::MultiGraph(std::size_t vertex_count)
    : adjacency_(vertex_count), loops_(vertex_count, 0), alive_(vertex_count, true),
      vertex_count_(vertex_count) {}

VertexId MultiGraph::add_vertex() {
  adjacency_.emplace_back();
  loops_.push_back(0);
  alive_.push_back(true);
  ++vertex_count_;
  return static_cast<VertexId>(alive_.size() - 1);
}

void MultiGraph::require(VertexId v) const {
  if (!contains(v)) throw GraphError("unknown vertex id " + std::to_string(v));
}

void MultiGraph::add_edge(VertexId u, VertexId v) {
  require(u);
  require(v);
  if (u == v) {
    ++loops_[u];
  } else {
    ++adjacency_[u][v];
    ++adjacency_[v][u];
  }
  ++edge_count_;
}

void MultiGraph::delete_vertex(VertexId v) {
  require(v);
  for (const auto& [w, mult] : adjacency_[v]) {
    adjacency_[w].erase(v);
    edge_count_ -= static_cast<std::size_t>(mult);
  }
  edge_count_ -= static_cast<std::size_t>(loops_[v]);
  adjacency_[v].clear();
  loops_[v] = 0;
  alive_[v] = false;
  --vertex_count_;
}

void MultiGraph::delete_vertices(const VertexSet& vs) {
  for (VertexId v : vs) delete_vertex(v);
}

void MultiGraph::bypass_degree2(VertexId u) {
  require(u);
  if (loops_[u] != 0) throw PreconditionError("bypass_degree2: vertex carries a loop");
  if (degree(u) != 2) throw PreconditionError("bypass_degree2: degree is not 2");
  const auto& adj = adjacency_[u];
  VertexId x = adj.begin()->first;
  VertexId y = adj.size() == 2 ? std::next(adj.begin())->first : x;
  delete_vertex(u);
  add_edge(x, y);
}

std::vector<VertexId> MultiGraph::vertices() const {
  std::vector<VertexId> out;
  out.reserve(vertex_count_);
  for (VertexId v = 0; v < alive_.size(); ++v)
    if (alive_[v]) out.push_back(v);
  return out;
}

VertexSet MultiGraph::vertex_set() const {
  auto vs = vertices();
  return VertexSet(vs.begin(), vs.end());
}

int MultiGraph::multiplicity(VertexId u, VertexId v) const {
  require(u);
  require(v);
  if (u == v) return loops_[u];
  auto it = adjacency_[u].find(v);
  return it == adjacency_[u].end() ? 0 : it->second;
}

int MultiGraph::loops(VertexId v) const {
  require(v);
  return loops_[v];
}

int MultiGraph::degree(VertexId v) const {
  require(v);
  int d = 2 * loops_[v];
  for (const auto& [w, mult] : adjacency_[v]) d += mult;
  return d;
}

const MultiGraph::Adjacency& MultiGraph::neighbors(VertexId v) const {
  require(v);
  return adjacency_[v];
}

int MultiGraph::max_degree() const {
  int best = 0;
  for (VertexId v : vertices()) best = std::max(best, degree(v));
  return best;
}

int MultiGraph::min_degree() const {
  if (empty()) return 0;
  int best = std::numeric_limits<int>::max();
  for (VertexId v : vertices()) best = std::min(best, degree(v));
  return best;
}

MultiGraph MultiGraph::induced(const VertexSet& keep) const {
  MultiGraph out = *this;
  for (VertexId v : vertices())
    if (!keep.count(v)) out.delete_vertex(v);
  return out;
}

MultiGraph MultiGraph::without(const VertexSet& drop) const {
  MultiGraph out = *this;
  for (VertexId v : drop)
    if (out.contains(v)) out.delete_vertex(v);
  return out;
}

bool MultiGraph::is_consistent() const {
  std::size_t alive = 0;
  std::size_t twice_plain = 0;
  std::size_t loop_total = 0;
  for (VertexId v = 0; v < alive_.size(); ++v) {
    if (!alive_[v]) {
      if (!adjacency_[v].empty() || loops_[v] != 0) return false;
      continue;
    }
    ++alive;
    if (loops_[v] < 0) return false;
    loop_total += static_cast<std::size_t>(loops_[v]);
    for (const auto& [w, mult] : adjacency_[v]) {
      if (w == v || mult < 1 || !contains(w)) return false;
      auto back = adjacency_[w].find(v);
      if (back == adjacency_[w].end() || back->second != mult) return false;
      twice_plain += static_cast<std::size_t>(mult);
    }
  }
  return alive == vertex_count_ && twice_plain % 2 == 0 &&
         edge_count_ == twice_plain / 2 + loop_total;
}

bool operator==(const MultiGraph& a, const MultiGraph& b) {
  if (a.vertices() != b.vertices() || a.edge_count_ != b.edge_count_) return false;
  for (VertexId v : a.vertices())
    if (a.adjacency_[v] != b.adjacency_[v] || a.loops_[v] != b.loops_[v]) return false;
  return true;
}

namespace {

std::vector<Component> collect_components(const MultiGraph& g, const VertexSet* region) {
  auto in_region = [&](VertexId v) { return region == nullptr || region->count(v) > 0; };
  std::vector<bool> seen(g.id_bound(), false);
  std::vector<Component> out;
  for (VertexId start : g.vertices()) {
    if (seen[start] || !in_region(start)) continue;
    Component comp;
    long twice_plain = 0;
    std::deque<VertexId> queue{start};
    seen[start] = true;
    while (!queue.empty()) {
      VertexId v = queue.front();
      queue.pop_front();
      comp.vertices.insert(v);
      comp.edge_count += g.loops(v);
      for (const auto& [w, mult] : g.neighbors(v)) {
        if (!in_region(w)) continue;
        twice_plain += mult;
        if (!seen[w]) {
          seen[w] = true;
          queue.push_back(w);
        }
      }
    }
    comp.edge_count += twice_plain / 2;
    out.push_back(std::move(comp));
  }
  return out;
}

}  // namespace

std::vector<Component> components(const MultiGraph& g) { return collect_components(g, nullptr); }

std::vector<Component> components_within(const MultiGraph& g, const VertexSet& region) {
  return collect_components(g, &region);
}

RegionNeighbors neighbors_in(const MultiGraph& g, VertexId v, const VertexSet& region) {
  RegionNeighbors out;
  for (const auto& [w, mult] : g.neighbors(v)) {
    if (region.count(w)) {
      out.distinct.insert(w);
      out.total += mult;
    }
  }
  return out;
}

std::optional<std::vector<VertexId>> shortest_attached_path(const MultiGraph& g,
                                                            const VertexSet& inside,
                                                            const VertexSet& anchors) {
  constexpr int kUnreached = -1;
  std::vector<int> anchor_edges(g.id_bound(), 0);
  std::vector<VertexId> touching;
  for (VertexId v : inside) {
    if (!g.contains(v)) continue;
    anchor_edges[v] = neighbors_in(g, v, anchors).total;
    if (anchor_edges[v] > 0) touching.push_back(v);
  }
  if (touching.empty()) return std::nullopt;
  for (VertexId v : touching)
    if (anchor_edges[v] >= 2) return std::vector<VertexId>{v};

  auto usable = [&](VertexId w) { return inside.count(w) > 0 && g.contains(w); };

  // Distance from `s` to the nearest other touching vertex; touching
  // vertices are endpoints only and are never expanded.
  auto nearest_from = [&](VertexId s) {
    std::vector<int> dist(g.id_bound(), kUnreached);
    std::deque<VertexId> queue{s};
    dist[s] = 0;
    while (!queue.empty()) {
      VertexId v = queue.front();
      queue.pop_front();
      if (v != s && anchor_edges[v] > 0) return dist[v];
      for (const auto& [w, mult] : g.neighbors(v)) {
        if (!usable(w) || dist[w] != kUnreached) continue;
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
    return kUnreached;
  };

  int best = kUnreached;
  VertexId start = 0;
  for (VertexId s : touching) {
    int d = nearest_from(s);
    if (d != kUnreached && (best == kUnreached || d < best)) {
      best = d;
      start = s;
    }
  }
  if (best == kUnreached) return std::nullopt;

  // Multi-source distances to the touching vertices other than `start`,
  // travelling through non-touching vertices only.
  std::vector<int> to_end(g.id_bound(), kUnreached);
  std::deque<VertexId> queue;
  for (VertexId t : touching) {
    if (t == start) continue;
    to_end[t] = 0;
    queue.push_back(t);
  }
  while (!queue.empty()) {
    VertexId v = queue.front();
    queue.pop_front();
    for (const auto& [w, mult] : g.neighbors(v)) {
      if (!usable(w) || w == start || anchor_edges[w] > 0 || to_end[w] != kUnreached) continue;
      to_end[w] = to_end[v] + 1;
      queue.push_back(w);
    }
  }

  std::vector<VertexId> path{start};
  VertexId cur = start;
  for (int remaining = best - 1; remaining >= 0; --remaining) {
    bool advanced = false;
    for (const auto& [w, mult] : g.neighbors(cur)) {
      if (w == start || !usable(w) || to_end[w] != remaining) continue;
      path.push_back(w);
      cur = w;
      advanced = true;
      break;
    }
    if (!advanced) throw InvariantViolation("shortest_attached_path: lost the path while walking");
  }
  return path;
}

}  // namespace nearforest
