#include "nearforest/forest_metrics.hpp"

#include <algorithm>
#include <deque>

namespace nearforest {

long excess(const Component& c) {
  return c.edge_count - static_cast<long>(c.vertices.size()) + 1;
}

ExcessReport excess_report(const MultiGraph& g) {
  ExcessReport report;
  for (auto& comp : components(g)) {
    long ex = excess(comp);
    report.graph_excess = std::max(report.graph_excess, ex);
    report.per_component.push_back({std::move(comp), ex});
  }
  return report;
}

bool is_r_pseudoforest(const MultiGraph& g, int r) {
  for (const auto& comp : components(g))
    if (excess(comp) > r) return false;
  return true;
}

std::optional<std::vector<VertexId>> find_short_cycle(const MultiGraph& g) {
  for (VertexId v : g.vertices())
    if (g.loops(v) > 0) return std::vector<VertexId>{v};
  for (VertexId v : g.vertices())
    for (const auto& [w, mult] : g.neighbors(v))
      if (mult >= 2) return std::vector<VertexId>{v, w};

  std::optional<std::vector<VertexId>> best;
  std::vector<int> dist(g.id_bound());
  std::vector<VertexId> parent(g.id_bound());
  for (VertexId s : g.vertices()) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[s] = 0;
    parent[s] = s;
    std::deque<VertexId> queue{s};
    bool closed = false;
    while (!queue.empty() && !closed) {
      VertexId v = queue.front();
      queue.pop_front();
      for (const auto& [w, mult] : g.neighbors(v)) {
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          parent[w] = v;
          queue.push_back(w);
        } else if (w != parent[v]) {
          // Non-tree edge v-w closes a cycle through the BFS tree.
          std::vector<VertexId> left{v}, right{w};
          while (left.back() != right.back()) {
            if (dist[left.back()] >= dist[right.back()])
              left.push_back(parent[left.back()]);
            else
              right.push_back(parent[right.back()]);
          }
          right.pop_back();
          left.insert(left.end(), right.rbegin(), right.rend());
          if (!best || left.size() < best->size()) best = std::move(left);
          closed = true;
          break;
        }
      }
    }
    if (best && best->size() == 3) break;
  }
  return best;
}

namespace {

void prune_low_degree(MultiGraph& g) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (VertexId v : g.vertices()) {
      if (g.degree(v) <= 1) {
        g.delete_vertex(v);
        changed = true;
      }
    }
  }
}

bool fvs_within(MultiGraph g, int budget, VertexSet& chosen) {
  prune_low_degree(g);
  auto cycle = find_short_cycle(g);
  if (!cycle) return true;
  if (budget == 0) return false;
  for (VertexId v : *cycle) {
    MultiGraph child = g;
    child.delete_vertex(v);
    chosen.insert(v);
    if (fvs_within(std::move(child), budget - 1, chosen)) return true;
    chosen.erase(v);
  }
  return false;
}

}  // namespace

std::optional<VertexSet> exact_fvs(const MultiGraph& g, int budget) {
  for (int b = 0; b <= budget; ++b) {
    VertexSet chosen;
    if (fvs_within(g, b, chosen)) return chosen;
  }
  return std::nullopt;
}

std::optional<int> exact_fvs_size(const MultiGraph& g, int budget) {
  auto fvs = exact_fvs(g, budget);
  if (!fvs) return std::nullopt;
  return static_cast<int>(fvs->size());
}

bool is_d_quasi_forest(const MultiGraph& g, int d) {
  for (const auto& comp : components(g)) {
    // A component with excess at most 1 needs at most one deletion.
    if (excess(comp) == 0) continue;
    if (d >= 1 && excess(comp) <= 1) continue;
    if (!exact_fvs_size(g.induced(comp.vertices), d)) return false;
  }
  return true;
}

}  // namespace nearforest
