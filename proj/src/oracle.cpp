#include "nearforest/oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace nearforest::oracle {

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }

  // False when x and y were already joined.
  bool unite(std::size_t x, std::size_t y) {
    x = find(x);
    y = find(y);
    if (x == y) return false;
    parent_[y] = x;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

// Components of g - removed, as vertex lists keyed by union-find root.
std::vector<std::vector<VertexId>> split(const MultiGraph& g, const VertexSet& removed) {
  UnionFind uf(g.id_bound());
  for (VertexId v : g.vertices()) {
    if (removed.count(v)) continue;
    for (const auto& [w, mult] : g.neighbors(v))
      if (!removed.count(w)) uf.unite(v, w);
  }
  std::map<std::size_t, std::vector<VertexId>> groups;
  for (VertexId v : g.vertices())
    if (!removed.count(v)) groups[uf.find(v)].push_back(v);
  std::vector<std::vector<VertexId>> out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  return out;
}

// Acyclicity of g[keep].
bool acyclic(const MultiGraph& g, const VertexSet& keep) {
  UnionFind uf(g.id_bound());
  for (VertexId v : keep) {
    if (g.loops(v) > 0) return false;
    for (const auto& [w, mult] : g.neighbors(v)) {
      if (w < v || !keep.count(w)) continue;
      if (mult > 1 || !uf.unite(v, w)) return false;
    }
  }
  return true;
}

bool component_fvs_at_most(const MultiGraph& g, const std::vector<VertexId>& comp, int d) {
  VertexSet all(comp.begin(), comp.end());
  for (std::size_t size = 0; size <= static_cast<std::size_t>(d) && size <= comp.size(); ++size) {
    bool ok = for_each_subset_of_size(comp, size, [&](const VertexSet& del) {
      VertexSet keep;
      std::set_difference(all.begin(), all.end(), del.begin(), del.end(),
                          std::inserter(keep, keep.end()));
      return acyclic(g, keep);
    });
    if (ok) return true;
  }
  return false;
}

OracleResult minimise(const MultiGraph& g, const Options& options,
                      const std::function<bool(const VertexSet&)>& accepts) {
  OracleResult result;
  if (g.vertex_count() > options.vertex_cap) {
    result.node_budget_hit = true;
    return result;
  }
  std::vector<VertexId> deletable;
  for (VertexId v : g.vertices())
    if (!options.undeletable.count(v)) deletable.push_back(v);
  for (std::size_t size = 0; size <= deletable.size(); ++size) {
    bool found = for_each_subset_of_size(deletable, size, [&](const VertexSet& x) {
      if (!accepts(x)) return false;
      result.one_witness = x;
      return true;
    });
    if (found) {
      result.opt_size = static_cast<int>(size);
      return result;
    }
  }
  return result;
}

}  // namespace

bool is_r_pseudoforest(const MultiGraph& g, int r) {
  for (const auto& comp : split(g, {})) {
    long twice_edges = 0;
    long loops = 0;
    for (VertexId v : comp) {
      loops += g.loops(v);
      for (const auto& [w, mult] : g.neighbors(v)) twice_edges += mult;
    }
    long ex = twice_edges / 2 + loops - static_cast<long>(comp.size()) + 1;
    if (ex > r) return false;
  }
  return true;
}

bool is_d_quasi_forest(const MultiGraph& g, int d) {
  for (const auto& comp : split(g, {}))
    if (!component_fvs_at_most(g, comp, d)) return false;
  return true;
}

int min_fvs(const MultiGraph& g) {
  auto vs = g.vertices();
  int d = 0;
  while (!component_fvs_at_most(g, vs, d)) ++d;
  return d;
}

OracleResult min_rpf(const MultiGraph& g, int r, const Options& options) {
  return minimise(g, options, [&](const VertexSet& x) { return is_r_pseudoforest(g.without(x), r); });
}

OracleResult min_dqf(const MultiGraph& g, int d, const Options& options) {
  return minimise(g, options, [&](const VertexSet& x) { return is_d_quasi_forest(g.without(x), d); });
}

bool separates(const MultiGraph& g, const VertexSet& r_set, const VertexSet& removed) {
  for (const auto& comp : split(g, removed)) {
    int hits = 0;
    for (VertexId v : comp) hits += r_set.count(v) ? 1 : 0;
    if (hits > 1) return false;
  }
  return true;
}

namespace {

// Exhaustive search for a largest family of vertex-disjoint R-paths.
// Internal vertices avoid R: any packing can be shortened to that form.
class PackingSearch {
 public:
  PackingSearch(const MultiGraph& g, const VertexSet& r_set, int target)
      : g_(g), r_set_(r_set), target_(target), used_(g.id_bound(), false) {
    for (VertexId v : r_set)
      if (g.contains(v)) terminals_.push_back(v);
  }

  std::vector<std::vector<VertexId>> run() {
    recurse(0);
    return best_;
  }

 private:
  bool done() const { return static_cast<int>(best_.size()) >= target_; }

  void recurse(std::size_t next) {
    if (current_.size() > best_.size()) best_ = current_;
    if (done()) return;
    while (next < terminals_.size() && used_[terminals_[next]]) ++next;
    if (next >= terminals_.size()) return;
    std::size_t free_terminals = 0;
    for (std::size_t i = next; i < terminals_.size(); ++i) free_terminals += used_[terminals_[i]] ? 0 : 1;
    if (current_.size() + free_terminals / 2 <= best_.size()) return;

    VertexId a = terminals_[next];
    used_[a] = true;
    std::vector<VertexId> path{a};
    extend(path, next);
    used_[a] = false;
    if (done()) return;
    // `a` is not an endpoint of any path.
    used_[a] = true;
    recurse(next + 1);
    used_[a] = false;
  }

  void extend(std::vector<VertexId>& path, std::size_t next) {
    VertexId tail = path.back();
    for (const auto& [w, mult] : g_.neighbors(tail)) {
      if (used_[w] || done()) continue;
      used_[w] = true;
      path.push_back(w);
      if (r_set_.count(w)) {
        current_.push_back(path);
        recurse(next + 1);
        current_.pop_back();
      } else {
        extend(path, next);
      }
      path.pop_back();
      used_[w] = false;
    }
  }

  const MultiGraph& g_;
  const VertexSet& r_set_;
  int target_;
  std::vector<bool> used_;
  std::vector<VertexId> terminals_;
  std::vector<std::vector<VertexId>> current_;
  std::vector<std::vector<VertexId>> best_;
};

}  // namespace

PathPacking path_packing(const MultiGraph& g, const VertexSet& r_set, int s, std::size_t vertex_cap) {
  PathPacking out;
  if (g.vertex_count() > vertex_cap) {
    out.node_budget_hit = true;
    return out;
  }
  auto best = PackingSearch(g, r_set, s + 1).run();
  out.max_packing = static_cast<int>(best.size());
  if (out.max_packing >= s + 1) {
    out.paths = std::move(best);
    return out;
  }
  auto vs = g.vertices();
  for (std::size_t size = 0; size <= static_cast<std::size_t>(2 * s); ++size) {
    bool found = for_each_subset_of_size(vs, size, [&](const VertexSet& b) {
      if (!separates(g, r_set, b)) return false;
      out.separator = b;
      return true;
    });
    if (found) break;
  }
  return out;
}

}  // namespace nearforest::oracle
