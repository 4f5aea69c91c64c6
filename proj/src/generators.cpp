#include "nearforest/generators.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <map>
#include <set>

#include "nearforest/errors.hpp"

namespace nearforest {

std::uint64_t Rng::uniform(std::uint64_t lo, std::uint64_t hi) {
  const std::uint64_t span = hi - lo;
  if (span == std::numeric_limits<std::uint64_t>::max()) return engine_();
  const std::uint64_t range = span + 1;
  // Reject the top sliver so every residue is equally likely.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return lo + x % range;
}

namespace {

class DegreeCapped {
 public:
  DegreeCapped(MultiGraph& g, int cap) : g_(g), cap_(cap), degree_(g.id_bound(), 0) {}

  bool fits(VertexId u, VertexId v) const {
    if (u == v) return degree_[u] + 2 <= cap_;
    return degree_[u] < cap_ && degree_[v] < cap_;
  }

  void link(VertexId u, VertexId v) {
    g_.add_edge(u, v);
    if (u == v) {
      degree_[u] += 2;
    } else {
      ++degree_[u];
      ++degree_[v];
    }
  }

  // Links u to a random member of pool with spare degree, if there is one.
  bool link_random(Rng& rng, VertexId u, const std::vector<VertexId>& pool) {
    std::vector<VertexId> open;
    for (VertexId v : pool)
      if (fits(u, v)) open.push_back(v);
    if (open.empty()) return false;
    link(u, open[rng.uniform(0, open.size() - 1)]);
    return true;
  }

 private:
  MultiGraph& g_;
  int cap_;
  std::vector<int> degree_;
};

}  // namespace

PlantedInstance gen_planted_rpf(int n, int k, int r, int max_degree, std::uint64_t seed) {
  if (k < 0 || r < 0 || n <= k || max_degree < 3)
    throw PreconditionError("gen_planted_rpf: need n > k >= 0, r >= 0, max_degree >= 3");
  Rng rng(seed);
  std::vector<VertexId> label(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) label[static_cast<std::size_t>(i)] = static_cast<VertexId>(i);
  rng.shuffle(label);

  PlantedInstance out{MultiGraph(static_cast<std::size_t>(n)), {}};
  DegreeCapped edges(out.g, max_degree);
  const auto f = static_cast<std::size_t>(n - k);
  std::vector<VertexId> forest(label.begin(), label.begin() + static_cast<long>(f));
  out.planted.insert(label.begin() + static_cast<long>(f), label.end());

  // Spanning tree of the kept part, then up to r extra edges inside it.
  std::vector<VertexId> placed{forest[0]};
  for (std::size_t i = 1; i < f; ++i) {
    if (!edges.link_random(rng, forest[i], placed)) throw PreconditionError("gen_planted_rpf: degree cap too tight");
    placed.push_back(forest[i]);
  }
  for (int extra = 0; extra < r; ++extra) {
    for (int attempt = 0; attempt < 16; ++attempt) {
      VertexId u = forest[rng.uniform(0, f - 1)];
      VertexId v = forest[rng.uniform(0, f - 1)];
      if (!edges.fits(u, v)) continue;
      edges.link(u, v);
      break;
    }
  }

  // Planted vertices: one edge into what is already placed keeps the graph
  // connected, the rest land anywhere.
  for (VertexId x : out.planted) {
    if (!edges.link_random(rng, x, placed)) throw PreconditionError("gen_planted_rpf: degree cap too tight");
    placed.push_back(x);
    const int more = rng.uniform_int(1, max_degree - 1);
    for (int i = 0; i < more; ++i) edges.link_random(rng, x, label);
  }
  return out;
}

dqf::DisjointInstance gen_dup_tree_dqf(int k, int d, int copies, std::uint64_t seed, bool allow_small) {
  if (k < 0 || d < 0 || copies < 0) throw PreconditionError("gen_dup_tree_dqf: negative parameter");
  if (!allow_small && copies < k + d + 3) throw PreconditionError("gen_dup_tree_dqf: copies < k+d+3");
  Rng rng(seed);
  dqf::DisjointInstance inst;
  inst.k = k;
  inst.d = d;
  MultiGraph& g = inst.g;

  const int zsize = d + 2;
  std::vector<VertexId> z;
  for (int i = 0; i < zsize; ++i) {
    VertexId v = g.add_vertex();
    if (!z.empty()) g.add_edge(v, z[rng.uniform(0, z.size() - 1)]);
    z.push_back(v);
    inst.z.insert(v);
  }

  std::vector<VertexId> attach = z;
  rng.shuffle(attach);
  attach.resize(static_cast<std::size_t>(rng.uniform_int(1, std::min(d + 1, zsize))));
  std::sort(attach.begin(), attach.end());
  std::vector<bool> doubled;
  for (std::size_t i = 0; i < attach.size(); ++i) doubled.push_back(rng.chance(1, 2));

  auto add_tree = [&](const std::vector<bool>& flags) {
    std::vector<VertexId> tree;
    const int size = rng.uniform_int(1, 3);
    for (int i = 0; i < size; ++i) {
      VertexId v = g.add_vertex();
      if (!tree.empty()) g.add_edge(v, tree[rng.uniform(0, tree.size() - 1)]);
      tree.push_back(v);
    }
    for (std::size_t i = 0; i < attach.size(); ++i) {
      const int count = flags[i] ? 2 : 1;
      for (int j = 0; j < count; ++j) g.add_edge(tree[rng.uniform(0, tree.size() - 1)], attach[i]);
    }
  };

  for (int c = 0; c < copies; ++c) add_tree(doubled);
  std::vector<bool> other = doubled;
  other[0] = !other[0];
  add_tree(other);
  return inst;
}

MultiGraph gen_random_multigraph(int n, int m, std::uint64_t seed) {
  if (n < 0 || m < 0 || (n == 0 && m > 0)) throw PreconditionError("gen_random_multigraph: bad size");
  Rng rng(seed);
  MultiGraph g(static_cast<std::size_t>(n));
  for (int i = 0; i < m; ++i) {
    auto u = static_cast<VertexId>(rng.uniform(0, static_cast<std::uint64_t>(n - 1)));
    auto v = static_cast<VertexId>(rng.uniform(0, static_cast<std::uint64_t>(n - 1)));
    g.add_edge(u, v);
  }
  return g;
}

namespace {

constexpr int kMaxEnumerated = 7;

using AdjRows = std::array<std::uint8_t, kMaxEnumerated>;

std::uint32_t encode(const AdjRows& adj, int n, const std::vector<int>& order) {
  std::uint32_t code = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) code = code << 1 | ((adj[order[i]] >> order[j]) & 1u);
  return code;
}

// Smallest code over the orderings that list vertices by refined degree
// class; isomorphic graphs share the class sequence, so this is canonical.
std::uint32_t canonical(const AdjRows& adj, int n) {
  std::vector<std::pair<std::vector<int>, int>> keyed;
  for (int v = 0; v < n; ++v) {
    std::vector<int> key{__builtin_popcount(adj[v])};
    std::vector<int> around;
    for (int w = 0; w < n; ++w)
      if (adj[v] >> w & 1u) around.push_back(__builtin_popcount(adj[w]));
    std::sort(around.begin(), around.end());
    key.insert(key.end(), around.begin(), around.end());
    keyed.emplace_back(std::move(key), v);
  }
  std::sort(keyed.begin(), keyed.end());
  std::vector<int> order;
  std::vector<std::pair<std::size_t, std::size_t>> classes;
  for (std::size_t i = 0; i < keyed.size();) {
    std::size_t j = i;
    while (j < keyed.size() && keyed[j].first == keyed[i].first) ++j;
    classes.emplace_back(i, j);
    i = j;
  }
  for (const auto& [key, v] : keyed) order.push_back(v);

  std::uint32_t best = std::numeric_limits<std::uint32_t>::max();
  auto recurse = [&](auto&& self, std::size_t c) -> void {
    if (c == classes.size()) {
      best = std::min(best, encode(adj, n, order));
      return;
    }
    auto first = order.begin() + static_cast<long>(classes[c].first);
    auto last = order.begin() + static_cast<long>(classes[c].second);
    std::sort(first, last);
    do {
      self(self, c + 1);
    } while (std::next_permutation(first, last));
  };
  recurse(recurse, 0);
  return best;
}

MultiGraph to_graph(const AdjRows& adj, int n) {
  MultiGraph g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (adj[i] >> j & 1u) g.add_edge(static_cast<VertexId>(i), static_cast<VertexId>(j));
  return g;
}

// Every connected graph minus a non-cut vertex stays connected, so adding a
// vertex to every connected graph one size down reaches all of them.
std::vector<std::vector<AdjRows>> build_connected() {
  std::vector<std::vector<AdjRows>> by_size(kMaxEnumerated + 1);
  by_size[1].push_back(AdjRows{});
  for (int n = 2; n <= kMaxEnumerated; ++n) {
    std::map<std::uint32_t, AdjRows> seen;
    for (const AdjRows& base : by_size[static_cast<std::size_t>(n - 1)]) {
      for (std::uint32_t mask = 1; mask < (1u << (n - 1)); ++mask) {
        AdjRows adj = base;
        adj[n - 1] = static_cast<std::uint8_t>(mask);
        for (int v = 0; v < n - 1; ++v)
          if (mask >> v & 1u) adj[v] |= static_cast<std::uint8_t>(1u << (n - 1));
        seen.emplace(canonical(adj, n), adj);
      }
    }
    for (const auto& [code, adj] : seen) by_size[static_cast<std::size_t>(n)].push_back(adj);
  }
  return by_size;
}

}  // namespace

const std::vector<MultiGraph>& connected_graphs(int n) {
  if (n < 1 || n > kMaxEnumerated) throw PreconditionError("connected_graphs: n must lie in [1, 7]");
  static const std::vector<std::vector<MultiGraph>> cache = [] {
    auto rows = build_connected();
    std::vector<std::vector<MultiGraph>> out(rows.size());
    for (std::size_t n = 1; n < rows.size(); ++n)
      for (const auto& adj : rows[n]) out[n].push_back(to_graph(adj, static_cast<int>(n)));
    return out;
  }();
  return cache[static_cast<std::size_t>(n)];
}

MultiGraph complete_graph(int n) {
  MultiGraph g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.add_edge(static_cast<VertexId>(i), static_cast<VertexId>(j));
  return g;
}

MultiGraph cycle_graph(int n) {
  MultiGraph g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) g.add_edge(static_cast<VertexId>(i), static_cast<VertexId>((i + 1) % n));
  return g;
}

MultiGraph path_graph(int n) {
  MultiGraph g(static_cast<std::size_t>(n));
  for (int i = 0; i + 1 < n; ++i) g.add_edge(static_cast<VertexId>(i), static_cast<VertexId>(i + 1));
  return g;
}

MultiGraph star_graph(int leaves) {
  MultiGraph g(static_cast<std::size_t>(leaves) + 1);
  for (int i = 1; i <= leaves; ++i) g.add_edge(0, static_cast<VertexId>(i));
  return g;
}

MultiGraph petersen_graph() {
  MultiGraph g(10);
  for (VertexId i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);
    g.add_edge(i, i + 5);
    g.add_edge(i + 5, (i + 2) % 5 + 5);
  }
  return g;
}

}  // namespace nearforest
