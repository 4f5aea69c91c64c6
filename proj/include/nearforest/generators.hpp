#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "nearforest/dqf_engine.hpp"
#include "nearforest/multigraph.hpp"

namespace nearforest {

// mt19937_64 with our own bounded draw, so a seed gives the same stream on
// every standard library (std::uniform_int_distribution is not portable).
class Rng {
 public:
  static constexpr const char* algorithm = "mt19937_64";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [lo, hi].
  std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi);
  int uniform_int(int lo, int hi) { return lo + static_cast<int>(uniform(0, static_cast<std::uint64_t>(hi - lo))); }
  // True with probability num/den.
  bool chance(std::uint64_t num, std::uint64_t den) { return uniform(0, den - 1) < num; }

  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) std::swap(items[i - 1], items[uniform(0, i - 1)]);
  }

 private:
  std::mt19937_64 engine_;
};

struct PlantedInstance {
  MultiGraph g;
  VertexSet planted;
};

// Connected multigraph with max degree <= max_degree in which deleting the
// k planted vertices leaves an r-pseudoforest. Throws PreconditionError
// unless n > k, max_degree >= 3, k >= 0 and r >= 0.
PlantedInstance gen_planted_rpf(int n, int k, int r, int max_degree, std::uint64_t seed);

// Disjoint dqf instance whose G - Z holds `copies` trees of one
// neighborhood type, next to a few trees of other types. Throws
// PreconditionError when copies < k+d+3 would make the fixture pointless
// unless allow_small is set.
dqf::DisjointInstance gen_dup_tree_dqf(int k, int d, int copies, std::uint64_t seed, bool allow_small = false);

// n vertices, m edges with endpoints drawn uniformly; loops allowed.
MultiGraph gen_random_multigraph(int n, int m, std::uint64_t seed);

// Every connected simple graph on n vertices up to isomorphism, in a fixed
// order. n <= 7.
const std::vector<MultiGraph>& connected_graphs(int n);

MultiGraph complete_graph(int n);
MultiGraph cycle_graph(int n);
MultiGraph path_graph(int n);
MultiGraph star_graph(int leaves);
MultiGraph petersen_graph();

}  // namespace nearforest
