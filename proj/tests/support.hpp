#pragma once

#include <string>
#include <vector>

#include "nearforest/generators.hpp"
#include "nearforest/multigraph.hpp"

namespace nearforest::testing {

struct Named {
  std::string name;
  MultiGraph g;
};

// Every connected simple graph on at most 7 vertices.
inline std::vector<Named> small_connected_family() {
  std::vector<Named> out;
  for (int n = 1; n <= 7; ++n) {
    const auto& graphs = connected_graphs(n);
    for (std::size_t i = 0; i < graphs.size(); ++i)
      out.push_back({"connected n=" + std::to_string(n) + " #" + std::to_string(i), graphs[i]});
  }
  return out;
}

// `count` seeded multigraphs on 1..max_n vertices with up to 2n+2 edges,
// loops and parallel edges included.
inline std::vector<Named> random_multigraph_family(int count, int max_n, std::uint64_t base_seed = 1000) {
  std::vector<Named> out;
  Rng rng(base_seed);
  for (int i = 0; i < count; ++i) {
    const int n = rng.uniform_int(1, max_n);
    const int m = rng.uniform_int(0, 2 * n + 2);
    const std::uint64_t seed = base_seed + static_cast<std::uint64_t>(i);
    out.push_back({"random seed=" + std::to_string(seed), gen_random_multigraph(n, m, seed)});
  }
  return out;
}

inline std::vector<Named> sweep_family() {
  auto out = small_connected_family();
  auto more = random_multigraph_family(500, 9);
  out.insert(out.end(), more.begin(), more.end());
  return out;
}

}  // namespace nearforest::testing
