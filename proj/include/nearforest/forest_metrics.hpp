#pragma once

#include <optional>
#include <vector>

#include "nearforest/multigraph.hpp"

namespace nearforest {

struct ComponentExcess {
  Component component;
  long excess = 0;
};

struct ExcessReport {
  std::vector<ComponentExcess> per_component;
  long graph_excess = 0;  // max over components, 0 for the empty graph
};

// |E(C)| - |V(C)| + 1.
long excess(const Component& c);

ExcessReport excess_report(const MultiGraph& g);

// Every component has excess at most r.
bool is_r_pseudoforest(const MultiGraph& g, int r);

// Minimum feedback vertex set size if it is at most `budget`, nullopt
// otherwise. Loops and parallel edges count as cycles.
std::optional<int> exact_fvs_size(const MultiGraph& g, int budget);

// Some minimum feedback vertex set, or nullopt when its size exceeds budget.
std::optional<VertexSet> exact_fvs(const MultiGraph& g, int budget);

// Every component admits a feedback vertex set of size at most d.
bool is_d_quasi_forest(const MultiGraph& g, int d);

// Vertices of one cycle (a loop gives one vertex, a parallel pair two), or
// nullopt when g is a forest.
std::optional<std::vector<VertexId>> find_short_cycle(const MultiGraph& g);

}  // namespace nearforest
