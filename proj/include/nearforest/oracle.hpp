#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "nearforest/multigraph.hpp"
#include "nearforest/subsets.hpp"

// Brute-force ground truth. Nothing in here calls into the solvers or the
// forest_metrics predicates; graph classes are re-checked with a private
// union-find so the oracle stays an independent route.
namespace nearforest::oracle {

inline constexpr std::size_t kDefaultVertexCap = 14;

struct Options {
  std::size_t vertex_cap = kDefaultVertexCap;
  // Vertices that may not be deleted (the disjoint variants).
  VertexSet undeletable;
};

struct OracleResult {
  // Exact optimum; empty when the cap refused the instance or when no
  // deletion set avoids `undeletable`.
  std::optional<int> opt_size;
  VertexSet one_witness;
  bool node_budget_hit = false;
};

OracleResult min_rpf(const MultiGraph& g, int r, const Options& options = {});
OracleResult min_dqf(const MultiGraph& g, int d, const Options& options = {});

// Independent class membership checks used by the enumeration.
bool is_r_pseudoforest(const MultiGraph& g, int r);
bool is_d_quasi_forest(const MultiGraph& g, int d);
int min_fvs(const MultiGraph& g);

struct PathPacking {
  // s+1 pairwise vertex-disjoint R-paths, when they exist.
  std::vector<std::vector<VertexId>> paths;
  // Otherwise a smallest set (at most 2s) after whose removal no component
  // holds two R-vertices.
  std::optional<VertexSet> separator;
  int max_packing = 0;
  bool node_budget_hit = false;

  bool packing_found() const { return !paths.empty(); }
};

PathPacking path_packing(const MultiGraph& g, const VertexSet& r_set, int s,
                         std::size_t vertex_cap = kDefaultVertexCap);

// True when no component of g - removed contains two vertices of r_set.
bool separates(const MultiGraph& g, const VertexSet& r_set, const VertexSet& removed);

}  // namespace nearforest::oracle
