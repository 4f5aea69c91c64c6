#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <vector>

#include "nearforest/multigraph.hpp"
#include "nearforest/solution.hpp"

namespace nearforest::dqf {

struct Instance {
  MultiGraph g;
  int k = 0;
  int d = 0;
};

// (G, Z, k, d): find X with |X| <= k, X disjoint from Z, G - X a
// d-quasi-forest.
struct DisjointInstance {
  MultiGraph g;
  VertexSet z;
  int k = 0;
  int d = 0;
};

// How a tree of G - Z attaches to Z: its neighbor set, and for each
// neighbor whether it sends two or more edges into the tree.
struct NeighborhoodType {
  std::vector<VertexId> neighbor_set;
  std::vector<bool> multi_flags;

  friend auto operator<=>(const NeighborhoodType&, const NeighborhoodType&) = default;
};

NeighborhoodType neighborhood_type(const MultiGraph& g, const VertexSet& z, const VertexSet& tree);

struct ForcedVertexReport {
  VertexSet forced;    // N1
  VertexSet unforced;  // N2
  // k+d+1 disjoint R-paths for each forced vertex.
  std::map<VertexId, std::vector<std::vector<VertexId>>> packings;
  // B_u, at most 2(k+d) vertices, for each unforced vertex.
  std::map<VertexId, VertexSet> separators;
};

struct Child {
  DisjointInstance instance;
  VertexSet deleted;
};

struct Branching {
  // No children and pruned == true means the parent is a no-instance.
  std::vector<Child> children;
  bool pruned = false;
};

struct Rule3Outcome {
  DisjointInstance instance;
  VertexSet forced;
  // G[Z] itself is not a d-quasi-forest.
  bool no_instance = false;
};

struct Stats {
  std::uint64_t nodes_expanded = 0;
  std::uint64_t disjoint_solves = 0;
  std::uint64_t fallback_nodes = 0;

  std::uint64_t cyclic_branchings = 0;
  std::uint64_t cyclic_prunes = 0;
  // Pruned by the feedback-number bound while the component count stayed
  // within k+d.
  std::uint64_t fvs_sum_only_prunes = 0;
  // Vertices whose adjacent feedback numbers sum past k+d without a prune:
  // a plain sum test would have cut these branches.
  std::uint64_t fvs_sum_unpruned = 0;
  std::uint64_t big_tree_branchings = 0;
  std::uint64_t big_tree_prunes = 0;
  std::uint64_t rule4_trees_removed = 0;
  std::uint64_t forced_vertices = 0;
  std::uint64_t unforced_vertices = 0;

  std::size_t max_z_after_cyclic = 0;
  std::size_t max_z_after_partition = 0;
  std::uint64_t ledger_violations = 0;

  std::uint64_t tree_guesses = 0;
  std::uint64_t separation_guesses = 0;
  std::uint64_t pruned_pass_solutions = 0;
  std::uint64_t full_pass_solutions = 0;

  void merge(const Stats& other);
};

struct Options {
  // Replace the staged pipeline by plain exhaustive branching.
  bool fallback = false;
  // Z-size ledger breach: throw InvariantViolation, or finish that subtree
  // with the fallback search and count the breach.
  bool abort_on_ledger_violation = true;
  std::ostream* trace = nullptr;
};

// Deletes vertices outside Z of degree at most 1, to a fixpoint.
DisjointInstance dqf_rule1(DisjointInstance inst);
// Bypasses loop-free degree-2 vertices outside Z that have a neighbor
// outside Z, to a fixpoint.
DisjointInstance dqf_rule2(DisjointInstance inst);
// Both of the above until neither applies.
DisjointInstance dqf_rule12(DisjointInstance inst);

// Deletes every u outside Z with G[Z + u] not a d-quasi-forest.
Rule3Outcome dqf_rule3(DisjointInstance inst);

// Makes G - Z acyclic by branching every vertex of a minimum feedback
// vertex set of each cyclic component into the solution or into Z.
Branching branch_cyclic_components(const DisjointInstance& inst, Stats* stats = nullptr);

// Splits trees of G - Z with at least d+2 Z-neighbors by branching boundary
// vertices into the solution or into Z. Requires G - Z to be a forest.
Branching partition_big_trees(const DisjointInstance& inst, Stats* stats = nullptr);

// Boundary vertices chosen inside one tree; every piece left after removing
// them has at most d+1 neighbors in Z plus the boundary.
VertexSet tree_boundary(const MultiGraph& g, const VertexSet& z, const VertexSet& tree, int d);

// Keeps the first k+d+2 trees (by smallest vertex id) of every
// neighborhood type and deletes the rest.
DisjointInstance rule4_dedup_trees(DisjointInstance inst, Stats* stats = nullptr);

// Forest-restricted R-path packing: a maximum family of vertex-disjoint
// paths with distinct ends in r_set inside g[region] (a forest), plus a
// hitting set of the same size.
struct ForestPacking {
  std::vector<std::vector<VertexId>> paths;
  VertexSet separator;
};
ForestPacking forest_path_packing(const MultiGraph& g, const VertexSet& region, const VertexSet& r_set);

ForcedVertexReport detect_forced(const DisjointInstance& inst);

Solution final_branch(const DisjointInstance& inst, const ForcedVertexReport& report, Stats* stats = nullptr);

// Stage bounds on |Z| for a disjoint root with the given parameters.
std::size_t z_bound_after_cyclic(std::size_t z0, int k, int d);
std::size_t z_bound_after_partition(std::size_t z0, int k, int d);

Solution solve_disjoint(const DisjointInstance& inst, Stats* stats = nullptr, const Options& options = {});

// Iterative compression over solve_disjoint.
Solution solve_dqf(const Instance& inst, Stats* stats = nullptr, const Options& options = {});

}  // namespace nearforest::dqf
