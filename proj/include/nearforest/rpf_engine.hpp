#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "nearforest/multigraph.hpp"
#include "nearforest/solution.hpp"

namespace nearforest::rpf {

struct Instance {
  MultiGraph g;
  int k = 0;
  int r = 0;
};

// (G, S, k, r): find X with |X| <= k, X disjoint from S, G - X an
// r-pseudoforest.
struct DisjointInstance {
  MultiGraph g;
  VertexSet s;
  int k = 0;
  int r = 0;
};

// phi = k + cc(S) + sum over components C of G[S] of (r - ex(C)).
struct SearchMeasure {
  long phi = 0;
};

// A branch child together with the vertices it committed to the solution.
struct Child {
  DisjointInstance instance;
  VertexSet deleted;
};

struct PathBranching {
  std::vector<Child> children;
  // The path P branched on; empty in the single-edge component case.
  std::vector<VertexId> path;
};

struct Stats {
  std::uint64_t nodes_expanded = 0;
  std::uint64_t disjoint_solves = 0;
  std::uint64_t max_nodes_per_disjoint_solve = 0;
  std::uint64_t node_ceiling_violations = 0;

  std::uint64_t measure_checks = 0;
  std::uint64_t measure_violations = 0;
  long max_root_measure = 0;
  std::uint64_t root_measure_violations = 0;

  std::uint64_t br1_branchings = 0;
  std::uint64_t br2_single_edge_branchings = 0;
  std::uint64_t br2_path_branchings = 0;
  std::uint64_t obstruction_branchings = 0;
  std::size_t longest_branch_path = 0;
  std::uint64_t path_bound_violations = 0;

  void merge(const Stats& other);
};

struct Options {
  // One line per expanded node, for --trace.
  std::ostream* trace = nullptr;
};

// Deletes every vertex outside S of degree at most 1, to a fixpoint.
DisjointInstance rule1_prune_leaves(DisjointInstance inst);

// Deletes every vertex v outside S for which G[S + v] is not an
// r-pseudoforest, decrementing k once per deletion.
std::pair<DisjointInstance, VertexSet> rule2_force_delete(DisjointInstance inst);

// Bypasses loop-free degree-2 vertices outside S that have a neighbor
// outside S, to a fixpoint.
DisjointInstance rule3_bypass(DisjointInstance inst);

enum class Verdict { proceed, no };
Verdict rule4_budget(const DisjointInstance& inst);

SearchMeasure measure(const DisjointInstance& inst);

// Strict upper bound on the measure of a disjoint root with |S| <= k+1.
long root_measure_bound(int k, int r);
// Loose ceiling on the nodes of one disjoint search, saturating.
std::uint64_t node_ceiling(int k, int r);

// Multiplicity-weighted number of edges from v into S.
int degree_into(const MultiGraph& g, VertexId v, const VertexSet& s);

std::vector<Child> branch_br1(const DisjointInstance& inst, VertexId v);
PathBranching branch_br2(const DisjointInstance& inst);

Solution solve_disjoint(const DisjointInstance& inst, Stats* stats = nullptr,
                        const Options& options = {});

// Iterative compression over solve_disjoint.
Solution solve(const Instance& inst, Stats* stats = nullptr, const Options& options = {});

}  // namespace nearforest::rpf
