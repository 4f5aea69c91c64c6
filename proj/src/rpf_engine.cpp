#include "nearforest/rpf_engine.hpp"

#include <algorithm>
#include <limits>
#include <ostream>

#include "nearforest/errors.hpp"
#include "nearforest/forest_metrics.hpp"

namespace nearforest::rpf {

void Stats::merge(const Stats& other) {
  nodes_expanded += other.nodes_expanded;
  disjoint_solves += other.disjoint_solves;
  max_nodes_per_disjoint_solve = std::max(max_nodes_per_disjoint_solve, other.max_nodes_per_disjoint_solve);
  node_ceiling_violations += other.node_ceiling_violations;
  measure_checks += other.measure_checks;
  measure_violations += other.measure_violations;
  max_root_measure = std::max(max_root_measure, other.max_root_measure);
  root_measure_violations += other.root_measure_violations;
  br1_branchings += other.br1_branchings;
  br2_single_edge_branchings += other.br2_single_edge_branchings;
  br2_path_branchings += other.br2_path_branchings;
  obstruction_branchings += other.obstruction_branchings;
  longest_branch_path = std::max(longest_branch_path, other.longest_branch_path);
  path_bound_violations += other.path_bound_violations;
}

namespace {

VertexSet outside(const MultiGraph& g, const VertexSet& s) {
  VertexSet out;
  for (VertexId v : g.vertices())
    if (!s.count(v)) out.insert(v);
  return out;
}

VertexSet with(VertexSet s, const VertexSet& extra) {
  s.insert(extra.begin(), extra.end());
  return s;
}

// Components of G[S] with their excess, addressable by vertex.
struct ModulatorIndex {
  std::vector<int> comp_of;
  std::vector<long> excess;

  ModulatorIndex(const MultiGraph& g, const VertexSet& s) : comp_of(g.id_bound(), -1) {
    for (const auto& comp : components_within(g, s)) {
      for (VertexId v : comp.vertices) comp_of[v] = static_cast<int>(excess.size());
      excess.push_back(nearforest::excess(comp));
    }
  }

  // Excess of the component of G[S + v] that contains v.
  long excess_after_adding(const MultiGraph& g, VertexId v) const {
    VertexSet touched;
    long edges_in = g.loops(v);
    for (const auto& [w, mult] : g.neighbors(v)) {
      if (comp_of[w] < 0) continue;
      touched.insert(static_cast<VertexId>(comp_of[w]));
      edges_in += mult;
    }
    long ex = edges_in - static_cast<long>(touched.size());
    for (VertexId c : touched) ex += excess[c];
    return ex;
  }
};

bool modulator_ok(const DisjointInstance& inst) {
  return is_r_pseudoforest(inst.g.induced(inst.s), inst.r);
}

}  // namespace

int degree_into(const MultiGraph& g, VertexId v, const VertexSet& s) {
  return neighbors_in(g, v, s).total;
}

DisjointInstance rule1_prune_leaves(DisjointInstance inst) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (VertexId v : inst.g.vertices()) {
      if (!inst.s.count(v) && inst.g.degree(v) <= 1) {
        inst.g.delete_vertex(v);
        changed = true;
      }
    }
  }
  return inst;
}

std::pair<DisjointInstance, VertexSet> rule2_force_delete(DisjointInstance inst) {
  if (!modulator_ok(inst)) throw PreconditionError("rule2_force_delete: G[S] is not an r-pseudoforest");
  ModulatorIndex index(inst.g, inst.s);
  VertexSet forced;
  for (VertexId v : inst.g.vertices())
    if (!inst.s.count(v) && index.excess_after_adding(inst.g, v) > inst.r) forced.insert(v);
  // Deleting v leaves G[S] untouched, so one pass reaches the fixpoint.
  inst.g.delete_vertices(forced);
  inst.k -= static_cast<int>(forced.size());
  return {std::move(inst), std::move(forced)};
}

DisjointInstance rule3_bypass(DisjointInstance inst) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (VertexId u : inst.g.vertices()) {
      if (!inst.g.contains(u) || inst.s.count(u)) continue;
      if (inst.g.loops(u) != 0 || inst.g.degree(u) != 2) continue;
      bool free_neighbor = false;
      for (const auto& [w, mult] : inst.g.neighbors(u)) free_neighbor |= !inst.s.count(w);
      if (!free_neighbor) continue;
      inst.g.bypass_degree2(u);
      changed = true;
    }
  }
  return inst;
}

Verdict rule4_budget(const DisjointInstance& inst) { return inst.k < 0 ? Verdict::no : Verdict::proceed; }

SearchMeasure measure(const DisjointInstance& inst) {
  long phi = inst.k;
  for (const auto& comp : components_within(inst.g, inst.s)) {
    long ex = excess(comp);
    if (ex > inst.r) throw PreconditionError("measure: G[S] is not an r-pseudoforest");
    phi += 1 + (inst.r - ex);
  }
  return {phi};
}

long root_measure_bound(int k, int r) { return static_cast<long>(k + 1) * (r + 2); }

std::uint64_t node_ceiling(int k, int r) {
  const std::uint64_t base = static_cast<std::uint64_t>(2 * r + 3);
  const long exponent = root_measure_bound(k, r);
  std::uint64_t out = 1;
  for (long i = 0; i < exponent; ++i) {
    if (out > std::numeric_limits<std::uint64_t>::max() / base) return std::numeric_limits<std::uint64_t>::max();
    out *= base;
  }
  return out;
}

std::vector<Child> branch_br1(const DisjointInstance& inst, VertexId v) {
  if (!inst.g.contains(v) || inst.s.count(v)) throw PreconditionError("branch_br1: vertex must lie outside S");
  if (degree_into(inst.g, v, inst.s) < 2) throw PreconditionError("branch_br1: d_S(v) < 2");

  std::vector<Child> children;
  Child del{inst, {v}};
  del.instance.g.delete_vertex(v);
  del.instance.k -= 1;
  children.push_back(std::move(del));

  ModulatorIndex index(inst.g, inst.s);
  if (index.excess_after_adding(inst.g, v) <= inst.r) {
    Child keep{inst, {}};
    keep.instance.s.insert(v);
    children.push_back(std::move(keep));
  }
  return children;
}

PathBranching branch_br2(const DisjointInstance& inst) {
  const VertexSet rest = outside(inst.g, inst.s);
  for (VertexId v : rest)
    if (degree_into(inst.g, v, inst.s) > 1) throw PreconditionError("branch_br2: BR-1 still applies");

  PathBranching out;
  auto delete_child = [&](VertexId v) {
    Child c{inst, {v}};
    c.instance.g.delete_vertex(v);
    c.instance.k -= 1;
    return c;
  };
  auto merge_child = [&](const VertexSet& extra) -> std::optional<Child> {
    VertexSet merged = with(inst.s, extra);
    if (!is_r_pseudoforest(inst.g.induced(merged), inst.r)) return std::nullopt;
    Child c{inst, {}};
    c.instance.s = std::move(merged);
    return c;
  };

  // A component of G - S hanging on a single edge: deleting its attachment
  // vertex is as good as any other deletion inside it.
  for (const auto& comp : components_within(inst.g, rest)) {
    int edges_out = 0;
    VertexId attach = 0;
    for (VertexId v : comp.vertices) {
      int d = degree_into(inst.g, v, inst.s);
      if (d > 0) attach = v;
      edges_out += d;
    }
    if (edges_out != 1) continue;
    out.children.push_back(delete_child(attach));
    if (auto keep = merge_child(comp.vertices)) out.children.push_back(std::move(*keep));
    return out;
  }

  auto path = shortest_attached_path(inst.g, rest, inst.s);
  if (!path) throw PreconditionError("branch_br2: no vertex outside S is adjacent to S");
  out.path = *path;
  VertexSet on_path(path->begin(), path->end());
  for (VertexId v : on_path) out.children.push_back(delete_child(v));
  if (auto keep = merge_child(on_path)) out.children.push_back(std::move(*keep));
  return out;
}

namespace {

// Inclusion-minimal vertex set W outside S such that G[W] is not an r-pseudoforest
// but every G[W - w] is. Any solution must delete some vertex of W.
std::optional<VertexSet> minimal_obstruction(const DisjointInstance& inst) {
  const VertexSet rest = outside(inst.g, inst.s);
  for (const auto& comp : components_within(inst.g, rest)) {
    if (excess(comp) <= inst.r) continue;
    VertexSet w = comp.vertices;
    for (VertexId v : comp.vertices) {
      VertexSet smaller = w;
      smaller.erase(v);
      if (!is_r_pseudoforest(inst.g.induced(smaller), inst.r)) w = std::move(smaller);
    }
    return w;
  }
  return std::nullopt;
}

class DisjointSearch {
 public:
  DisjointSearch(Stats& stats, const Options& options) : stats_(stats), options_(options) {}

  Solution run(DisjointInstance inst) {
    ++stats_.disjoint_solves;
    if (!modulator_ok(inst)) return Solution::no();
    long root = measure(inst).phi;
    stats_.max_root_measure = std::max(stats_.max_root_measure, root);
    if (inst.s.size() <= static_cast<std::size_t>(inst.k) + 1 && inst.k >= 0 &&
        root >= root_measure_bound(inst.k, inst.r))
      ++stats_.root_measure_violations;

    const int k0 = inst.k;
    const int r = inst.r;
    nodes_ = 0;
    Solution sol = expand(std::move(inst), 0);
    stats_.max_nodes_per_disjoint_solve = std::max(stats_.max_nodes_per_disjoint_solve, nodes_);
    if (k0 >= 0 && nodes_ > node_ceiling(k0, r)) ++stats_.node_ceiling_violations;
    return sol;
  }

 private:
  // Rules 4, 2, 1, 3 to a fixpoint. False when Rule 4 answers no.
  bool reduce(DisjointInstance& inst, VertexSet& forced) {
    while (true) {
      if (rule4_budget(inst) == Verdict::no) return false;
      auto [after2, newly] = rule2_force_delete(std::move(inst));
      inst = std::move(after2);
      forced.insert(newly.begin(), newly.end());
      if (rule4_budget(inst) == Verdict::no) return false;
      const std::size_t n_before = inst.g.vertex_count();
      inst = rule3_bypass(rule1_prune_leaves(std::move(inst)));
      if (newly.empty() && inst.g.vertex_count() == n_before) return true;
    }
  }

  void trace(int depth, const DisjointInstance& inst, long phi, const char* what) {
    if (!options_.trace) return;
    *options_.trace << "rpf node depth=" << depth << " n=" << inst.g.vertex_count() << " |S|=" << inst.s.size()
                    << " k=" << inst.k << " phi=" << phi << " " << what << "\n";
  }

  Solution expand(DisjointInstance inst, int depth) {
    ++nodes_;
    ++stats_.nodes_expanded;
    VertexSet forced;
    if (!reduce(inst, forced)) return Solution::no();
    if (is_r_pseudoforest(inst.g, inst.r)) {
      trace(depth, inst, measure(inst).phi, "leaf=yes");
      return {Status::yes, std::move(forced)};
    }

    const long phi = measure(inst).phi;
    std::vector<Child> children;
    const VertexSet rest = outside(inst.g, inst.s);
    std::optional<VertexId> br1_vertex;
    for (VertexId v : rest) {
      if (degree_into(inst.g, v, inst.s) >= 2) {
        br1_vertex = v;
        break;
      }
    }
    if (br1_vertex) {
      ++stats_.br1_branchings;
      trace(depth, inst, phi, "BR-1");
      children = branch_br1(inst, *br1_vertex);
    } else if (auto obstruction = minimal_obstruction(inst)) {
      // Only reachable when S is not a deletion set of G.
      ++stats_.obstruction_branchings;
      trace(depth, inst, phi, "obstruction");
      for (VertexId v : *obstruction) {
        Child c{inst, {v}};
        c.instance.g.delete_vertex(v);
        c.instance.k -= 1;
        children.push_back(std::move(c));
      }
    } else {
      auto branching = branch_br2(inst);
      if (branching.path.empty()) {
        ++stats_.br2_single_edge_branchings;
        trace(depth, inst, phi, "BR-2 single-edge");
      } else {
        ++stats_.br2_path_branchings;
        stats_.longest_branch_path = std::max(stats_.longest_branch_path, branching.path.size());
        if (branching.path.size() > static_cast<std::size_t>(2 * inst.r + 2)) ++stats_.path_bound_violations;
        trace(depth, inst, phi, "BR-2 path");
      }
      children = std::move(branching.children);
    }

    for (auto& child : children) {
      const long child_phi = measure(child.instance).phi;
      ++stats_.measure_checks;
      if (child_phi > phi - 1) ++stats_.measure_violations;
      if (child_phi < 0 || child.instance.k < 0) continue;
      Solution sol = expand(std::move(child.instance), depth + 1);
      if (sol.yes()) {
        sol.witness.insert(child.deleted.begin(), child.deleted.end());
        sol.witness.insert(forced.begin(), forced.end());
        return sol;
      }
    }
    return Solution::no();
  }

  Stats& stats_;
  const Options& options_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

Solution solve_disjoint(const DisjointInstance& inst, Stats* stats, const Options& options) {
  Stats local;
  Stats& sink = stats ? *stats : local;
  Solution sol = DisjointSearch(sink, options).run(inst);
  if (sol.yes()) {
    bool disjoint = std::none_of(sol.witness.begin(), sol.witness.end(), [&](VertexId v) { return inst.s.count(v); });
    if (!disjoint || static_cast<int>(sol.witness.size()) > inst.k ||
        !is_r_pseudoforest(inst.g.without(sol.witness), inst.r))
      throw InvariantViolation("rpf::solve_disjoint produced an invalid witness");
  }
  return sol;
}

Solution solve(const Instance& inst, Stats* stats, const Options& options) {
  if (inst.k < 0 || inst.r < 0) throw PreconditionError("rpf::solve: k and r must be non-negative");

  VertexSet prefix;
  VertexSet solution;
  for (VertexId v : inst.g.vertices()) {
    prefix.insert(v);
    solution.insert(v);
    if (static_cast<int>(solution.size()) <= inst.k) continue;

    // |solution| = k + 1: guess which part Y of it stays deleted and ask
    // for a disjoint solution that keeps the rest.
    const MultiGraph g = inst.g.induced(prefix);
    const std::vector<VertexId> old(solution.begin(), solution.end());
    bool compressed = false;
    for (std::uint32_t mask = 0; mask + 1 < (1u << old.size()) && !compressed; ++mask) {
      VertexSet deleted, kept;
      for (std::size_t i = 0; i < old.size(); ++i) (mask >> i & 1u ? deleted : kept).insert(old[i]);
      if (!is_r_pseudoforest(g.induced(kept), inst.r)) continue;
      DisjointInstance sub{g.without(deleted), kept, inst.k - static_cast<int>(deleted.size()), inst.r};
      Solution sol = solve_disjoint(sub, stats, options);
      if (!sol.yes()) continue;
      solution = with(std::move(deleted), sol.witness);
      compressed = true;
    }
    if (!compressed) return Solution::no();
  }

  if (static_cast<int>(solution.size()) > inst.k || !is_r_pseudoforest(inst.g.without(solution), inst.r))
    throw InvariantViolation("rpf::solve produced an invalid witness");
  return {Status::yes, std::move(solution)};
}

}  // namespace nearforest::rpf
