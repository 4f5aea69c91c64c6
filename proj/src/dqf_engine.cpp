#include "nearforest/dqf_engine.hpp"

#include <algorithm>
#include <ostream>

#include "nearforest/errors.hpp"
#include "nearforest/forest_metrics.hpp"
#include "nearforest/subsets.hpp"

namespace nearforest::dqf {

void Stats::merge(const Stats& other) {
  nodes_expanded += other.nodes_expanded;
  disjoint_solves += other.disjoint_solves;
  fallback_nodes += other.fallback_nodes;
  cyclic_branchings += other.cyclic_branchings;
  cyclic_prunes += other.cyclic_prunes;
  fvs_sum_only_prunes += other.fvs_sum_only_prunes;
  fvs_sum_unpruned += other.fvs_sum_unpruned;
  big_tree_branchings += other.big_tree_branchings;
  big_tree_prunes += other.big_tree_prunes;
  rule4_trees_removed += other.rule4_trees_removed;
  forced_vertices += other.forced_vertices;
  unforced_vertices += other.unforced_vertices;
  max_z_after_cyclic = std::max(max_z_after_cyclic, other.max_z_after_cyclic);
  max_z_after_partition = std::max(max_z_after_partition, other.max_z_after_partition);
  ledger_violations += other.ledger_violations;
  tree_guesses += other.tree_guesses;
  separation_guesses += other.separation_guesses;
  pruned_pass_solutions += other.pruned_pass_solutions;
  full_pass_solutions += other.full_pass_solutions;
}

namespace {

VertexSet outside(const MultiGraph& g, const VertexSet& z) {
  VertexSet out;
  for (VertexId v : g.vertices())
    if (!z.count(v)) out.insert(v);
  return out;
}

bool z_ok(const MultiGraph& g, const VertexSet& z, int d) { return is_d_quasi_forest(g.induced(z), d); }

bool rest_is_forest(const MultiGraph& g, const VertexSet& z) {
  return is_r_pseudoforest(g.induced(outside(g, z)), 0);
}

VertexSet z_neighbors(const MultiGraph& g, const VertexSet& z, const VertexSet& part) {
  VertexSet out;
  for (VertexId v : part)
    for (const auto& [w, mult] : g.neighbors(v))
      if (z.count(w)) out.insert(w);
  return out;
}

std::vector<VertexId> as_vector(const VertexSet& s) { return {s.begin(), s.end()}; }

// Children for every way of sending each vertex of `pivots` to the solution
// or to Z, at most k deletions, G[Z] kept a d-quasi-forest. Fewest
// deletions first.
std::vector<Child> assignment_children(const DisjointInstance& inst, const VertexSet& pivots) {
  std::vector<Child> out;
  const auto items = as_vector(pivots);
  const std::size_t max_del = static_cast<std::size_t>(std::max(inst.k, 0));
  for_each_subset_up_to(items, max_del, [&](const VertexSet& del) {
    VertexSet z = inst.z;
    for (VertexId v : items)
      if (!del.count(v)) z.insert(v);
    if (!z_ok(inst.g, z, inst.d)) return false;
    Child c{{inst.g.without(del), std::move(z), inst.k - static_cast<int>(del.size()), inst.d}, del};
    out.push_back(std::move(c));
    return false;
  });
  return out;
}

}  // namespace

NeighborhoodType neighborhood_type(const MultiGraph& g, const VertexSet& z, const VertexSet& tree) {
  std::map<VertexId, int> edges;
  for (VertexId v : tree)
    for (const auto& [w, mult] : g.neighbors(v))
      if (z.count(w)) edges[w] += mult;
  NeighborhoodType type;
  for (const auto& [w, count] : edges) {
    type.neighbor_set.push_back(w);
    type.multi_flags.push_back(count >= 2);
  }
  return type;
}

DisjointInstance dqf_rule1(DisjointInstance inst) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (VertexId u : inst.g.vertices()) {
      if (inst.z.count(u) || inst.g.degree(u) > 1) continue;
      inst.g.delete_vertex(u);
      changed = true;
    }
  }
  return inst;
}

DisjointInstance dqf_rule2(DisjointInstance inst) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (VertexId u : inst.g.vertices()) {
      if (inst.z.count(u) || inst.g.degree(u) != 2 || inst.g.loops(u) != 0) continue;
      // Both neighbors in Z would plant a new edge inside G[Z]; that is not
      // equivalence-preserving, so such vertices stay.
      bool free_neighbor = false;
      for (const auto& [w, mult] : inst.g.neighbors(u)) free_neighbor |= !inst.z.count(w);
      if (!free_neighbor) continue;
      inst.g.bypass_degree2(u);
      changed = true;
    }
  }
  return inst;
}

DisjointInstance dqf_rule12(DisjointInstance inst) {
  while (true) {
    const std::size_t before = inst.g.vertex_count();
    inst = dqf_rule2(dqf_rule1(std::move(inst)));
    if (inst.g.vertex_count() == before) return inst;
  }
}

Rule3Outcome dqf_rule3(DisjointInstance inst) {
  Rule3Outcome out;
  if (!z_ok(inst.g, inst.z, inst.d)) {
    out.instance = std::move(inst);
    out.no_instance = true;
    return out;
  }
  for (VertexId u : inst.g.vertices()) {
    if (inst.z.count(u)) continue;
    VertexSet zu = inst.z;
    zu.insert(u);
    if (!z_ok(inst.g, zu, inst.d)) out.forced.insert(u);
  }
  inst.g.delete_vertices(out.forced);
  inst.k -= static_cast<int>(out.forced.size());
  out.instance = std::move(inst);
  return out;
}

Branching branch_cyclic_components(const DisjointInstance& inst, Stats* stats) {
  Branching out;
  const VertexSet rest = outside(inst.g, inst.z);
  struct Cyclic {
    VertexSet vertices;
    VertexSet fvs;
  };
  std::vector<Cyclic> cyclic;
  for (const auto& comp : components_within(inst.g, rest)) {
    if (excess(comp) == 0) continue;
    auto fvs = exact_fvs(inst.g.induced(comp.vertices), inst.d);
    if (!fvs) throw PreconditionError("branch_cyclic_components: G - Z is not a d-quasi-forest");
    cyclic.push_back({comp.vertices, std::move(*fvs)});
  }
  if (cyclic.empty()) {
    out.children.push_back({inst, {}});
    return out;
  }

  // Around a vertex u of Z, at most k of its cyclic components can lose a
  // vertex; the others stay attached to u with disjoint cycles, so their
  // feedback numbers must fit in d even after the k largest are discounted.
  const long limit = static_cast<long>(inst.k) + inst.d;
  for (VertexId u : inst.z) {
    std::vector<long> sizes;
    for (const auto& c : cyclic) {
      bool adjacent = false;
      for (const auto& [w, mult] : inst.g.neighbors(u)) adjacent |= c.vertices.count(w) > 0;
      if (adjacent) sizes.push_back(static_cast<long>(c.fvs.size()));
    }
    std::sort(sizes.rbegin(), sizes.rend());
    long total = 0;
    for (long x : sizes) total += x;
    long untouched = 0;
    for (std::size_t i = static_cast<std::size_t>(std::max(inst.k, 0)); i < sizes.size(); ++i) untouched += sizes[i];
    if (untouched > inst.d) {
      if (stats) {
        ++stats->cyclic_prunes;
        if (static_cast<long>(sizes.size()) <= limit) ++stats->fvs_sum_only_prunes;
      }
      out.pruned = true;
      return out;
    }
    if (stats && total > limit) ++stats->fvs_sum_unpruned;
  }

  VertexSet pivots;
  for (const auto& c : cyclic) pivots.insert(c.fvs.begin(), c.fvs.end());
  if (stats) ++stats->cyclic_branchings;
  out.children = assignment_children(inst, pivots);
  out.pruned = out.children.empty();
  return out;
}

VertexSet tree_boundary(const MultiGraph& g, const VertexSet& z, const VertexSet& tree, int d) {
  VertexSet boundary;
  if (tree.empty()) return boundary;
  const VertexId root = *tree.begin();
  std::vector<VertexId> order;
  std::map<VertexId, VertexId> parent{{root, root}};
  std::vector<VertexId> stack{root};
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    order.push_back(v);
    for (const auto& [w, mult] : g.neighbors(v)) {
      if (!tree.count(w) || parent.count(w)) continue;
      parent[w] = v;
      stack.push_back(w);
    }
  }

  const std::size_t cap = static_cast<std::size_t>(d) + 1;
  std::map<VertexId, VertexSet> piece;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const VertexId v = *it;
    VertexSet p = z_neighbors(g, z, {v});
    for (const auto& [w, mult] : g.neighbors(v)) {
      if (!tree.count(w) || w == parent[v] || parent[w] != v) continue;
      if (boundary.count(w))
        p.insert(w);
      else
        p.insert(piece[w].begin(), piece[w].end());
    }
    // An open piece below a cut may hold d attachments: the cut vertex makes
    // d+1. The root piece has no cut above it and may hold d+1.
    const bool cut = v == root ? p.size() > cap : p.size() >= cap;
    if (cut)
      boundary.insert(v);
    else
      piece[v] = std::move(p);
  }
  return boundary;
}

Branching partition_big_trees(const DisjointInstance& inst, Stats* stats) {
  if (!rest_is_forest(inst.g, inst.z)) throw PreconditionError("partition_big_trees: G - Z is not a forest");
  Branching out;
  const VertexSet rest = outside(inst.g, inst.z);
  std::vector<VertexSet> big;
  for (const auto& comp : components_within(inst.g, rest))
    if (z_neighbors(inst.g, inst.z, comp.vertices).size() >= static_cast<std::size_t>(inst.d) + 2)
      big.push_back(comp.vertices);
  if (big.empty()) {
    out.children.push_back({inst, {}});
    return out;
  }

  // At most k big trees can be hit by the solution. An untouched big tree
  // joins at least two Z-vertices that survive any size-d feedback set, so
  // counting edges of the surviving forest bounds the untouched ones by
  // |Z| + (d-1) per component of big trees.
  const long k = std::max(inst.k, 0);
  const long z = static_cast<long>(inst.z.size());
  const long structural = k + z + std::max(0, inst.d - 1) * (z / (inst.d + 2));
  const long threshold = std::max(2 * (k + 1) + inst.d, structural);
  if (static_cast<long>(big.size()) > threshold) {
    if (stats) ++stats->big_tree_prunes;
    out.pruned = true;
    return out;
  }

  VertexSet pivots;
  for (const auto& tree : big) {
    VertexSet b = tree_boundary(inst.g, inst.z, tree, inst.d);
    pivots.insert(b.begin(), b.end());
  }
  if (stats) ++stats->big_tree_branchings;
  out.children = assignment_children(inst, pivots);
  out.pruned = out.children.empty();
  return out;
}

DisjointInstance rule4_dedup_trees(DisjointInstance inst, Stats* stats) {
  if (!rest_is_forest(inst.g, inst.z)) throw PreconditionError("rule4_dedup_trees: G - Z is not a forest");
  const VertexSet rest = outside(inst.g, inst.z);
  std::map<NeighborhoodType, std::vector<VertexSet>> by_type;
  for (const auto& comp : components_within(inst.g, rest)) {
    auto type = neighborhood_type(inst.g, inst.z, comp.vertices);
    if (type.neighbor_set.size() > static_cast<std::size_t>(inst.d) + 1)
      throw PreconditionError("rule4_dedup_trees: a tree has more than d+1 neighbors in Z");
    by_type[std::move(type)].push_back(comp.vertices);
  }
  const std::size_t keep = static_cast<std::size_t>(std::max(inst.k, 0) + inst.d + 2);
  for (const auto& [type, trees] : by_type) {
    for (std::size_t i = keep; i < trees.size(); ++i) {
      inst.g.delete_vertices(trees[i]);
      if (stats) ++stats->rule4_trees_removed;
    }
  }
  return inst;
}

ForestPacking forest_path_packing(const MultiGraph& g, const VertexSet& region, const VertexSet& r_set) {
  // Greedy from the leaves: close a path at the lowest vertex where two
  // open chains meet (or a chain meets an R-vertex). The closing vertices
  // hit every R-path, so the packing is maximum.
  ForestPacking out;
  VertexSet seen;
  for (VertexId root : region) {
    if (seen.count(root) || !g.contains(root)) continue;
    std::vector<VertexId> order;
    std::map<VertexId, VertexId> parent{{root, root}};
    std::vector<VertexId> stack{root};
    seen.insert(root);
    while (!stack.empty()) {
      VertexId v = stack.back();
      stack.pop_back();
      order.push_back(v);
      for (const auto& [w, mult] : g.neighbors(v)) {
        if (!region.count(w) || seen.count(w)) continue;
        seen.insert(w);
        parent[w] = v;
        stack.push_back(w);
      }
    }
    // chain[v]: unused path from an R-vertex up to v, R-vertex first.
    std::map<VertexId, std::vector<VertexId>> chain;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const VertexId v = *it;
      std::vector<std::vector<VertexId>*> open;
      for (const auto& [w, mult] : g.neighbors(v)) {
        if (!region.count(w) || w == parent[v] || parent[w] != v) continue;
        auto found = chain.find(w);
        if (found != chain.end()) open.push_back(&found->second);
      }
      const bool terminal = r_set.count(v) > 0;
      if (terminal && !open.empty()) {
        std::vector<VertexId> path = *open[0];
        path.push_back(v);
        out.paths.push_back(std::move(path));
        out.separator.insert(v);
      } else if (!terminal && open.size() >= 2) {
        std::vector<VertexId> path = *open[0];
        path.push_back(v);
        path.insert(path.end(), open[1]->rbegin(), open[1]->rend());
        out.paths.push_back(std::move(path));
        out.separator.insert(v);
      } else if (terminal) {
        chain[v] = {v};
      } else if (open.size() == 1) {
        std::vector<VertexId> up = *open[0];
        up.push_back(v);
        chain[v] = std::move(up);
      }
    }
  }
  return out;
}

ForcedVertexReport detect_forced(const DisjointInstance& inst) {
  if (!rest_is_forest(inst.g, inst.z)) throw PreconditionError("detect_forced: G - Z is not a forest");
  ForcedVertexReport report;
  const VertexSet rest = outside(inst.g, inst.z);
  const std::size_t s = static_cast<std::size_t>(std::max(inst.k, 0) + inst.d);
  for (VertexId u : z_neighbors(inst.g, inst.z, rest)) {
    VertexSet r_set = neighbors_in(inst.g, u, rest).distinct;
    ForestPacking packing = forest_path_packing(inst.g, rest, r_set);
    if (packing.paths.size() >= s + 1) {
      packing.paths.resize(s + 1);
      report.forced.insert(u);
      report.packings[u] = std::move(packing.paths);
    } else {
      report.unforced.insert(u);
      report.separators[u] = std::move(packing.separator);
    }
  }
  return report;
}

namespace {

constexpr std::size_t kMaxGuessedBlocks = 5;

// Restricted-growth enumeration of set partitions of {0..n-1}.
template <typename Fn>
bool for_each_partition(std::size_t n, Fn&& fn) {
  std::vector<std::size_t> block(n, 0);
  std::vector<std::size_t> max_prefix(n + 1, 0);
  while (true) {
    if (fn(block)) return true;
    std::size_t i = n;
    while (i > 1) {
      --i;
      std::size_t bound = 0;
      for (std::size_t j = 0; j < i; ++j) bound = std::max(bound, block[j]);
      if (block[i] <= bound) {
        ++block[i];
        for (std::size_t j = i + 1; j < n; ++j) block[j] = 0;
        break;
      }
      if (i == 1) return false;
    }
    if (n <= 1) return false;
  }
}

struct GuessContext {
  const MultiGraph& g;
  const VertexSet& z;  // original Z plus the trees guessed untouched
  int k;
  int d;
  std::vector<VertexSet> hit_trees;
  VertexSet separator_vertices;  // union of B_u
  VertexSet unforced;
  Stats* stats;
};

// Every hit tree loses a vertex and G - X is a d-quasi-forest.
bool accepts(const GuessContext& ctx, const VertexSet& x) {
  for (const auto& tree : ctx.hit_trees)
    if (std::none_of(tree.begin(), tree.end(), [&](VertexId v) { return x.count(v); })) return false;
  return is_d_quasi_forest(ctx.g.without(x), ctx.d);
}

std::optional<VertexSet> search_candidates(const GuessContext& ctx, const VertexSet& must,
                                           const std::vector<VertexId>& candidates) {
  const int budget = ctx.k - static_cast<int>(must.size());
  if (budget < 0) return std::nullopt;
  std::optional<VertexSet> found;
  for_each_subset_up_to(candidates, static_cast<std::size_t>(budget), [&](const VertexSet& extra) {
    VertexSet x = must;
    x.insert(extra.begin(), extra.end());
    if (!accepts(ctx, x)) return false;
    found = std::move(x);
    return true;
  });
  return found;
}

std::optional<VertexSet> solve_guess(const GuessContext& ctx) {
  VertexSet tree_vertices;
  for (const auto& t : ctx.hit_trees) tree_vertices.insert(t.begin(), t.end());

  // Components of G[Z] seen by the remaining trees.
  std::vector<VertexSet> blocks_src;
  std::vector<int> zcomp(ctx.g.id_bound(), -1);
  for (const auto& comp : components_within(ctx.g, ctx.z)) {
    if (z_neighbors(ctx.g, comp.vertices, tree_vertices).empty()) continue;
    for (VertexId v : comp.vertices) zcomp[v] = static_cast<int>(blocks_src.size());
    blocks_src.push_back(comp.vertices);
  }
  auto adjacent_comps = [&](VertexId v) {
    std::set<int> out;
    for (const auto& [w, mult] : ctx.g.neighbors(v))
      if (ctx.z.count(w) && zcomp[w] >= 0) out.insert(zcomp[w]);
    return out;
  };

  const std::size_t p = blocks_src.size();
  std::optional<VertexSet> answer;
  auto try_partition = [&](const std::vector<std::size_t>& block) {
    if (ctx.stats) ++ctx.stats->separation_guesses;
    // Tree vertices touching two blocks guessed apart must be deleted.
    VertexSet must;
    for (VertexId v : tree_vertices) {
      std::set<std::size_t> touched;
      for (int c : adjacent_comps(v)) touched.insert(block[static_cast<std::size_t>(c)]);
      if (touched.size() >= 2) must.insert(v);
    }
    if (static_cast<int>(must.size()) > ctx.k) return false;

    // Vertices that keep their role: separator vertices, neighbors of
    // unforced Z-vertices or of separator vertices, and vertices touching
    // several blocks.
    VertexSet special;
    for (VertexId v : tree_vertices) {
      if (must.count(v) || ctx.separator_vertices.count(v)) {
        special.insert(v);
        continue;
      }
      for (const auto& [w, mult] : ctx.g.neighbors(v))
        if (ctx.unforced.count(w) || ctx.separator_vertices.count(w)) special.insert(v);
    }
    std::vector<VertexId> full;
    for (VertexId v : ctx.separator_vertices)
      if (tree_vertices.count(v) && !must.count(v)) full.push_back(v);
    for (VertexId v : tree_vertices)
      if (!must.count(v) && !ctx.separator_vertices.count(v)) full.push_back(v);

    // Along each run of ordinary vertices keep one representative per
    // adjacent Z-component.
    VertexSet ordinary;
    for (VertexId v : tree_vertices)
      if (!special.count(v)) ordinary.insert(v);
    VertexSet representatives;
    for (const auto& run : components_within(ctx.g, ordinary)) {
      std::set<int> covered;
      for (VertexId v : run.vertices)
        for (int c : adjacent_comps(v))
          if (covered.insert(c).second) representatives.insert(v);
    }
    std::vector<VertexId> pruned;
    for (VertexId v : full)
      if (special.count(v) || representatives.count(v)) pruned.push_back(v);

    if (auto x = search_candidates(ctx, must, pruned)) {
      if (ctx.stats) ++ctx.stats->pruned_pass_solutions;
      answer = std::move(x);
      return true;
    }
    if (pruned.size() == full.size()) return false;
    if (auto x = search_candidates(ctx, must, full)) {
      if (ctx.stats) ++ctx.stats->full_pass_solutions;
      answer = std::move(x);
      return true;
    }
    return false;
  };

  if (p == 0 || p > kMaxGuessedBlocks) {
    try_partition(std::vector<std::size_t>(p, 0));
  } else {
    for_each_partition(p, try_partition);
  }
  return answer;
}

}  // namespace

Solution final_branch(const DisjointInstance& inst, const ForcedVertexReport& report, Stats* stats) {
  if (inst.k < 0) return Solution::no();
  if (!rest_is_forest(inst.g, inst.z)) throw PreconditionError("final_branch: G - Z is not a forest");
  const VertexSet rest = outside(inst.g, inst.z);
  std::vector<VertexSet> trees;
  for (const auto& comp : components_within(inst.g, rest)) trees.push_back(comp.vertices);

  VertexSet separator_vertices;
  for (const auto& [u, b] : report.separators) separator_vertices.insert(b.begin(), b.end());

  // Guess which trees the solution touches; every other tree joins Z.
  std::vector<VertexId> tree_ids(trees.size());
  for (std::size_t i = 0; i < trees.size(); ++i) tree_ids[i] = static_cast<VertexId>(i);
  Solution out;
  for_each_subset_up_to(tree_ids, static_cast<std::size_t>(inst.k), [&](const VertexSet& hit) {
    if (stats) ++stats->tree_guesses;
    VertexSet z = inst.z;
    GuessContext ctx{inst.g, z, inst.k, inst.d, {}, separator_vertices, report.unforced, stats};
    for (std::size_t i = 0; i < trees.size(); ++i) {
      if (hit.count(static_cast<VertexId>(i)))
        ctx.hit_trees.push_back(trees[i]);
      else
        z.insert(trees[i].begin(), trees[i].end());
    }
    if (!z_ok(inst.g, z, inst.d)) return false;
    if (hit.empty()) {
      out = {Status::yes, {}};
      return true;
    }
    if (auto x = solve_guess(ctx)) {
      out = {Status::yes, std::move(*x)};
      return true;
    }
    return false;
  });
  return out;
}

std::size_t z_bound_after_cyclic(std::size_t z0, int k, int d) {
  const std::size_t base = std::max<std::size_t>(z0, static_cast<std::size_t>(k) + 1);
  return base * static_cast<std::size_t>(k + d + 1);
}

std::size_t z_bound_after_partition(std::size_t z0, int k, int d) {
  return z_bound_after_cyclic(z0, k, d) + static_cast<std::size_t>(2 * (2 * k + d + 3) * (2 * (k + 1) + d));
}

namespace {

class Pipeline {
 public:
  Pipeline(Stats& stats, const Options& options) : stats_(stats), options_(options) {}

  Solution run(DisjointInstance inst) {
    ++stats_.disjoint_solves;
    if (!z_ok(inst.g, inst.z, inst.d)) return Solution::no();
    if (options_.fallback) return fallback(std::move(inst));
    const int k0 = std::max(inst.k, 0);
    bound_cyclic_ = z_bound_after_cyclic(inst.z.size(), k0, inst.d);
    bound_partition_ = z_bound_after_partition(inst.z.size(), k0, inst.d);
    return stage_cyclic(std::move(inst));
  }

 private:
  void trace(const char* stage, const DisjointInstance& inst) {
    if (!options_.trace) return;
    *options_.trace << "dqf " << stage << " n=" << inst.g.vertex_count() << " |Z|=" << inst.z.size()
                    << " k=" << inst.k << "\n";
  }

  // Rule 3, Rules 1-2 and removal of d-quasi-forest components that avoid Z,
  // to a fixpoint. False when the instance is a no.
  bool reduce(DisjointInstance& inst, VertexSet& deleted) {
    while (true) {
      if (inst.k < 0) return false;
      Rule3Outcome r3 = dqf_rule3(std::move(inst));
      if (r3.no_instance) return false;
      inst = std::move(r3.instance);
      deleted.insert(r3.forced.begin(), r3.forced.end());
      if (inst.k < 0) return false;
      const std::size_t before = inst.g.vertex_count();
      inst = dqf_rule12(std::move(inst));
      for (const auto& comp : components(inst.g)) {
        bool touches_z = std::any_of(comp.vertices.begin(), comp.vertices.end(),
                                     [&](VertexId v) { return inst.z.count(v) > 0; });
        if (!touches_z && is_d_quasi_forest(inst.g.induced(comp.vertices), inst.d))
          inst.g.delete_vertices(comp.vertices);
      }
      if (r3.forced.empty() && inst.g.vertex_count() == before) return true;
    }
  }

  static Solution lift(Solution sol, const VertexSet& deleted) {
    if (sol.yes()) sol.witness.insert(deleted.begin(), deleted.end());
    return sol;
  }

  bool ledger_ok(const DisjointInstance& inst, std::size_t bound, std::size_t& high_water) {
    high_water = std::max(high_water, inst.z.size());
    if (inst.z.size() <= bound) return true;
    ++stats_.ledger_violations;
    if (options_.abort_on_ledger_violation)
      throw InvariantViolation("dqf: |Z| = " + std::to_string(inst.z.size()) + " exceeds the stage bound " +
                               std::to_string(bound));
    return false;
  }

  Solution stage_cyclic(DisjointInstance inst) {
    ++stats_.nodes_expanded;
    trace("cyclic", inst);
    VertexSet deleted;
    if (!reduce(inst, deleted)) return Solution::no();
    if (is_d_quasi_forest(inst.g, inst.d)) return {Status::yes, deleted};
    const VertexSet rest = outside(inst.g, inst.z);
    if (!is_d_quasi_forest(inst.g.induced(rest), inst.d)) return lift(fallback(std::move(inst)), deleted);

    Branching branching = branch_cyclic_components(inst, &stats_);
    for (auto& child : branching.children) {
      Solution sol = ledger_ok(child.instance, bound_cyclic_, stats_.max_z_after_cyclic)
                         ? stage_partition(std::move(child.instance))
                         : fallback(std::move(child.instance));
      if (sol.yes()) return lift(lift(std::move(sol), child.deleted), deleted);
    }
    return Solution::no();
  }

  Solution stage_partition(DisjointInstance inst) {
    ++stats_.nodes_expanded;
    trace("partition", inst);
    VertexSet deleted;
    if (!reduce(inst, deleted)) return Solution::no();
    if (is_d_quasi_forest(inst.g, inst.d)) return {Status::yes, deleted};

    Branching branching = partition_big_trees(inst, &stats_);
    for (auto& child : branching.children) {
      Solution sol = ledger_ok(child.instance, bound_partition_, stats_.max_z_after_partition)
                         ? stage_final(std::move(child.instance))
                         : fallback(std::move(child.instance));
      if (sol.yes()) return lift(lift(std::move(sol), child.deleted), deleted);
    }
    return Solution::no();
  }

  Solution stage_final(DisjointInstance inst) {
    ++stats_.nodes_expanded;
    trace("final", inst);
    VertexSet deleted;
    if (!reduce(inst, deleted)) return Solution::no();
    if (is_d_quasi_forest(inst.g, inst.d)) return {Status::yes, deleted};
    inst = rule4_dedup_trees(std::move(inst), &stats_);
    ForcedVertexReport report = detect_forced(inst);
    stats_.forced_vertices += report.forced.size();
    stats_.unforced_vertices += report.unforced.size();
    return lift(final_branch(inst, report, &stats_), deleted);
  }

  // Exhaustive: branch a vertex of a bad component into the solution or Z.
  Solution fallback(DisjointInstance inst) {
    ++stats_.nodes_expanded;
    ++stats_.fallback_nodes;
    if (inst.k < 0) return Solution::no();
    Rule3Outcome r3 = dqf_rule3(std::move(inst));
    if (r3.no_instance) return Solution::no();
    inst = std::move(r3.instance);
    if (inst.k < 0) return Solution::no();
    if (is_d_quasi_forest(inst.g, inst.d)) return {Status::yes, r3.forced};

    std::optional<VertexId> pivot;
    for (const auto& comp : components(inst.g)) {
      if (is_d_quasi_forest(inst.g.induced(comp.vertices), inst.d)) continue;
      for (VertexId v : comp.vertices) {
        if (!inst.z.count(v)) {
          pivot = v;
          break;
        }
      }
      if (pivot) break;
    }
    if (!pivot) return Solution::no();

    DisjointInstance del = inst;
    del.g.delete_vertex(*pivot);
    del.k -= 1;
    Solution sol = fallback(std::move(del));
    if (sol.yes()) {
      sol.witness.insert(*pivot);
      return lift(std::move(sol), r3.forced);
    }
    inst.z.insert(*pivot);
    return lift(fallback(std::move(inst)), r3.forced);
  }

  Stats& stats_;
  const Options& options_;
  std::size_t bound_cyclic_ = 0;
  std::size_t bound_partition_ = 0;
};

}  // namespace

Solution solve_disjoint(const DisjointInstance& inst, Stats* stats, const Options& options) {
  Stats local;
  Stats& sink = stats ? *stats : local;
  Solution sol = Pipeline(sink, options).run(inst);
  if (sol.yes()) {
    bool disjoint = std::none_of(sol.witness.begin(), sol.witness.end(), [&](VertexId v) { return inst.z.count(v); });
    if (!disjoint || static_cast<int>(sol.witness.size()) > inst.k ||
        !is_d_quasi_forest(inst.g.without(sol.witness), inst.d))
      throw InvariantViolation("dqf::solve_disjoint produced an invalid witness");
  }
  return sol;
}

Solution solve_dqf(const Instance& inst, Stats* stats, const Options& options) {
  if (inst.k < 0 || inst.d < 0) throw PreconditionError("dqf::solve_dqf: k and d must be non-negative");

  VertexSet prefix;
  VertexSet solution;
  for (VertexId v : inst.g.vertices()) {
    prefix.insert(v);
    solution.insert(v);
    if (static_cast<int>(solution.size()) <= inst.k) continue;

    const MultiGraph g = inst.g.induced(prefix);
    const std::vector<VertexId> old(solution.begin(), solution.end());
    bool compressed = false;
    for (std::uint32_t mask = 0; mask + 1 < (1u << old.size()) && !compressed; ++mask) {
      VertexSet deleted, kept;
      for (std::size_t i = 0; i < old.size(); ++i) (mask >> i & 1u ? deleted : kept).insert(old[i]);
      if (!z_ok(g, kept, inst.d)) continue;
      DisjointInstance sub{g.without(deleted), kept, inst.k - static_cast<int>(deleted.size()), inst.d};
      Solution sol = solve_disjoint(sub, stats, options);
      if (!sol.yes()) continue;
      deleted.insert(sol.witness.begin(), sol.witness.end());
      solution = std::move(deleted);
      compressed = true;
    }
    if (!compressed) return Solution::no();
  }

  if (static_cast<int>(solution.size()) > inst.k || !is_d_quasi_forest(inst.g.without(solution), inst.d))
    throw InvariantViolation("dqf::solve_dqf produced an invalid witness");
  return {Status::yes, std::move(solution)};
}

}  // namespace nearforest::dqf
