#include <doctest.h>

#include <sstream>

#include "nearforest/errors.hpp"
#include "nearforest/forest_metrics.hpp"
#include "nearforest/generators.hpp"
#include "nearforest/oracle.hpp"
#include "nearforest/rpf_engine.hpp"
#include "nearforest/subsets.hpp"
#include "support.hpp"

using namespace nearforest;
using rpf::DisjointInstance;

namespace {

// Triangle 0,1,2 with a pendant 3 hanging on 0.
MultiGraph triangle_with_pendant() {
  MultiGraph g = complete_graph(3);
  g.add_vertex();
  g.add_edge(0, 3);
  return g;
}

// Path 0-1-2 plus vertex 3 joined to 0 and 2.
MultiGraph path_and_chord_vertex() {
  MultiGraph g = path_graph(3);
  g.add_vertex();
  g.add_edge(3, 0);
  g.add_edge(3, 2);
  return g;
}

long phi(const DisjointInstance& inst) { return rpf::measure(inst).phi; }

VertexSet with_vertex(VertexSet s, VertexId v) {
  s.insert(v);
  return s;
}

}  // namespace

TEST_CASE("Rule 1 prunes leaves outside S") {
  auto pendant = rpf::rule1_prune_leaves({triangle_with_pendant(), {}, 1, 1});
  CHECK(pendant.g.vertex_count() == 3);
  CHECK_FALSE(pendant.g.contains(3));

  auto path = rpf::rule1_prune_leaves({path_graph(3), {}, 1, 1});
  CHECK(path.g.empty());

  auto in_s = rpf::rule1_prune_leaves({path_graph(2), {0, 1}, 1, 1});
  CHECK(in_s.g.vertex_count() == 2);

  MultiGraph isolated(2);
  CHECK(rpf::rule1_prune_leaves({isolated, {}, 0, 0}).g.empty());
}

TEST_CASE("Rule 2 forces vertices that break G[S + v]") {
  auto [forced_inst, forced] = rpf::rule2_force_delete({path_and_chord_vertex(), {0, 1, 2}, 2, 0});
  CHECK(forced == VertexSet{3});
  CHECK(forced_inst.k == 1);
  CHECK_FALSE(forced_inst.g.contains(3));

  auto [kept_inst, none] = rpf::rule2_force_delete({path_and_chord_vertex(), {0, 1, 2}, 2, 1});
  CHECK(none.empty());
  CHECK(kept_inst.k == 2);
  CHECK(kept_inst.g == path_and_chord_vertex());

  CHECK_THROWS_AS(rpf::rule2_force_delete({complete_graph(3), {0, 1, 2}, 1, 0}), PreconditionError);
}

TEST_CASE("Rule 2 merges excess across several S-components") {
  // S = two disjoint edges; v joined to both endpoints of the first and one
  // endpoint of the second: excess 1 after merging.
  MultiGraph g(5);
  g.add_edge(0, 1);
  g.add_edge(2, 3);
  g.add_edge(4, 0);
  g.add_edge(4, 1);
  g.add_edge(4, 2);
  CHECK(rpf::rule2_force_delete({g, {0, 1, 2, 3}, 1, 0}).second == VertexSet{4});
  CHECK(rpf::rule2_force_delete({g, {0, 1, 2, 3}, 1, 1}).second.empty());
}

TEST_CASE("Rule 3 bypasses degree-2 vertices with a free neighbor") {
  auto bypassed = rpf::rule3_bypass({path_graph(3), {0, 2}, 1, 1});
  // 1 has both neighbors in S and stays.
  CHECK(bypassed.g.contains(1));

  auto chain = rpf::rule3_bypass({path_graph(3), {0}, 1, 1});
  CHECK_FALSE(chain.g.contains(1));
  CHECK(chain.g.multiplicity(0, 2) == 1);

  MultiGraph dbl(3);
  dbl.add_edge(0, 1);
  dbl.add_edge(0, 1);
  dbl.add_edge(1, 2);
  dbl.add_edge(1, 2);
  dbl.add_edge(1, 2);
  auto looped = rpf::rule3_bypass({dbl, {2}, 1, 1});
  CHECK_FALSE(looped.g.contains(0));
  CHECK(looped.g.loops(1) == 1);
}

TEST_CASE("Rule 4") {
  CHECK(rpf::rule4_budget({path_graph(2), {}, -1, 0}) == rpf::Verdict::no);
  CHECK(rpf::rule4_budget({path_graph(2), {}, 0, 0}) == rpf::Verdict::proceed);
  // A forced deletion with k = 0 runs the budget negative.
  auto [after, forced] = rpf::rule2_force_delete({path_and_chord_vertex(), {0, 1, 2}, 0, 0});
  CHECK(rpf::rule4_budget(after) == rpf::Verdict::no);
}

TEST_CASE("measure") {
  MultiGraph g = complete_graph(3);
  CHECK(phi({g, {0, 1, 2}, 3, 2}) == 5);
  CHECK(phi({g, {}, 4, 2}) == 4);
  CHECK(rpf::root_measure_bound(2, 1) == 9);
  CHECK_THROWS_AS(rpf::measure({complete_graph(4), {0, 1, 2, 3}, 1, 1}), PreconditionError);
}

TEST_CASE("property: root measure stays below (k+1)(r+2) when |S| <= k+1") {
  for (const auto& [name, g] : testing::random_multigraph_family(120, 8, 3131)) {
    const auto vs = g.vertices();
    for (int r = 0; r <= 2; ++r) {
      for (int k = 0; k <= 2; ++k) {
        for_each_subset_up_to(vs, static_cast<std::size_t>(k + 1), [&](const VertexSet& s) {
          if (!is_r_pseudoforest(g.induced(s), r)) return false;
          CHECK(phi({g, s, k, r}) < rpf::root_measure_bound(k, r));
          return false;
        });
      }
    }
  }
}

TEST_CASE("node_ceiling") {
  CHECK(rpf::node_ceiling(0, 0) == 9);
  CHECK(rpf::node_ceiling(1, 1) == 15625);
  CHECK(rpf::node_ceiling(40, 5) == std::numeric_limits<std::uint64_t>::max());
}

TEST_CASE("BR-1") {
  SUBCASE("two S-components: merge drops the measure by at least 2") {
    MultiGraph g = path_graph(5);  // S = {0,1}, {3,4}; v = 2
    DisjointInstance inst{g, {0, 1, 3, 4}, 2, 1};
    auto children = rpf::branch_br1(inst, 2);
    REQUIRE(children.size() == 2);
    CHECK(children[0].deleted == VertexSet{2});
    CHECK(children[0].instance.k == 1);
    CHECK(phi(children[0].instance) == phi(inst) - 1);
    CHECK(children[1].instance.s.count(2));
    CHECK(phi(children[1].instance) <= phi(inst) - 2);
  }
  SUBCASE("double edge into one S-component") {
    MultiGraph g(3);
    g.add_edge(0, 1);
    g.add_edge(2, 0);
    g.add_edge(2, 0);
    DisjointInstance inst{g, {0, 1}, 1, 1};
    auto children = rpf::branch_br1(inst, 2);
    REQUIRE(children.size() == 2);
    CHECK(phi(children[1].instance) <= phi(inst) - 1);
  }
  SUBCASE("merge child dropped when it breaks the class") {
    DisjointInstance inst{path_and_chord_vertex(), {0, 1, 2}, 1, 0};
    CHECK(rpf::branch_br1(inst, 3).size() == 1);
  }
  SUBCASE("preconditions") {
    DisjointInstance inst{path_graph(3), {0}, 1, 0};
    CHECK_THROWS_AS(rpf::branch_br1(inst, 1), PreconditionError);
    CHECK_THROWS_AS(rpf::branch_br1(inst, 0), PreconditionError);
  }
}

TEST_CASE("BR-2") {
  SUBCASE("attached path: one child per path vertex plus the merge") {
    // S = {0}; cycle 0-1-2-3-0 with a loop on 0 and r = 1, so the merge
    // child would reach excess 2.
    MultiGraph g = cycle_graph(4);
    g.add_edge(0, 0);
    DisjointInstance inst{g, {0}, 2, 1};
    auto br = rpf::branch_br2(inst);
    CHECK(br.path == std::vector<VertexId>{1, 2, 3});
    CHECK(br.children.size() == 3);
    for (const auto& c : br.children) CHECK(phi(c.instance) <= phi(inst) - 1);
  }
  SUBCASE("component on a single edge with an infeasible merge") {
    MultiGraph g(4);
    g.add_edge(0, 0);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(2, 3);
    g.add_edge(3, 1);
    DisjointInstance inst{g, {0}, 1, 1};
    auto br = rpf::branch_br2(inst);
    CHECK(br.path.empty());
    REQUIRE(br.children.size() == 1);
    CHECK(br.children[0].deleted == VertexSet{1});
  }
  SUBCASE("BR-1 territory is refused") {
    MultiGraph g(2);
    g.add_edge(0, 1);
    g.add_edge(0, 1);
    CHECK_THROWS_AS(rpf::branch_br2({g, {0}, 1, 1}), PreconditionError);
  }
  SUBCASE("r = 1 paths have at most four vertices") {
    rpf::Stats stats;
    for (const auto& [name, g] : testing::random_multigraph_family(200, 9, 999))
      for (int k = 0; k <= 3; ++k) rpf::solve({g, k, 1}, &stats);
    CHECK(stats.longest_branch_path <= 4);
    CHECK(stats.path_bound_violations == 0);
  }
}

TEST_CASE("solve_disjoint examples") {
  auto sol = rpf::solve_disjoint({complete_graph(3), {0, 1, 2}, 0, 1});
  CHECK(sol.yes());
  CHECK(sol.witness.empty());

  // Bowtie: triangles 0,1,2 and 0,3,4 share 0. S = {3,4}, r = 0, k = 1.
  MultiGraph bowtie(5);
  for (auto [u, v] : {std::pair{0, 1}, {1, 2}, {0, 2}, {0, 3}, {3, 4}, {0, 4}})
    bowtie.add_edge(static_cast<VertexId>(u), static_cast<VertexId>(v));
  bool expected = false;
  for_each_subset_up_to(std::vector<VertexId>{0, 1, 2}, 1, [&](const VertexSet& x) {
    expected = expected || oracle::is_r_pseudoforest(bowtie.without(x), 0);
    return expected;
  });
  auto bow = rpf::solve_disjoint({bowtie, {3, 4}, 1, 0});
  CHECK(bow.yes() == expected);
  CHECK(bow.witness == VertexSet{0});
}

TEST_CASE("solve_disjoint copes with S that is not a deletion set") {
  rpf::Stats stats;
  // S = {0}; G - S is K4 on 1..4.
  MultiGraph g = complete_graph(5);
  oracle::Options o;
  o.undeletable = {0};
  for (int r = 0; r <= 2; ++r) {
    for (int k = 0; k <= 4; ++k) {
      auto opt = oracle::min_rpf(g, r, o).opt_size;
      CHECK(rpf::solve_disjoint({g, {0}, k, r}, &stats).yes() == (opt && *opt <= k));
    }
  }
  CHECK(stats.obstruction_branchings > 0);
}

TEST_CASE("property: solve_disjoint matches the oracle with arbitrary S") {
  rpf::Stats stats;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    Rng rng(seed + 123);
    const int n = rng.uniform_int(2, 8);
    MultiGraph g = gen_random_multigraph(n, rng.uniform_int(0, 2 * n + 2), seed + 123);
    const int r = rng.uniform_int(0, 2);
    VertexSet s;
    for (VertexId v : g.vertices())
      if (rng.chance(1, 3) && is_r_pseudoforest(g.induced(with_vertex(s, v)), r)) s.insert(v);
    oracle::Options o;
    o.undeletable = s;
    auto opt = oracle::min_rpf(g, r, o).opt_size;
    for (int k = 0; k <= 3; ++k) {
      auto sol = rpf::solve_disjoint({g, s, k, r}, &stats);
      CHECK(sol.yes() == (opt && *opt <= k));
    }
  }
  CHECK(stats.measure_violations == 0);
}

TEST_CASE("solve examples") {
  CHECK(rpf::solve({cycle_graph(5), 1, 0}).yes());
  CHECK_FALSE(rpf::solve({complete_graph(4), 0, 1}).yes());
  auto k4 = rpf::solve({complete_graph(4), 1, 1});
  CHECK(k4.yes());
  CHECK(k4.witness.size() == 1);

  const MultiGraph pete = petersen_graph();
  const int opt = *oracle::min_rpf(pete, 1).opt_size;
  int smallest = 0;
  while (!rpf::solve({pete, smallest, 1}).yes()) ++smallest;
  CHECK(smallest == opt);
}

TEST_CASE("solve preconditions") {
  CHECK_THROWS_AS(rpf::solve({path_graph(2), -1, 0}), PreconditionError);
  CHECK_THROWS_AS(rpf::solve({path_graph(2), 0, -1}), PreconditionError);
  CHECK(rpf::solve({MultiGraph{}, 0, 0}).yes());
}

TEST_CASE("property: witnesses are sound and deterministic") {
  for (const auto& [name, g] : testing::random_multigraph_family(150, 9, 2024)) {
    for (int r = 0; r <= 2; ++r) {
      for (int k = 0; k <= 3; ++k) {
        auto a = rpf::solve({g, k, r});
        auto b = rpf::solve({g, k, r});
        CHECK(a.yes() == b.yes());
        CHECK(a.witness == b.witness);
        if (a.yes()) {
          CHECK(static_cast<int>(a.witness.size()) <= k);
          CHECK(oracle::is_r_pseudoforest(g.without(a.witness), r));
        }
      }
    }
  }
}

TEST_CASE("trace writes one line per node") {
  std::ostringstream trace;
  rpf::Options options;
  options.trace = &trace;
  rpf::Stats stats;
  rpf::solve({complete_graph(5), 2, 1}, &stats, options);
  std::size_t lines = 0;
  for (char c : trace.str()) lines += c == '\n';
  CHECK(lines > 0);
  CHECK(lines <= stats.nodes_expanded);
}
