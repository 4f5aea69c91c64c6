#include <doctest.h>

#include "nearforest/forest_metrics.hpp"
#include "nearforest/generators.hpp"
#include "nearforest/oracle.hpp"
#include "support.hpp"

using namespace nearforest;

namespace {

Component whole(const MultiGraph& g) {
  auto comps = components(g);
  REQUIRE(comps.size() == 1);
  return comps[0];
}

MultiGraph two_triangles() {
  MultiGraph g(6);
  for (VertexId b : {0u, 3u}) {
    g.add_edge(b, b + 1);
    g.add_edge(b + 1, b + 2);
    g.add_edge(b, b + 2);
  }
  return g;
}

}  // namespace

TEST_CASE("excess") {
  CHECK(excess(whole(complete_graph(3))) == 1);
  CHECK(excess(whole(path_graph(6))) == 0);
  CHECK(excess(whole(star_graph(4))) == 0);
  CHECK(excess(whole(complete_graph(4))) == 3);
  MultiGraph loop(1);
  loop.add_edge(0, 0);
  CHECK(excess(whole(loop)) == 1);
}

TEST_CASE("excess_report takes the maximum over components") {
  MultiGraph g = two_triangles();
  g.add_edge(0, 0);
  auto rep = excess_report(g);
  CHECK(rep.per_component.size() == 2);
  CHECK(rep.graph_excess == 2);
  CHECK(excess_report(MultiGraph{}).graph_excess == 0);
}

TEST_CASE("is_r_pseudoforest") {
  CHECK(is_r_pseudoforest(two_triangles(), 1));
  CHECK_FALSE(is_r_pseudoforest(two_triangles(), 0));
  CHECK_FALSE(is_r_pseudoforest(complete_graph(4), 2));
  CHECK(is_r_pseudoforest(complete_graph(4), 3));
  for (int r = 0; r < 3; ++r) CHECK(is_r_pseudoforest(MultiGraph{}, r));
}

TEST_CASE("exact_fvs_size") {
  CHECK(exact_fvs_size(path_graph(7), 0) == 0);
  CHECK(exact_fvs_size(cycle_graph(5), 1) == 1);
  CHECK(exact_fvs_size(complete_graph(5), 3) == 3);
  CHECK_FALSE(exact_fvs_size(complete_graph(5), 2));
  CHECK(exact_fvs_size(petersen_graph(), 5) == 3);
  MultiGraph loop(1);
  loop.add_edge(0, 0);
  CHECK(exact_fvs_size(loop, 3) == 1);
  MultiGraph dbl(2);
  dbl.add_edge(0, 1);
  dbl.add_edge(0, 1);
  CHECK(exact_fvs_size(dbl, 3) == 1);
}

TEST_CASE("exact_fvs returns a feedback set of the reported size") {
  for (const auto& [name, g] : testing::random_multigraph_family(150, 10, 4242)) {
    auto size = exact_fvs_size(g, 10);
    auto set = exact_fvs(g, 10);
    REQUIRE(size);
    REQUIRE(set);
    CHECK(static_cast<int>(set->size()) == *size);
    CHECK(is_r_pseudoforest(g.without(*set), 0));
  }
}

TEST_CASE("is_d_quasi_forest") {
  CHECK(is_d_quasi_forest(two_triangles(), 1));
  CHECK_FALSE(is_d_quasi_forest(complete_graph(5), 2));
  CHECK(is_d_quasi_forest(complete_graph(5), 3));
  CHECK(is_d_quasi_forest(path_graph(4), 0));
}

TEST_CASE("find_short_cycle") {
  CHECK_FALSE(find_short_cycle(path_graph(5)));
  MultiGraph loop(3);
  loop.add_edge(0, 1);
  loop.add_edge(2, 2);
  CHECK(*find_short_cycle(loop) == std::vector<VertexId>{2});
  auto c = find_short_cycle(cycle_graph(6));
  REQUIRE(c);
  CHECK(c->size() == 6);
}

TEST_CASE("oracle cross-check on all graphs up to 10 vertices in the sample") {
  auto family = testing::random_multigraph_family(300, 10, 777);
  auto connected = testing::small_connected_family();
  family.insert(family.end(), connected.begin(), connected.end());
  family.push_back({"petersen", petersen_graph()});
  for (const auto& [name, g] : family) {
    CAPTURE(name);
    CHECK(exact_fvs_size(g, 10) == oracle::min_fvs(g));
    for (int d = 0; d <= 2; ++d) CHECK(is_d_quasi_forest(g, d) == oracle::is_d_quasi_forest(g, d));
    for (int r = 0; r <= 2; ++r) CHECK(is_r_pseudoforest(g, r) == oracle::is_r_pseudoforest(g, r));
  }
}

TEST_CASE("property: both classes are closed under vertex deletion") {
  for (const auto& [name, g] : testing::random_multigraph_family(200, 9, 31)) {
    Rng rng(g.vertex_count() * 131 + g.edge_count());
    VertexSet x;
    for (VertexId v : g.vertices())
      if (rng.chance(1, 3)) x.insert(v);
    for (int p = 0; p <= 2; ++p) {
      if (is_r_pseudoforest(g, p)) CHECK(is_r_pseudoforest(g.without(x), p));
      if (is_d_quasi_forest(g, p)) CHECK(is_d_quasi_forest(g.without(x), p));
    }
  }
}

TEST_CASE("property: a loop forces excess and feedback number at least one") {
  for (const auto& [name, base] : testing::random_multigraph_family(100, 8, 99)) {
    if (base.empty()) continue;
    MultiGraph g = base;
    const VertexId v = g.vertices().front();
    g.add_edge(v, v);
    for (const auto& c : components(g)) {
      if (!c.vertices.count(v)) continue;
      CHECK(excess(c) >= 1);
      CHECK(exact_fvs_size(g.induced(c.vertices), 10).value() >= 1);
    }
  }
}
