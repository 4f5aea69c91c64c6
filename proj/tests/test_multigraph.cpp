#include <doctest.h>

#include "nearforest/errors.hpp"
#include "nearforest/generators.hpp"
#include "nearforest/multigraph.hpp"

using namespace nearforest;

TEST_CASE("add_edge counts multiplicity, loops and edges") {
  MultiGraph g(2);
  g.add_edge(0, 1);
  g.add_edge(0, 1);
  CHECK(g.multiplicity(0, 1) == 2);
  CHECK(g.multiplicity(1, 0) == 2);
  CHECK(g.edge_count() == 2);

  MultiGraph h(1);
  h.add_edge(0, 0);
  CHECK(h.loops(0) == 1);
  CHECK(h.degree(0) == 2);
  CHECK(h.edge_count() == 1);

  MultiGraph k3 = complete_graph(3);
  k3.add_edge(0, 1);
  CHECK(k3.edge_count() == 4);
  CHECK(k3.is_consistent());
}

TEST_CASE("add_edge rejects unknown vertices") {
  MultiGraph g(2);
  CHECK_THROWS_AS(g.add_edge(0, 2), GraphError);
  g.delete_vertex(1);
  CHECK_THROWS_AS(g.add_edge(0, 1), GraphError);
}

TEST_CASE("delete_vertex") {
  MultiGraph k3 = complete_graph(3);
  k3.delete_vertex(2);
  CHECK(k3.vertex_count() == 2);
  CHECK(k3.edge_count() == 1);
  CHECK(k3.multiplicity(0, 1) == 1);

  MultiGraph g(3);
  g.add_edge(0, 0);
  g.add_edge(0, 0);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.delete_vertex(0);
  CHECK(g.edge_count() == 1);
  CHECK(g.degree(1) == 1);

  MultiGraph iso(3);
  iso.add_edge(0, 1);
  iso.delete_vertex(2);
  CHECK(iso.vertex_count() == 2);
  CHECK(iso.edge_count() == 1);
  CHECK_FALSE(iso.contains(2));
  // Ids are never reused.
  CHECK(iso.add_vertex() == 3);
}

TEST_CASE("bypass_degree2") {
  SUBCASE("path a-u-b") {
    MultiGraph g = path_graph(3);
    g.bypass_degree2(1);
    CHECK(g.vertex_count() == 2);
    CHECK(g.edge_count() == 1);
    CHECK(g.multiplicity(0, 2) == 1);
  }
  SUBCASE("triangle gives a double edge") {
    MultiGraph g = complete_graph(3);
    g.bypass_degree2(1);
    CHECK(g.multiplicity(0, 2) == 2);
  }
  SUBCASE("double edge to x gives a loop") {
    MultiGraph g(2);
    g.add_edge(0, 1);
    g.add_edge(0, 1);
    g.bypass_degree2(1);
    CHECK(g.loops(0) == 1);
    CHECK(g.vertex_count() == 1);
  }
  SUBCASE("refuses loops and other degrees") {
    MultiGraph g(2);
    g.add_edge(0, 0);
    CHECK_THROWS_AS(g.bypass_degree2(0), PreconditionError);
    MultiGraph s = star_graph(3);
    CHECK_THROWS_AS(s.bypass_degree2(0), PreconditionError);
  }
}

TEST_CASE("components") {
  MultiGraph g(6);
  for (VertexId base : {0u, 3u}) {
    g.add_edge(base, base + 1);
    g.add_edge(base + 1, base + 2);
    g.add_edge(base, base + 2);
  }
  auto comps = components(g);
  REQUIRE(comps.size() == 2);
  CHECK(comps[0].edge_count == 3);
  CHECK(comps[1].edge_count == 3);
  CHECK(comps[0].vertices == VertexSet{0, 1, 2});

  CHECK(components(MultiGraph{}).empty());

  MultiGraph loop(1);
  loop.add_edge(0, 0);
  auto one = components(loop);
  REQUIRE(one.size() == 1);
  CHECK(one[0].edge_count == 1);
}

TEST_CASE("components_within restricts to the region") {
  MultiGraph g = path_graph(5);
  auto comps = components_within(g, {0, 1, 3, 4});
  REQUIRE(comps.size() == 2);
  CHECK(comps[0].vertices == VertexSet{0, 1});
  CHECK(comps[0].edge_count == 1);
}

TEST_CASE("shortest_attached_path") {
  SUBCASE("single vertex with two anchor edges") {
    MultiGraph g(3);
    g.add_edge(0, 2);
    g.add_edge(1, 2);
    auto p = shortest_attached_path(g, {2}, {0, 1});
    REQUIRE(p);
    CHECK(*p == std::vector<VertexId>{2});
  }
  SUBCASE("path x-y-z with only the ends attached") {
    MultiGraph g(4);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(2, 3);
    g.add_edge(3, 0);
    auto p = shortest_attached_path(g, {1, 2, 3}, {0});
    REQUIRE(p);
    CHECK(*p == std::vector<VertexId>{1, 2, 3});
  }
  SUBCASE("a lone vertex with one anchor edge is not a path") {
    MultiGraph g(2);
    g.add_edge(0, 1);
    CHECK_FALSE(shortest_attached_path(g, {1}, {0}));
  }
  SUBCASE("no anchor edges") {
    MultiGraph g = path_graph(3);
    g.add_vertex();
    CHECK_FALSE(shortest_attached_path(g, {0, 1, 2}, {3}));
  }
}

TEST_CASE("neighbors_in") {
  MultiGraph g(4);
  g.add_edge(0, 1);
  g.add_edge(0, 1);
  auto r = neighbors_in(g, 0, {1});
  CHECK(r.distinct == VertexSet{1});
  CHECK(r.total == 2);

  auto none = neighbors_in(g, 2, {1});
  CHECK(none.distinct.empty());
  CHECK(none.total == 0);

  MultiGraph h(3);
  h.add_edge(0, 1);
  h.add_edge(0, 2);
  auto two = neighbors_in(h, 0, {1, 2});
  CHECK(two.distinct == VertexSet{1, 2});
  CHECK(two.total == 2);
}

TEST_CASE("property: random mutation sequences keep the graph consistent") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    MultiGraph g(8);
    for (int step = 0; step < 40; ++step) {
      auto live = g.vertices();
      if (live.empty()) break;
      VertexId u = live[rng.uniform(0, live.size() - 1)];
      VertexId v = live[rng.uniform(0, live.size() - 1)];
      switch (rng.uniform(0, 3)) {
        case 0:
        case 1:
          g.add_edge(u, v);
          break;
        case 2:
          g.delete_vertex(u);
          break;
        case 3:
          if (g.degree(u) == 2 && g.loops(u) == 0) {
            const std::size_t n = g.vertex_count(), m = g.edge_count();
            g.bypass_degree2(u);
            CHECK(g.vertex_count() == n - 1);
            CHECK(g.edge_count() == m - 1);
          }
          break;
      }
      REQUIRE(g.is_consistent());
      long sum = 0;
      for (const auto& c : components(g)) sum += c.edge_count;
      CHECK(sum == static_cast<long>(g.edge_count()));
    }
  }
}

TEST_CASE("induced and without keep original ids") {
  MultiGraph g = complete_graph(4);
  MultiGraph h = g.without({1});
  CHECK_FALSE(h.contains(1));
  CHECK(h.contains(3));
  CHECK(h.edge_count() == 3);
  CHECK(g.induced({0, 2, 3}) == h);
}
