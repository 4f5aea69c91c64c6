#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "nearforest/errors.hpp"
#include "nearforest/generators.hpp"
#include "nearforest/graph_io.hpp"
#include "support.hpp"

using namespace nearforest;

namespace {

std::size_t error_line(const std::string& text) {
  try {
    parse_graph(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_CASE("parse examples") {
  CHECK(parse_graph("p edge 3 3\ne 1 2\ne 2 3\ne 1 3") == complete_graph(3));

  MultiGraph twice = parse_graph("p edge 2 2\ne 1 2\ne 1 2");
  CHECK(twice.vertex_count() == 2);
  CHECK(twice.multiplicity(0, 1) == 2);

  MultiGraph loop = parse_graph("p edge 1 1\ne 1 1");
  CHECK(loop.vertex_count() == 1);
  CHECK(loop.loops(0) == 1);
  CHECK(loop.degree(0) == 2);
}

TEST_CASE("comments, blank lines and CRLF are tolerated") {
  CHECK(parse_graph("c triangle\n\np edge 3 3\r\ne 1 2\r\nc mid\ne 2 3\n  e 1 3  \n") == complete_graph(3));
  CHECK(parse_graph("p edge 0 0\n").empty());
  CHECK(parse_graph("p edge 4 0\n").vertex_count() == 4);
}

TEST_CASE("parse errors carry the line number") {
  CHECK(error_line("") == 1);
  CHECK(error_line("e 1 2\np edge 2 1\n") == 1);
  CHECK(error_line("p edge 2 1\np edge 2 1\n") == 2);
  CHECK(error_line("p edge 2 1\ne 1\n") == 2);
  CHECK(error_line("p edge 2 1\ne 1 x\n") == 2);
  CHECK(error_line("p edge 2 1\ne 1 3\n") == 2);
  CHECK(error_line("p edge 2 1\ne 0 1\n") == 2);
  CHECK(error_line("p edge 2 1\ne 1 2\ne 1 2\n") == 3);
  CHECK(error_line("c x\np edge 2 2\ne 1 2\n") == 2);
  CHECK(error_line("p edge 2 1\nq 1 2\n") == 2);
  CHECK(error_line("p graph 2 1\ne 1 2\n") == 1);
  CHECK(error_line("p edge -2 1\n") == 1);
}

TEST_CASE("serialize renumbers live vertices and sorts edges") {
  MultiGraph g(4);
  g.add_edge(3, 1);
  g.add_edge(3, 3);
  g.add_edge(1, 3);
  g.delete_vertex(0);
  CHECK(serialize_graph(g) == "p edge 3 3\ne 1 3\ne 1 3\ne 3 3\n");
}

TEST_CASE("property: parse after serialize is the identity") {
  for (const auto& [name, g] : testing::sweep_family()) {
    CAPTURE(name);
    const std::string text = serialize_graph(g);
    const MultiGraph back = parse_graph(text);
    CHECK(back == g);
    CHECK(serialize_graph(back) == text);
  }
}

TEST_CASE("file round trip and missing files") {
  const auto path = std::filesystem::temp_directory_path() / "nearforest_io_test.gr";
  const MultiGraph g = petersen_graph();
  write_graph_file(path.string(), g);
  CHECK(read_graph_file(path.string()) == g);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_graph_file(path.string()), std::runtime_error);
}
