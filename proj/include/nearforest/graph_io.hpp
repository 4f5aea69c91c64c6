#pragma once

#include <string>
#include <string_view>

#include "nearforest/multigraph.hpp"

namespace nearforest {

// "p edge n m" followed by m lines "e u v" with 1-indexed endpoints.
// Repeated lines are parallel edges, "e u u" is a loop, lines starting with
// 'c' and blank lines are ignored. File vertex i becomes VertexId i-1.
// Throws ParseError carrying the 1-based line number.
MultiGraph parse_graph(std::string_view text);

// Live vertices are renumbered 1..n in increasing id order; edges are listed
// sorted, one line per unit of multiplicity.
std::string serialize_graph(const MultiGraph& g);

MultiGraph read_graph_file(const std::string& path);
void write_graph_file(const std::string& path, const MultiGraph& g);

}  // namespace nearforest
