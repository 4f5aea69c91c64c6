#include "nearforest/graph_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

#include "nearforest/errors.hpp"

namespace nearforest {

namespace {

std::vector<std::string_view> split_words(std::string_view line) {
  std::vector<std::string_view> words;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) words.push_back(line.substr(i, j - i));
    i = j;
  }
  return words;
}

std::size_t to_count(std::string_view word, std::size_t line_no) {
  std::size_t value = 0;
  auto [end, ec] = std::from_chars(word.data(), word.data() + word.size(), value);
  if (ec != std::errc() || end != word.data() + word.size())
    throw ParseError(line_no, "expected a non-negative integer, got '" + std::string(word) + "'");
  return value;
}

}  // namespace

MultiGraph parse_graph(std::string_view text) {
  std::optional<MultiGraph> g;
  std::size_t declared_edges = 0;
  std::size_t seen_edges = 0;
  std::size_t header_line = 0;
  std::size_t line_no = 0;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;

    auto words = split_words(line);
    if (words.empty() || words[0][0] == 'c') continue;
    if (words[0] == "p") {
      if (g) throw ParseError(line_no, "duplicate problem line");
      if (words.size() != 4 || words[1] != "edge") throw ParseError(line_no, "expected 'p edge <n> <m>'");
      g.emplace(to_count(words[2], line_no));
      declared_edges = to_count(words[3], line_no);
      header_line = line_no;
    } else if (words[0] == "e") {
      if (!g) throw ParseError(line_no, "edge before problem line");
      if (words.size() != 3) throw ParseError(line_no, "expected 'e <u> <v>'");
      const std::size_t u = to_count(words[1], line_no);
      const std::size_t v = to_count(words[2], line_no);
      const std::size_t n = g->id_bound();
      if (u < 1 || u > n || v < 1 || v > n)
        throw ParseError(line_no, "vertex index out of range [1, " + std::to_string(n) + "]");
      if (++seen_edges > declared_edges)
        throw ParseError(line_no, "more edges than the declared " + std::to_string(declared_edges));
      g->add_edge(static_cast<VertexId>(u - 1), static_cast<VertexId>(v - 1));
    } else {
      throw ParseError(line_no, "unrecognised line '" + std::string(line) + "'");
    }
  }
  if (!g) throw ParseError(line_no, "missing problem line");
  if (seen_edges != declared_edges)
    throw ParseError(header_line, "declared " + std::to_string(declared_edges) + " edges, found " +
                                      std::to_string(seen_edges));
  return std::move(*g);
}

std::string serialize_graph(const MultiGraph& g) {
  std::vector<VertexId> index(g.id_bound(), 0);
  VertexId next = 1;
  for (VertexId v : g.vertices()) index[v] = next++;

  std::vector<std::pair<VertexId, VertexId>> edges;
  for (VertexId v : g.vertices()) {
    for (int i = 0; i < g.loops(v); ++i) edges.emplace_back(index[v], index[v]);
    for (const auto& [w, mult] : g.neighbors(v))
      if (v < w)
        for (int i = 0; i < mult; ++i) edges.emplace_back(index[v], index[w]);
  }
  std::sort(edges.begin(), edges.end());

  std::ostringstream out;
  out << "p edge " << g.vertex_count() << ' ' << edges.size() << '\n';
  for (const auto& [u, v] : edges) out << "e " << u << ' ' << v << '\n';
  return out.str();
}

MultiGraph read_graph_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_graph(buffer.str());
}

void write_graph_file(const std::string& path, const MultiGraph& g) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << serialize_graph(g);
}

}  // namespace nearforest
