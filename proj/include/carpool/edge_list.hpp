#pragma once

#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "carpool/graph.hpp"

namespace carpool {

/// Reads "u v" lines (0-indexed). Blank lines and lines starting with '#' are
/// skipped; an optional "n <count>" line fixes the vertex count, otherwise it
/// is 1 + the largest index seen.
inline Graph read_edge_list(std::istream& in) {
  std::optional<std::size_t> declared;
  std::vector<Edge> edges;
  std::size_t top = 0;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line.substr(first));
    auto bad = [&] { return std::invalid_argument("edge list line " + std::to_string(lineno) + ": '" + line + "'"); };
    if (line[first] == 'n') {
      std::string tag;
      long long count = -1;
      if (!(ls >> tag >> count) || tag != "n" || count < 0 || declared || !edges.empty()) throw bad();
      declared = static_cast<std::size_t>(count);
      continue;
    }
    long long u = -1, v = -1;
    if (!(ls >> u >> v) || u < 0 || v < 0 || u > UINT32_MAX - 1 || v > UINT32_MAX - 1) throw bad();
    std::string rest;
    if (ls >> rest && rest[0] != '#') throw bad();
    edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
    top = std::max<std::size_t>(top, static_cast<std::size_t>(std::max(u, v)) + 1);
  }
  if (in.bad()) throw std::runtime_error("edge list: read error");
  return build_graph(edges, declared.value_or(top));
}

inline Graph read_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_edge_list(in);
}

inline void write_edge_list(std::ostream& out, const Graph& g) {
  out << "n " << g.num_vertices() << '\n';
  for (const auto& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

}  // namespace carpool
