#pragma once

#include <cstdint>
#include <vector>

#include "carpool/graph.hpp"
#include "carpool/orientation.hpp"

namespace carpool {

/// Orients every edge so that each vertex ends with |in - out| <= 1.
///
/// Odd-degree vertices are paired by virtual edges, which makes every degree
/// even; an Euler tour of each component is oriented along its direction of
/// travel and the virtual edges are then dropped. Each vertex touches at most
/// one virtual edge, so dropping them moves its balance by at most 1.
/// Returns one record per edge, in edge order (step = edge index + 1).
inline std::vector<OrientedEdge> offline_orient(const Graph& g) {
  const std::size_t n = g.num_vertices();
  const std::size_t m = g.num_edges();
  std::vector<Edge> all(g.edges().begin(), g.edges().end());
  {
    Vertex pending = UINT32_MAX;
    for (Vertex v = 0; v < n; ++v) {
      if (g.edge_degree(v) % 2 == 0) continue;
      if (pending == UINT32_MAX) {
        pending = v;
      } else {
        all.push_back({pending, v});
        pending = UINT32_MAX;
      }
    }
  }
  std::vector<std::vector<std::pair<EdgeId, Vertex>>> adj(n);
  for (EdgeId id = 0; id < all.size(); ++id) {
    adj[all[id].u].push_back({id, all[id].v});
    adj[all[id].v].push_back({id, all[id].u});
  }
  std::vector<char> used(all.size(), 0);
  std::vector<std::size_t> cursor(n, 0);
  std::vector<OrientedEdge> out(m);
  std::vector<Vertex> stack;
  for (Vertex start = 0; start < n; ++start) {
    stack.push_back(start);
    while (!stack.empty()) {
      const Vertex v = stack.back();
      auto& c = cursor[v];
      while (c < adj[v].size() && used[adj[v][c].first]) ++c;
      if (c == adj[v].size()) {
        stack.pop_back();
        continue;
      }
      const auto [id, w] = adj[v][c];
      used[id] = 1;
      if (id < m) out[id] = {v, w, std::uint64_t{id} + 1};
      stack.push_back(w);
    }
  }
  return out;
}

/// Discrepancy vector (in minus out) of a list of oriented edges.
inline std::vector<std::int64_t> discrepancy_of(std::size_t n, const std::vector<OrientedEdge>& oriented) {
  std::vector<std::int64_t> d(n, 0);
  for (const auto& e : oriented) {
    --d.at(e.tail);
    ++d.at(e.head);
  }
  return d;
}

}  // namespace carpool
