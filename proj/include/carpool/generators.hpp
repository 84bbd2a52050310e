#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "carpool/graph.hpp"

namespace carpool::gen {

inline Graph complete(std::size_t n) {
  std::vector<Edge> e;
  e.reserve(n * (n - (n > 0)) / 2);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) e.push_back({u, v});
  return build_graph(std::move(e), n);
}

inline Graph path(std::size_t n) {
  std::vector<Edge> e;
  for (Vertex v = 1; v < n; ++v) e.push_back({v - 1, v});
  return build_graph(std::move(e), n);
}

inline Graph cycle(std::size_t n) {
  if (n < 3) throw std::invalid_argument("cycle: need n >= 3");
  std::vector<Edge> e;
  for (Vertex v = 0; v < n; ++v) e.push_back({v, static_cast<Vertex>((v + 1) % n)});
  return build_graph(std::move(e), n);
}

/// rows x cols grid; vertex (r, c) is r * cols + c.
inline Graph grid(std::size_t rows, std::size_t cols) {
  std::vector<Edge> e;
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      const auto v = static_cast<Vertex>(r * cols + c);
      if (c + 1 < cols) e.push_back({v, v + 1});
      if (r + 1 < rows) e.push_back({v, static_cast<Vertex>(v + cols)});
    }
  return build_graph(std::move(e), rows * cols);
}

/// Two copies of K_k on {0..k-1} and {k..2k-1}, joined by the edge (k-1, k).
inline Graph barbell(std::size_t k) {
  std::vector<Edge> e;
  for (Vertex base : {Vertex{0}, static_cast<Vertex>(k)})
    for (Vertex u = 0; u < k; ++u)
      for (Vertex v = u + 1; v < k; ++v) e.push_back({base + u, base + v});
  e.push_back({static_cast<Vertex>(k - 1), static_cast<Vertex>(k)});
  return build_graph(std::move(e), 2 * k);
}

/// K_{1,leaves} with center 0.
inline Graph star(std::size_t leaves) {
  std::vector<Edge> e;
  for (Vertex v = 1; v <= leaves; ++v) e.push_back({0, v});
  return build_graph(std::move(e), leaves + 1);
}

/// m parallel copies of the edge (0, 1).
inline Graph parallel_edges(std::size_t m) { return build_graph(std::vector<Edge>(m, Edge{0, 1}), 2); }

/// G(n, p): each pair independently.
inline Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution keep(p);
  std::vector<Edge> e;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (keep(rng)) e.push_back({u, v});
  return build_graph(std::move(e), n);
}

/// m edges with endpoints uniform over distinct pairs; parallel edges allowed.
inline Graph random_multigraph(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (n < 2 && m > 0) throw std::invalid_argument("random_multigraph: need n >= 2");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(n - 1));
  std::vector<Edge> e;
  e.reserve(m);
  while (e.size() < m) {
    const Vertex u = pick(rng), v = pick(rng);
    if (u != v) e.push_back({u, v});
  }
  return build_graph(std::move(e), n);
}

}  // namespace carpool::gen
