#pragma once

// Hand-rolled generators for property tests: every case is a pure function
// of its index, so a failure reproduces from the printed seed alone.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "carpool/generators.hpp"
#include "carpool/graph.hpp"
#include "carpool/rng.hpp"

namespace carpool::prop {

inline std::mt19937_64 rng_for(std::uint64_t test_salt, std::uint64_t index) {
  return std::mt19937_64(mix_seed(test_salt * 0x100000001b3ULL + index));
}

inline std::size_t uniform_size(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

/// Random multigraph on n vertices with m edges, endpoints distinct.
inline Graph random_multigraph(std::mt19937_64& rng, std::size_t n, std::size_t m) {
  return gen::random_multigraph(n, m, rng());
}

/// Connected random multigraph: a random spanning tree plus `extra` edges.
inline Graph random_connected(std::mt19937_64& rng, std::size_t n, std::size_t extra) {
  std::vector<Edge> e;
  for (Vertex v = 1; v < n; ++v) {
    const auto parent = static_cast<Vertex>(std::uniform_int_distribution<std::size_t>(0, v - 1)(rng));
    e.push_back({parent, v});
  }
  std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(n - 1));
  while (extra > 0) {
    const Vertex u = pick(rng), v = pick(rng);
    if (u == v) continue;
    e.push_back({u, v});
    --extra;
  }
  std::shuffle(e.begin(), e.end(), rng);
  return build_graph(std::move(e), n);
}

/// Random self-loop counts added to a graph.
inline Graph with_random_loops(std::mt19937_64& rng, const Graph& g, std::uint32_t max_loops) {
  std::vector<std::uint32_t> loops(g.num_vertices());
  std::uniform_int_distribution<std::uint32_t> pick(0, max_loops);
  for (auto& l : loops) l = pick(rng);
  return Graph::from_edges(g.num_vertices(), std::vector<Edge>(g.edges().begin(), g.edges().end()), std::move(loops));
}

/// Nonempty proper vertex subset.
inline std::vector<Vertex> random_proper_subset(std::mt19937_64& rng, std::size_t n) {
  std::vector<Vertex> s;
  while (s.empty() || s.size() == n) {
    s.clear();
    for (Vertex v = 0; v < n; ++v)
      if (rng() & 1) s.push_back(v);
  }
  return s;
}

inline std::vector<std::int64_t> random_disc(std::mt19937_64& rng, std::size_t n, std::int64_t bound) {
  std::uniform_int_distribution<std::int64_t> pick(-bound, bound);
  std::vector<std::int64_t> d(n);
  for (auto& x : d) x = pick(rng);
  return d;
}

/// Random integer vector with sum zero.
inline std::vector<std::int64_t> random_zero_sum(std::mt19937_64& rng, std::size_t n, std::int64_t bound) {
  auto d = random_disc(rng, n, bound);
  std::int64_t sum = 0;
  for (auto x : d) sum += x;
  d[0] -= sum;
  return d;
}

/// Scripted coin source for exhaustive enumeration of tie bits.
struct ScriptedCoins {
  std::uint64_t bits = 0;
  int next = 0;
  int used = 0;
  bool bit() {
    ++used;
    return (bits >> (next++ % 64)) & 1;
  }
  double uniform() { return 0.5; }
};

}  // namespace carpool::prop
