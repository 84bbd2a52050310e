#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "carpool/graph.hpp"

namespace carpool {

/// An edge of the arrival graph, identified by its index.
struct EdgeArrival {
  EdgeId id;
  Edge edge;
};

/// I.i.d. uniform draws (with replacement) from the edge multiset of a graph.
/// Parallel edges are separate entries, so they are weighted by multiplicity.
/// The sequence is a pure function of (graph, horizon, seed).
class UniformEdgeStream {
 public:
  UniformEdgeStream(const Graph& g, std::uint64_t horizon, std::uint64_t seed)
      : graph_(&g), horizon_(horizon), engine_(seed), pick_(0, g.num_edges() == 0 ? 0 : g.num_edges() - 1) {
    if (g.num_edges() == 0) throw std::invalid_argument("uniform_edge_stream: graph has no edges");
  }

  std::uint64_t horizon() const { return horizon_; }
  std::uint64_t remaining() const { return horizon_ - drawn_; }
  bool done() const { return drawn_ >= horizon_; }

  EdgeArrival next() {
    if (done()) throw std::out_of_range("uniform_edge_stream: horizon exhausted");
    ++drawn_;
    const auto id = static_cast<EdgeId>(pick_(engine_));
    return {id, graph_->edge(id)};
  }

 private:
  const Graph* graph_;
  std::uint64_t horizon_;
  std::uint64_t drawn_ = 0;
  std::mt19937_64 engine_;
  std::uniform_int_distribution<std::size_t> pick_;
};

/// I.i.d. pairs (u, v) with u and v drawn independently, P(x) = w_x / sum w.
/// Each vertex is found by binary search over integer prefix sums, so the
/// thresholds are exact. u == v is possible.
class ProductPairStream {
 public:
  ProductPairStream(std::span<const std::uint64_t> weights, std::uint64_t horizon, std::uint64_t seed)
      : horizon_(horizon), engine_(seed) {
    prefix_.reserve(weights.size());
    std::uint64_t acc = 0;
    for (auto w : weights) {
      acc += w;
      prefix_.push_back(acc);
    }
    if (acc == 0) throw std::invalid_argument("product_pair_stream: weights must not all be zero");
    pick_ = std::uniform_int_distribution<std::uint64_t>(0, acc - 1);
  }

  std::uint64_t horizon() const { return horizon_; }
  std::uint64_t remaining() const { return horizon_ - drawn_; }
  bool done() const { return drawn_ >= horizon_; }
  std::uint64_t total_weight() const { return prefix_.back(); }

  Vertex sample_vertex() {
    const std::uint64_t r = pick_(engine_);
    return static_cast<Vertex>(std::upper_bound(prefix_.begin(), prefix_.end(), r) - prefix_.begin());
  }

  Edge next() {
    if (done()) throw std::out_of_range("product_pair_stream: horizon exhausted");
    ++drawn_;
    const Vertex u = sample_vertex();
    const Vertex v = sample_vertex();
    return {u, v};
  }

 private:
  std::uint64_t horizon_;
  std::uint64_t drawn_ = 0;
  std::mt19937_64 engine_;
  std::vector<std::uint64_t> prefix_;
  std::uniform_int_distribution<std::uint64_t> pick_;
};

inline std::vector<EdgeArrival> uniform_edge_stream(const Graph& g, std::uint64_t horizon, std::uint64_t seed) {
  UniformEdgeStream s(g, horizon, seed);
  std::vector<EdgeArrival> out;
  out.reserve(horizon);
  while (!s.done()) out.push_back(s.next());
  return out;
}

inline std::vector<Edge> product_pair_stream(std::span<const std::uint64_t> weights, std::uint64_t horizon,
                                             std::uint64_t seed) {
  ProductPairStream s(weights, horizon, seed);
  std::vector<Edge> out;
  out.reserve(horizon);
  while (!s.done()) out.push_back(s.next());
  return out;
}

/// Degree weights w_v = degree(v) of the product distribution tied to a graph.
inline std::vector<std::uint64_t> degree_weights(const Graph& g) { return g.degrees(); }

}  // namespace carpool
