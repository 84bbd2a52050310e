#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "carpool/decomposition.hpp"
#include "carpool/orientation.hpp"

namespace carpool {

/// Greedy run independently inside every part of a decomposition. Each
/// arriving parent edge is routed to the part that owns it and oriented by
/// that part's discrepancies only; the global state is the sum of the parts.
class ComposedOrienter {
 public:
  ComposedOrienter(const Decomposition& d, double lambda) : decomposition_(&d), global_(d.n, lambda) {
    parts_.reserve(d.parts.size());
    for (const auto& part : d.parts) parts_.emplace_back(part.vertices.size(), lambda);
  }

  const OrientationState& global() const { return global_; }
  const OrientationState& part_state(std::size_t p) const { return parts_.at(p); }
  std::size_t num_parts() const { return parts_.size(); }

  /// Orients parent edge `edge_index`. Returns the orientation in parent ids.
  template <CoinSource C>
  OrientedEdge step(EdgeId edge_index, C& coins) {
    const auto& router = decomposition_->router;
    if (edge_index >= router.size() || router[edge_index].part == UINT32_MAX)
      throw std::invalid_argument("composed_step: edge " + std::to_string(edge_index) + " is not routed");
    const RouteSlot slot = router[edge_index];
    const auto& part = decomposition_->parts[slot.part];
    const OrientedEdge local = greedy_step(parts_[slot.part], part.graph.edge(slot.slot), coins);
    const OrientedEdge global = global_.apply(part.vertices[local.tail], part.vertices[local.head]);
    return global;
  }

  /// True iff every global discrepancy equals the sum of its per-part values.
  bool additive() const {
    std::vector<std::int64_t> sum(global_.size(), 0);
    for (std::size_t p = 0; p < parts_.size(); ++p) {
      const auto& verts = decomposition_->parts[p].vertices;
      for (Vertex local = 0; local < verts.size(); ++local) sum[verts[local]] += parts_[p].disc(local);
    }
    for (Vertex v = 0; v < sum.size(); ++v)
      if (sum[v] != global_.disc(v)) return false;
    return true;
  }

  /// Per vertex, the sum over its parts of that part's max |d|: an upper
  /// bound on |global d_v| by the triangle inequality.
  std::vector<std::int64_t> part_budgets() const {
    std::vector<std::int64_t> budget(global_.size(), 0);
    for (std::size_t p = 0; p < parts_.size(); ++p)
      for (Vertex v : decomposition_->parts[p].vertices) budget[v] += parts_[p].max_abs();
    return budget;
  }

 private:
  const Decomposition* decomposition_;
  OrientationState global_;
  std::vector<OrientationState> parts_;
};

template <CoinSource C>
OrientedEdge composed_step(ComposedOrienter& orienter, EdgeId edge_index, C& coins) {
  return orienter.step(edge_index, coins);
}

}  // namespace carpool
