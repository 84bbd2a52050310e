#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace carpool {

using Vertex = std::uint32_t;
using EdgeId = std::uint32_t;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// One entry of a vertex's incidence list.
struct Incidence {
  Vertex other;
  EdgeId edge;
};

/// Raised when a runtime-checked structural invariant fails. Distinct from
/// std::invalid_argument, which flags bad caller input.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Immutable undirected multigraph with per-vertex self-loop counts.
///
/// Edges are kept in definition order. A self-loop contributes exactly 1 to
/// the degree of its vertex and never crosses a cut, so
/// vol(V) = 2 * num_edges() + total_self_loops().
class Graph {
 public:
  Graph() = default;

  /// Throws std::invalid_argument on an out-of-range endpoint or an edge
  /// with u == v (self-loops enter only through `self_loops`).
  static Graph from_edges(std::size_t n, std::vector<Edge> edges,
                          std::vector<std::uint32_t> self_loops = {}) {
    if (n > std::size_t{UINT32_MAX}) throw std::invalid_argument("graph: too many vertices");
    if (!self_loops.empty() && self_loops.size() != n)
      throw std::invalid_argument("graph: self_loops length " + std::to_string(self_loops.size()) +
                                  " != n " + std::to_string(n));
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const auto [u, v] = edges[i];
      if (u >= n || v >= n)
        throw std::invalid_argument("graph: edge " + std::to_string(i) + " (" + std::to_string(u) +
                                    "," + std::to_string(v) + ") index out of range for n=" +
                                    std::to_string(n));
      if (u == v)
        throw std::invalid_argument("graph: edge " + std::to_string(i) + " is a self-loop at " +
                                    std::to_string(u));
    }
    Graph g;
    g.n_ = n;
    g.edges_ = std::move(edges);
    g.loops_ = self_loops.empty() ? std::vector<std::uint32_t>(n, 0) : std::move(self_loops);
    g.build_adjacency();
    return g;
  }

  std::size_t num_vertices() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[e]; }

  std::uint32_t self_loops(Vertex v) const { return loops_[v]; }
  std::span<const std::uint32_t> self_loop_counts() const { return loops_; }
  std::uint64_t total_self_loops() const {
    return std::accumulate(loops_.begin(), loops_.end(), std::uint64_t{0});
  }

  /// Incident edge endpoints plus self-loops.
  std::uint64_t degree(Vertex v) const { return edge_degree(v) + loops_[v]; }
  /// Number of incident non-loop edge endpoints.
  std::uint64_t edge_degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

  std::span<const Incidence> incident(Vertex v) const {
    return {incidence_.data() + offsets_[v], incidence_.data() + offsets_[v + 1]};
  }

  std::uint64_t volume() const { return 2 * std::uint64_t{edges_.size()} + total_self_loops(); }

  double average_degree() const {
    return n_ == 0 ? 0.0 : static_cast<double>(volume()) / static_cast<double>(n_);
  }

  std::uint64_t min_degree() const {
    std::uint64_t best = UINT64_MAX;
    for (Vertex v = 0; v < n_; ++v) best = std::min(best, degree(v));
    return n_ == 0 ? 0 : best;
  }

  std::vector<std::uint64_t> degrees() const {
    std::vector<std::uint64_t> out(n_);
    for (Vertex v = 0; v < n_; ++v) out[v] = degree(v);
    return out;
  }

  Graph without_self_loops() const { return from_edges(n_, edges_); }

  /// Adds `extra` loops at vertex v; every other field is unchanged.
  Graph with_extra_self_loops(Vertex v, std::uint32_t extra) const {
    auto loops = loops_;
    loops.at(v) += extra;
    return from_edges(n_, edges_, std::move(loops));
  }

 private:
  void build_adjacency() {
    offsets_.assign(n_ + 1, 0);
    for (const auto& e : edges_) {
      ++offsets_[e.u + 1];
      ++offsets_[e.v + 1];
    }
    for (std::size_t i = 0; i < n_; ++i) offsets_[i + 1] += offsets_[i];
    incidence_.resize(2 * edges_.size());
    auto cursor = offsets_;
    for (EdgeId id = 0; id < edges_.size(); ++id) {
      const auto& e = edges_[id];
      incidence_[cursor[e.u]++] = {e.v, id};
      incidence_[cursor[e.v]++] = {e.u, id};
    }
  }

  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::uint32_t> loops_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Incidence> incidence_;
};

inline Graph build_graph(std::vector<Edge> edge_list, std::size_t n) {
  return Graph::from_edges(n, std::move(edge_list));
}

/// Vertex-induced piece of a parent graph together with the maps back to it.
struct Subgraph {
  std::vector<Vertex> to_parent;        // local vertex -> parent vertex
  std::vector<EdgeId> edge_to_parent;   // local edge -> parent edge
  Graph graph;
};

/// Sub-multigraph spanned by `edge_ids` of `parent`; the vertex set is the
/// set of endpoints, numbered in increasing parent order. No self-loops.
inline Subgraph edge_subgraph(const Graph& parent, std::span<const EdgeId> edge_ids) {
  std::vector<Vertex> local(parent.num_vertices(), UINT32_MAX);
  Subgraph out;
  for (EdgeId id : edge_ids) {
    const auto& e = parent.edge(id);
    local[e.u] = 0;
    local[e.v] = 0;
  }
  for (Vertex v = 0; v < parent.num_vertices(); ++v) {
    if (local[v] != UINT32_MAX) {
      local[v] = static_cast<Vertex>(out.to_parent.size());
      out.to_parent.push_back(v);
    }
  }
  std::vector<Edge> edges;
  edges.reserve(edge_ids.size());
  for (EdgeId id : edge_ids) {
    const auto& e = parent.edge(id);
    edges.push_back({local[e.u], local[e.v]});
    out.edge_to_parent.push_back(id);
  }
  out.graph = Graph::from_edges(out.to_parent.size(), std::move(edges));
  return out;
}

/// Component label per vertex (labels dense from 0, ordered by smallest
/// member). Self-loops do not connect anything.
inline std::vector<std::uint32_t> connected_components(const Graph& g, std::uint32_t* count = nullptr) {
  const std::size_t n = g.num_vertices();
  std::vector<std::uint32_t> label(n, UINT32_MAX);
  std::vector<Vertex> stack;
  std::uint32_t next = 0;
  for (Vertex s = 0; s < n; ++s) {
    if (label[s] != UINT32_MAX) continue;
    label[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex x = stack.back();
      stack.pop_back();
      for (const auto& inc : g.incident(x)) {
        if (label[inc.other] == UINT32_MAX) {
          label[inc.other] = next;
          stack.push_back(inc.other);
        }
      }
    }
    ++next;
  }
  if (count) *count = next;
  return label;
}

inline bool is_connected(const Graph& g) {
  std::uint32_t count = 0;
  connected_components(g, &count);
  return count <= 1;
}

/// A proper vertex cut with its exact statistics.
struct Cut {
  std::vector<Vertex> side_s;  // sorted ascending
  std::uint64_t crossing = 0;
  std::uint64_t vol_s = 0;
  std::uint64_t vol_rest = 0;
  double conductance = 0.0;

  std::uint64_t min_volume() const { return std::min(vol_s, vol_rest); }
};

namespace detail {

/// crossing / min_vol, with 0 when the smaller side has no volume (which
/// forces crossing == 0).
inline double conductance_value(std::uint64_t crossing, std::uint64_t min_vol) {
  return min_vol == 0 ? 0.0 : static_cast<double>(crossing) / static_cast<double>(min_vol);
}

/// Exact comparison a/b < c/d for the non-negative ratios used by cuts.
/// A zero denominator is treated as ratio 0.
inline bool ratio_less(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d) {
  __extension__ using wide = unsigned __int128;
  if (b == 0) a = 0, b = 1;
  if (d == 0) c = 0, d = 1;
  return static_cast<wide>(a) * d < static_cast<wide>(c) * b;
}

inline Cut make_cut(const Graph& g, const std::vector<char>& in_s) {
  Cut cut;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (in_s[v]) {
      cut.side_s.push_back(v);
      cut.vol_s += g.degree(v);
    } else {
      cut.vol_rest += g.degree(v);
    }
  }
  for (const auto& e : g.edges())
    if (in_s[e.u] != in_s[e.v]) ++cut.crossing;
  cut.conductance = conductance_value(cut.crossing, cut.min_volume());
  return cut;
}

}  // namespace detail

/// Exact statistics of the cut (s, V \ s). Throws std::invalid_argument when
/// s is empty, covers every vertex, or names a vertex out of range.
inline Cut cut_stats(const Graph& g, std::span<const Vertex> s) {
  const std::size_t n = g.num_vertices();
  std::vector<char> in_s(n, 0);
  std::size_t members = 0;
  for (Vertex v : s) {
    if (v >= n) throw std::invalid_argument("cut_stats: vertex " + std::to_string(v) + " out of range");
    if (!in_s[v]) ++members;
    in_s[v] = 1;
  }
  if (members == 0 || members == n)
    throw std::invalid_argument("cut_stats: cut side must be a nonempty proper subset");
  return detail::make_cut(g, in_s);
}

inline Cut cut_stats(const Graph& g, std::initializer_list<Vertex> s) {
  return cut_stats(g, std::span<const Vertex>(s.begin(), s.size()));
}

/// True iff every degree is at least gamma times the average degree.
inline bool is_weakly_regular(const Graph& g, double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0))
    throw std::invalid_argument("is_weakly_regular: gamma must lie in [0,1]");
  if (g.num_vertices() == 0) throw std::invalid_argument("is_weakly_regular: empty vertex set");
  return static_cast<double>(g.min_degree()) >= gamma * g.average_degree();
}

/// Largest gamma for which the graph is gamma-weakly-regular.
inline double weak_regularity(const Graph& g) {
  const double avg = g.average_degree();
  return avg == 0.0 ? 1.0 : static_cast<double>(g.min_degree()) / avg;
}

/// Vertex count up to which brute-force enumeration is used.
inline constexpr std::size_t kExactLimit = 20;

enum class DensityMode { exact, greedy_peel };

/// Densest induced subgraph under density(S) = (2 E(S,S) + loops(S)) / |S|,
/// i.e. the average degree of S counted the same way as vol.
struct DensestSubgraph {
  double density = 0.0;
  std::vector<Vertex> members;
  DensityMode mode = DensityMode::exact;
};

/// Exhaustive search over all nonempty subsets. Requires n <= kExactLimit.
inline DensestSubgraph densest_subgraph_exact(const Graph& g) {
  const std::size_t n = g.num_vertices();
  if (n == 0) return {};
  if (n > kExactLimit)
    throw std::invalid_argument("densest_subgraph_exact: n=" + std::to_string(n) + " exceeds exact limit");
  std::vector<std::uint32_t> w(n * n, 0);
  for (const auto& e : g.edges()) {
    ++w[e.u * n + e.v];
    ++w[e.v * n + e.u];
  }
  // Gray-code walk; to_s[x] = edges from x into the current subset.
  std::vector<std::uint64_t> to_s(n, 0);
  std::vector<char> in_s(n, 0);
  std::uint64_t twice_inner = 0, loops = 0, size = 0;
  std::uint64_t best_num = 0, best_den = 1, best_code = 0;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t i = 1; i < total; ++i) {
    const Vertex v = static_cast<Vertex>(__builtin_ctzll(i));
    if (!in_s[v]) {
      in_s[v] = 1;
      twice_inner += 2 * to_s[v];
      loops += g.self_loops(v);
      ++size;
      for (std::size_t x = 0; x < n; ++x) to_s[x] += w[x * n + v];
    } else {
      in_s[v] = 0;
      twice_inner -= 2 * to_s[v];
      loops -= g.self_loops(v);
      --size;
      for (std::size_t x = 0; x < n; ++x) to_s[x] -= w[x * n + v];
    }
    if (size > 0 && detail::ratio_less(best_num, best_den, twice_inner + loops, size)) {
      best_num = twice_inner + loops;
      best_den = size;
      best_code = i ^ (i >> 1);
    }
  }
  DensestSubgraph out;
  out.density = static_cast<double>(best_num) / static_cast<double>(best_den);
  for (Vertex v = 0; v < n; ++v)
    if ((best_code >> v) & 1) out.members.push_back(v);
  return out;
}

/// Greedy min-degree peeling. The returned density is achieved by an actual
/// subset and is at least half of the true maximum.
inline DensestSubgraph densest_subgraph_peel(const Graph& g) {
  const std::size_t n = g.num_vertices();
  DensestSubgraph out;
  out.mode = DensityMode::greedy_peel;
  if (n == 0) return out;
  std::vector<std::uint64_t> deg(n);
  std::uint64_t max_deg = 0;
  for (Vertex v = 0; v < n; ++v) {
    deg[v] = g.degree(v);
    max_deg = std::max(max_deg, deg[v]);
  }
  // Bucket queue keyed by current degree.
  std::vector<std::vector<Vertex>> buckets(max_deg + 1);
  for (Vertex v = 0; v < n; ++v) buckets[deg[v]].push_back(v);
  std::vector<char> removed(n, 0);
  std::vector<Vertex> order;
  order.reserve(n);
  std::uint64_t mass = g.volume();  // 2 E(S,S) + loops(S) of the remaining set
  std::size_t remaining = n;
  std::uint64_t best_num = mass, best_den = n;
  std::size_t best_removed = 0;
  std::uint64_t cursor = 0;
  while (remaining > 0) {
    cursor = std::min<std::uint64_t>(cursor, max_deg);
    Vertex v = 0;
    bool found = false;
    while (!found) {
      auto& bucket = buckets[cursor];
      while (!bucket.empty()) {
        Vertex cand = bucket.back();
        bucket.pop_back();
        if (!removed[cand] && deg[cand] == cursor) {
          v = cand;
          found = true;
          break;
        }
      }
      if (!found) ++cursor;
    }
    removed[v] = 1;
    order.push_back(v);
    --remaining;
    mass -= 2 * (deg[v] - g.self_loops(v)) + g.self_loops(v);
    for (const auto& inc : g.incident(v)) {
      if (removed[inc.other]) continue;
      --deg[inc.other];
      buckets[deg[inc.other]].push_back(inc.other);
      if (deg[inc.other] < cursor) cursor = deg[inc.other];
    }
    if (remaining > 0 && detail::ratio_less(best_num, best_den, mass, remaining)) {
      best_num = mass;
      best_den = remaining;
      best_removed = order.size();
    }
  }
  out.density = static_cast<double>(best_num) / static_cast<double>(best_den);
  std::vector<char> gone(n, 0);
  for (std::size_t i = 0; i < best_removed; ++i) gone[order[i]] = 1;
  for (Vertex v = 0; v < n; ++v)
    if (!gone[v]) out.members.push_back(v);
  return out;
}

/// Exact below the enumeration limit, greedy peeling above it.
inline DensestSubgraph densest_subgraph(const Graph& g) {
  return g.num_vertices() <= kExactLimit ? densest_subgraph_exact(g) : densest_subgraph_peel(g);
}

/// Smallest factor a >= 1 for which g is a-uniformly-dense (with the densest
/// subgraph found by `densest_subgraph`, so an underestimate above the exact
/// limit).
inline double uniform_density_factor(const Graph& g) {
  if (g.num_vertices() == 0 || g.volume() == 0) return 1.0;
  const double avg = g.average_degree();
  const double min_deg = static_cast<double>(g.min_degree());
  const double low = min_deg == 0.0 ? std::numeric_limits<double>::infinity() : avg / min_deg;
  const double high = densest_subgraph(g).density / avg;
  return std::max({1.0, low, high});
}

/// (i) min degree >= avg / alpha and (ii) no induced subgraph has average
/// degree above alpha * avg. Condition (ii) is exact up to kExactLimit
/// vertices; above it only violations found by greedy peeling are detected.
inline bool is_uniformly_dense(const Graph& g, double alpha) {
  if (!(alpha >= 1.0)) throw std::invalid_argument("is_uniformly_dense: alpha must be >= 1");
  if (g.num_vertices() == 0) throw std::invalid_argument("is_uniformly_dense: empty vertex set");
  const double avg = g.average_degree();
  if (static_cast<double>(g.min_degree()) * alpha < avg) return false;
  return densest_subgraph(g).density <= alpha * avg;
}

}  // namespace carpool
