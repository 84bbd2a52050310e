#pragma once

#include <cmath>
#include <cstdint>
#include <deque>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "carpool/conductance.hpp"
#include "carpool/graph.hpp"

namespace carpool {

// ---------------------------------------------------------------------------
// Peeling into uniformly dense pieces
// ---------------------------------------------------------------------------

/// Degree thresholds n/2, n/4, ..., 1 (integer halving), in decreasing order.
inline std::vector<std::uint64_t> peel_thresholds(std::size_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t t = n / 2; t >= 1; t /= 2) out.push_back(t);
  return out;
}

struct PeeledComponent {
  Subgraph sub;             // vertex/edge maps into the peeled graph
  std::uint64_t threshold;  // degree threshold at which it was emitted
};

/// Repeatedly strips vertices of residual degree in (0, t) for each threshold
/// t of `peel_thresholds`, emitting the non-trivial connected components that
/// survive and removing their edges from the residual. The lowest-index
/// qualifying vertex is always stripped first. Because the last threshold is
/// 1, every edge ends up in exactly one component.
inline std::vector<PeeledComponent> peel_uniformly_dense(const Graph& g) {
  if (g.total_self_loops() != 0)
    throw std::invalid_argument("peel_uniformly_dense: input must not carry self-loops");
  const std::size_t n = g.num_vertices();
  std::vector<PeeledComponent> out;
  std::vector<char> emitted(g.num_edges(), 0);
  std::vector<char> alive(g.num_edges(), 0);
  std::vector<std::uint64_t> deg(n, 0);

  for (const std::uint64_t t : peel_thresholds(n)) {
    // Residual graph: everything not yet emitted.
    std::fill(deg.begin(), deg.end(), 0);
    for (EdgeId id = 0; id < g.num_edges(); ++id) {
      alive[id] = !emitted[id];
      if (alive[id]) {
        ++deg[g.edge(id).u];
        ++deg[g.edge(id).v];
      }
    }
    std::set<Vertex> pending;
    for (Vertex v = 0; v < n; ++v)
      if (deg[v] > 0 && deg[v] < t) pending.insert(v);
    while (!pending.empty()) {
      const Vertex v = *pending.begin();
      pending.erase(pending.begin());
      for (const auto& inc : g.incident(v)) {
        if (!alive[inc.edge]) continue;
        alive[inc.edge] = 0;
        --deg[v];
        const Vertex w = inc.other;
        --deg[w];
        if (deg[w] == 0)
          pending.erase(w);
        else if (deg[w] < t)
          pending.insert(w);
      }
    }
    // Connected components of the surviving edges, ordered by smallest vertex.
    std::vector<std::uint32_t> label(n, UINT32_MAX);
    std::vector<Vertex> stack;
    for (Vertex s = 0; s < n; ++s) {
      if (deg[s] == 0 || label[s] != UINT32_MAX) continue;
      std::vector<EdgeId> comp_edges;
      label[s] = s;
      stack.push_back(s);
      while (!stack.empty()) {
        const Vertex x = stack.back();
        stack.pop_back();
        for (const auto& inc : g.incident(x)) {
          if (!alive[inc.edge]) continue;
          if (x < inc.other) comp_edges.push_back(inc.edge);
          if (label[inc.other] == UINT32_MAX) {
            label[inc.other] = s;
            stack.push_back(inc.other);
          }
        }
      }
      std::sort(comp_edges.begin(), comp_edges.end());
      for (EdgeId id : comp_edges) emitted[id] = 1;
      out.push_back({edge_subgraph(g, comp_edges), t});
    }
  }
  return out;
}

struct DensityCheck {
  bool ok = true;
  DensityMode mode = DensityMode::exact;
  /// Densest induced average degree found.
  double densest = 0.0;
};

/// True iff no induced subgraph has average degree above `threshold`. Exact
/// up to kExactLimit vertices; above it a greedy-peeling 2-approximation, so
/// `ok` then only guarantees the true maximum is at most 2 * threshold.
inline DensityCheck check_no_dense_subgraph(const Graph& g, double threshold) {
  const auto densest = densest_subgraph(g);
  return {densest.density <= threshold, densest.mode, densest.density};
}

// ---------------------------------------------------------------------------
// Sparse cuts and the expander split
// ---------------------------------------------------------------------------

enum class CertificateMethod { exact, sweep, sweep_unconverged };

inline const char* to_string(CertificateMethod m) {
  switch (m) {
    case CertificateMethod::exact: return "exact";
    case CertificateMethod::sweep: return "sweep-certified";
    case CertificateMethod::sweep_unconverged: return "sweep-unconverged";
  }
  return "?";
}

inline CertificateMethod certificate_method_from_string(const std::string& s) {
  if (s == "exact") return CertificateMethod::exact;
  if (s == "sweep-certified") return CertificateMethod::sweep;
  if (s == "sweep-unconverged") return CertificateMethod::sweep_unconverged;
  throw std::invalid_argument("unknown certificate method '" + s + "'");
}

struct SparseCutSearch {
  /// Present iff a cut of conductance below alpha was found.
  std::optional<Cut> cut;
  CertificateMethod method = CertificateMethod::exact;
  /// Smallest conductance seen (the exact minimum in exact mode).
  double best_conductance = 0.0;
};

struct SparseCutOptions {
  std::size_t exact_limit = kExactLimit;
  SweepOptions sweep;
};

/// Exact minimum-conductance cut up to `exact_limit` vertices; above it the
/// spectral sweep, with every singleton cut also tried so that a vertex
/// whose edges mostly leave its piece is never certified.
inline SparseCutSearch find_sparse_cut(const Graph& g, double alpha, const SparseCutOptions& opts = {}) {
  const std::size_t n = g.num_vertices();
  if (n < 2) throw std::invalid_argument("find_sparse_cut: need at least 2 vertices");
  SparseCutSearch res;
  if (n <= opts.exact_limit) {
    auto exact = conductance_exact(g, opts.exact_limit);
    res.method = CertificateMethod::exact;
    res.best_conductance = exact.value;
    if (exact.value < alpha) res.cut = std::move(exact.witness);
    return res;
  }
  auto sweep = sweep_cut(g, alpha, opts.sweep);
  res.method = sweep.converged ? CertificateMethod::sweep : CertificateMethod::sweep_unconverged;
  Cut best = std::move(sweep.best);
  const std::uint64_t vol = g.volume();
  for (Vertex v = 0; v < n; ++v) {
    const std::uint64_t den = std::min(g.degree(v), vol - g.degree(v));
    if (detail::ratio_less(g.edge_degree(v), den, best.crossing, best.min_volume())) {
      const Vertex single[] = {v};
      best = cut_stats(g, single);
    }
  }
  res.best_conductance = best.conductance;
  if (best.conductance < alpha) res.cut = std::move(best);
  return res;
}

struct SubgraphCertificate {
  double alpha_claimed = 0.0;
  double gamma_claimed = 0.0;
  CertificateMethod method = CertificateMethod::exact;
  /// Uniform-density factor measured on the peeled ancestor (1 when unknown).
  double uniform_density_alpha = 1.0;
  /// Smallest conductance the certifying method observed.
  double measured_conductance = 0.0;
  /// is_weakly_regular(graph, gamma_claimed) evaluated on the part.
  bool weakly_regular = false;
};

/// A certified piece: a graph (with self-loops) on a subset of the input's
/// vertices, carrying a subset of the input's edges.
struct ExpanderPart {
  std::vector<Vertex> to_parent;
  std::vector<EdgeId> edge_to_parent;
  Graph graph;
  SubgraphCertificate certificate;
};

struct ExpanderSplit {
  std::vector<ExpanderPart> parts;
  /// Input edges whose endpoints ended up in different pieces.
  std::vector<EdgeId> crossing_edges;
  std::size_t splits = 0;
  /// Pieces reduced to one vertex with only self-loops; they carry no edges
  /// and are not emitted as parts.
  std::size_t dropped_singletons = 0;
  double crossing_bound = 0.0;  // 2 alpha log2(n) m
  bool crossing_within_bound = true;
};

struct DecomposeOptions {
  SparseCutOptions cut;
  /// Reject inputs that are not this-uniformly-dense; 0 disables the check.
  double required_density = 2.0;
  /// Recorded into every certificate.
  double uniform_density_alpha = 1.0;
};

namespace detail {

struct Piece {
  std::vector<Vertex> to_input;
  std::vector<EdgeId> edges_input;
  Graph graph;
};

/// Splits a piece along `in_s`, adding one self-loop per crossing edge at
/// each endpoint. Checks that every vertex keeps its degree.
inline std::pair<Piece, Piece> split_piece(const Piece& p, const std::vector<char>& in_s,
                                           std::vector<EdgeId>& crossing_out) {
  const Graph& g = p.graph;
  const std::size_t n = g.num_vertices();
  std::vector<Vertex> local(n);
  Piece side[2];
  for (Vertex v = 0; v < n; ++v) {
    auto& s = side[in_s[v] ? 0 : 1];
    local[v] = static_cast<Vertex>(s.to_input.size());
    s.to_input.push_back(p.to_input[v]);
  }
  std::vector<Edge> edges[2];
  std::vector<std::uint32_t> loops[2] = {std::vector<std::uint32_t>(side[0].to_input.size(), 0),
                                         std::vector<std::uint32_t>(side[1].to_input.size(), 0)};
  for (Vertex v = 0; v < n; ++v) loops[in_s[v] ? 0 : 1][local[v]] = g.self_loops(v);
  for (EdgeId id = 0; id < g.num_edges(); ++id) {
    const auto& e = g.edge(id);
    const int a = in_s[e.u] ? 0 : 1;
    const int b = in_s[e.v] ? 0 : 1;
    if (a == b) {
      edges[a].push_back({local[e.u], local[e.v]});
      side[a].edges_input.push_back(p.edges_input[id]);
    } else {
      ++loops[a][local[e.u]];
      ++loops[b][local[e.v]];
      crossing_out.push_back(p.edges_input[id]);
    }
  }
  for (int k = 0; k < 2; ++k)
    side[k].graph = Graph::from_edges(side[k].to_input.size(), std::move(edges[k]), std::move(loops[k]));
  for (Vertex v = 0; v < n; ++v) {
    const auto& s = side[in_s[v] ? 0 : 1];
    if (s.graph.degree(local[v]) != g.degree(v))
      throw InvariantViolation("split: degree of vertex " + std::to_string(p.to_input[v]) +
                               " changed from " + std::to_string(g.degree(v)) + " to " +
                               std::to_string(s.graph.degree(local[v])));
  }
  return {std::move(side[0]), std::move(side[1])};
}

}  // namespace detail

/// Recursive sparse-cut partition of `h` into vertex-disjoint alpha-expanders.
/// Pieces are processed first-in first-out; a piece is certified once
/// `find_sparse_cut` finds nothing below alpha, otherwise it is split and
/// both sides receive self-loops for the edges that were cut.
inline ExpanderSplit decompose_expanders(const Graph& h, double alpha, const DecomposeOptions& opts = {}) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("decompose_expanders: alpha must be in (0,1]");
  if (opts.required_density > 0.0 && h.num_vertices() > 0 && !is_uniformly_dense(h, opts.required_density)) {
    throw std::invalid_argument("decompose_expanders: input is not " + std::to_string(opts.required_density) +
                                "-uniformly-dense (measured factor " +
                                std::to_string(uniform_density_factor(h)) + ")");
  }
  ExpanderSplit out;
  const double n = static_cast<double>(h.num_vertices());
  out.crossing_bound = 2.0 * alpha * (n > 1 ? std::log2(n) : 0.0) * static_cast<double>(h.num_edges());
  if (h.num_vertices() == 0) return out;

  std::deque<detail::Piece> queue;
  {
    detail::Piece root;
    root.to_input.resize(h.num_vertices());
    std::iota(root.to_input.begin(), root.to_input.end(), Vertex{0});
    root.edges_input.resize(h.num_edges());
    std::iota(root.edges_input.begin(), root.edges_input.end(), EdgeId{0});
    root.graph = h;
    queue.push_back(std::move(root));
  }
  while (!queue.empty()) {
    detail::Piece piece = std::move(queue.front());
    queue.pop_front();
    if (piece.graph.num_vertices() < 2) {
      ++out.dropped_singletons;
      continue;
    }
    auto search = find_sparse_cut(piece.graph, alpha, opts.cut);
    if (!search.cut) {
      ExpanderPart part;
      part.certificate.alpha_claimed = alpha;
      part.certificate.gamma_claimed = alpha / 4.0;
      part.certificate.method = search.method;
      part.certificate.uniform_density_alpha = opts.uniform_density_alpha;
      part.certificate.measured_conductance = search.best_conductance;
      part.certificate.weakly_regular = is_weakly_regular(piece.graph, alpha / 4.0);
      part.to_parent = std::move(piece.to_input);
      part.edge_to_parent = std::move(piece.edges_input);
      part.graph = std::move(piece.graph);
      out.parts.push_back(std::move(part));
      continue;
    }
    std::vector<char> in_s(piece.graph.num_vertices(), 0);
    for (Vertex v : search.cut->side_s) in_s[v] = 1;
    auto [a, b] = detail::split_piece(piece, in_s, out.crossing_edges);
    ++out.splits;
    queue.push_back(std::move(a));
    queue.push_back(std::move(b));
  }
  std::sort(out.crossing_edges.begin(), out.crossing_edges.end());
  out.crossing_within_bound = static_cast<double>(out.crossing_edges.size()) <= out.crossing_bound + 1e-9;
  return out;
}

// ---------------------------------------------------------------------------
// Full decomposition
// ---------------------------------------------------------------------------

/// 1 / (4 ceil(log2 n)), the largest alpha for which each round is
/// guaranteed to pass on at most half of its edges.
inline double default_alpha(std::size_t n) {
  const double lg = n > 1 ? std::ceil(std::log2(static_cast<double>(n))) : 1.0;
  return 1.0 / (4.0 * std::max(1.0, lg));
}

struct DecompositionPart {
  std::vector<Vertex> vertices;  // local -> parent vertex
  std::vector<EdgeId> edges;     // local edge -> parent edge
  Graph graph;                   // local graph, with self-loops
  SubgraphCertificate certificate;
  std::uint32_t round = 0;
};

struct RouteSlot {
  std::uint32_t part = UINT32_MAX;
  std::uint32_t slot = UINT32_MAX;  // local edge index inside the part

  friend bool operator==(const RouteSlot&, const RouteSlot&) = default;
};

struct RoundStats {
  std::size_t residual_edges = 0;
  std::size_t components = 0;
  std::size_t parts = 0;
  std::size_t crossing = 0;
  double crossing_bound = 0.0;
  bool within_bound = true;
};

struct Decomposition {
  std::size_t n = 0;
  std::size_t m = 0;
  double alpha = 0.0;
  std::vector<DecompositionPart> parts;
  std::vector<RouteSlot> router;        // parent edge -> owning part and slot
  std::vector<std::uint32_t> membership;  // parent vertex -> number of parts
  std::uint32_t rounds = 0;
  std::vector<RoundStats> round_stats;

  /// histogram[k] = number of vertices contained in exactly k parts.
  std::vector<std::size_t> membership_histogram() const {
    std::uint32_t top = 0;
    for (auto c : membership) top = std::max(top, c);
    std::vector<std::size_t> hist(top + 1, 0);
    for (auto c : membership) ++hist[c];
    return hist;
  }

  std::uint32_t max_membership() const {
    std::uint32_t top = 0;
    for (auto c : membership) top = std::max(top, c);
    return top;
  }
};

/// Round cap ceil(log2 m) + 1.
inline std::uint32_t max_rounds(std::size_t m) {
  return m <= 1 ? 1u : static_cast<std::uint32_t>(std::ceil(std::log2(static_cast<double>(m)))) + 1u;
}

/// Recomputes router and membership from the parts.
inline void index_decomposition(Decomposition& d) {
  d.router.assign(d.m, RouteSlot{});
  d.membership.assign(d.n, 0);
  for (std::uint32_t p = 0; p < d.parts.size(); ++p) {
    const auto& part = d.parts[p];
    for (std::uint32_t s = 0; s < part.edges.size(); ++s) {
      auto& slot = d.router.at(part.edges[s]);
      if (slot.part != UINT32_MAX)
        throw InvariantViolation("decomposition: edge " + std::to_string(part.edges[s]) + " owned by parts " +
                                 std::to_string(slot.part) + " and " + std::to_string(p));
      slot = {p, s};
    }
    for (Vertex v : part.vertices) ++d.membership.at(v);
  }
}

struct FullDecompositionOptions {
  SparseCutOptions cut;
};

/// Alternates peeling and expander splitting; the edges cut in one round form
/// the residual graph of the next. Throws InvariantViolation when more than
/// ceil(log2 m) + 1 rounds are needed.
inline Decomposition full_decomposition(const Graph& g, double alpha, const FullDecompositionOptions& opts = {}) {
  if (g.total_self_loops() != 0) throw std::invalid_argument("full_decomposition: input must not carry self-loops");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("full_decomposition: alpha must be in (0,1]");
  Decomposition d;
  d.n = g.num_vertices();
  d.m = g.num_edges();
  d.alpha = alpha;
  const double log_n = d.n > 1 ? std::log2(static_cast<double>(d.n)) : 0.0;

  std::vector<EdgeId> residual(d.m);
  std::iota(residual.begin(), residual.end(), EdgeId{0});
  const std::uint32_t cap = max_rounds(d.m);
  while (!residual.empty()) {
    ++d.rounds;
    if (d.rounds > cap)
      throw InvariantViolation("full_decomposition: " + std::to_string(residual.size()) +
                               " edges remain after " + std::to_string(cap) + " rounds (m=" + std::to_string(d.m) +
                               ", alpha=" + std::to_string(alpha) + ")");
    RoundStats stats;
    stats.residual_edges = residual.size();
    stats.crossing_bound = 2.0 * alpha * log_n * static_cast<double>(residual.size());

    std::vector<Edge> residual_edges;
    residual_edges.reserve(residual.size());
    for (EdgeId id : residual) residual_edges.push_back(g.edge(id));
    const Graph r = Graph::from_edges(d.n, std::move(residual_edges));

    std::vector<EdgeId> next;
    const auto components = peel_uniformly_dense(r);
    stats.components = components.size();
    for (const auto& comp : components) {
      DecomposeOptions dopts;
      dopts.cut = opts.cut;
      dopts.required_density = 0.0;
      dopts.uniform_density_alpha = uniform_density_factor(comp.sub.graph);
      auto split = decompose_expanders(comp.sub.graph, alpha, dopts);
      for (EdgeId local : split.crossing_edges) next.push_back(residual[comp.sub.edge_to_parent[local]]);
      for (auto& part : split.parts) {
        DecompositionPart out;
        out.vertices.reserve(part.to_parent.size());
        for (Vertex v : part.to_parent) out.vertices.push_back(comp.sub.to_parent[v]);
        out.edges.reserve(part.edge_to_parent.size());
        for (EdgeId e : part.edge_to_parent) out.edges.push_back(residual[comp.sub.edge_to_parent[e]]);
        out.graph = std::move(part.graph);
        out.certificate = part.certificate;
        out.round = d.rounds;
        d.parts.push_back(std::move(out));
        ++stats.parts;
      }
    }
    std::sort(next.begin(), next.end());
    stats.crossing = next.size();
    stats.within_bound = static_cast<double>(stats.crossing) <= stats.crossing_bound + 1e-9;
    d.round_stats.push_back(stats);
    residual = std::move(next);
  }
  index_decomposition(d);
  return d;
}

// ---------------------------------------------------------------------------
// Audit
// ---------------------------------------------------------------------------

struct AuditOptions {
  /// Membership must not exceed membership_factor * log2(n)^2.
  double membership_factor = 4.0;
  std::size_t exact_limit = kExactLimit;
};

struct DecompositionAudit {
  std::vector<std::string> violations;
  std::size_t exact_checked = 0;  // parts re-verified by exact conductance
  double min_weak_regularity = 1.0;

  bool ok() const { return violations.empty(); }
};

/// Re-derives every structural guarantee of `d` against the parent graph.
inline DecompositionAudit audit_decomposition(const Graph& g, const Decomposition& d, const AuditOptions& opts = {}) {
  DecompositionAudit audit;
  auto fail = [&](std::string msg) { audit.violations.push_back(std::move(msg)); };
  if (d.n != g.num_vertices() || d.m != g.num_edges()) {
    fail("size mismatch with parent graph");
    return audit;
  }
  // Exhaustive edge-disjoint cover and router consistency.
  std::vector<std::uint32_t> owner(d.m, UINT32_MAX);
  std::vector<std::uint32_t> membership(d.n, 0);
  std::size_t covered = 0;
  for (std::uint32_t p = 0; p < d.parts.size(); ++p) {
    const auto& part = d.parts[p];
    const Graph& pg = part.graph;
    if (pg.num_vertices() != part.vertices.size() || pg.num_edges() != part.edges.size()) {
      fail("part " + std::to_string(p) + ": map sizes disagree with its graph");
      continue;
    }
    for (Vertex v : part.vertices) ++membership.at(v);
    for (std::uint32_t s = 0; s < part.edges.size(); ++s) {
      const EdgeId pe = part.edges[s];
      if (pe >= d.m) {
        fail("part " + std::to_string(p) + ": edge index out of range");
        continue;
      }
      if (owner[pe] != UINT32_MAX) fail("edge " + std::to_string(pe) + " appears in two parts");
      owner[pe] = p;
      ++covered;
      const Edge le = pg.edge(s);
      const Edge pe_uv = g.edge(pe);
      const Vertex a = part.vertices[le.u], b = part.vertices[le.v];
      if (!((a == pe_uv.u && b == pe_uv.v) || (a == pe_uv.v && b == pe_uv.u)))
        fail("part " + std::to_string(p) + " slot " + std::to_string(s) + " endpoints differ from parent edge");
      if (d.router.size() != d.m || !(d.router[pe] == RouteSlot{p, s}))
        fail("router entry of edge " + std::to_string(pe) + " does not point at its slot");
    }
    const double gamma = d.alpha / 4.0;
    audit.min_weak_regularity = std::min(audit.min_weak_regularity, weak_regularity(pg));
    if (!is_weakly_regular(pg, gamma))
      fail("part " + std::to_string(p) + " is not " + std::to_string(gamma) + "-weakly-regular (measured " +
           std::to_string(weak_regularity(pg)) + ")");
    if (pg.num_vertices() >= 2 && pg.num_vertices() <= opts.exact_limit) {
      ++audit.exact_checked;
      const double phi = conductance_exact(pg, opts.exact_limit).value;
      if (phi < d.alpha)
        fail("part " + std::to_string(p) + " has exact conductance " + std::to_string(phi) + " < alpha " +
             std::to_string(d.alpha));
    }
  }
  if (covered != d.m) fail("cover has " + std::to_string(covered) + " edge slots for m=" + std::to_string(d.m));
  for (EdgeId e = 0; e < d.m; ++e)
    if (owner[e] == UINT32_MAX) fail("edge " + std::to_string(e) + " is in no part");
  if (membership != d.membership) fail("membership counts disagree with part vertex maps");

  const double log_n = d.n > 1 ? std::log2(static_cast<double>(d.n)) : 0.0;
  const double member_cap = opts.membership_factor * std::max(1.0, log_n * log_n);
  if (static_cast<double>(d.max_membership()) > member_cap)
    fail("max membership " + std::to_string(d.max_membership()) + " exceeds " + std::to_string(member_cap));
  // Per-round crossing, re-derived from part rounds: round r starts from the
  // edges owned by parts of round >= r and passes on those of round > r.
  std::vector<std::size_t> owned_in_round(d.rounds + 2, 0);
  for (EdgeId e = 0; e < d.m; ++e)
    if (owner[e] != UINT32_MAX) ++owned_in_round.at(std::min<std::uint32_t>(d.parts[owner[e]].round, d.rounds + 1));
  std::size_t residual = d.m;
  for (std::uint32_t r = 1; r <= d.rounds; ++r) {
    const std::size_t crossing = residual - owned_in_round[r];
    const double bound = 2.0 * d.alpha * log_n * static_cast<double>(residual);
    if (static_cast<double>(crossing) > bound + 1e-9)
      fail("round " + std::to_string(r) + " cut " + std::to_string(crossing) + " of " + std::to_string(residual) +
           " edges, bound " + std::to_string(bound));
    residual = crossing;
  }
  const double round_cap = d.m >= 1 ? std::log2(static_cast<double>(d.m)) + 1.0 : 1.0;
  if (static_cast<double>(d.rounds) > round_cap + 1e-12)
    fail("rounds " + std::to_string(d.rounds) + " exceed log2(m)+1 = " + std::to_string(round_cap));
  return audit;
}

}  // namespace carpool
