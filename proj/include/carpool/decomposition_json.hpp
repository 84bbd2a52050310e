#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "carpool/decomposition.hpp"

namespace carpool {

inline nlohmann::json to_json(const SubgraphCertificate& c) {
  return {{"alpha_claimed", c.alpha_claimed},
          {"gamma_claimed", c.gamma_claimed},
          {"method", to_string(c.method)},
          {"uniform_density_alpha", c.uniform_density_alpha},
          {"measured_conductance", c.measured_conductance},
          {"weakly_regular", c.weakly_regular}};
}

inline SubgraphCertificate certificate_from_json(const nlohmann::json& j) {
  SubgraphCertificate c;
  c.alpha_claimed = j.at("alpha_claimed").get<double>();
  c.gamma_claimed = j.at("gamma_claimed").get<double>();
  c.method = certificate_method_from_string(j.at("method").get<std::string>());
  c.uniform_density_alpha = j.value("uniform_density_alpha", 1.0);
  c.measured_conductance = j.value("measured_conductance", 0.0);
  c.weakly_regular = j.value("weakly_regular", false);
  return c;
}

/// JSON report: per part its parent vertices, parent edge indices, per-vertex
/// self-loop counts and certificate, plus the global membership histogram,
/// round count and per-round statistics.
inline nlohmann::json to_json(const Decomposition& d) {
  nlohmann::json parts = nlohmann::json::array();
  for (const auto& p : d.parts) {
    std::vector<std::uint32_t> loops(p.graph.num_vertices());
    for (Vertex v = 0; v < loops.size(); ++v) loops[v] = p.graph.self_loops(v);
    parts.push_back({{"vertices", p.vertices},
                     {"edges", p.edges},
                     {"self_loops", loops},
                     {"round", p.round},
                     {"certificate", to_json(p.certificate)}});
  }
  nlohmann::json rounds = nlohmann::json::array();
  for (const auto& r : d.round_stats)
    rounds.push_back({{"residual_edges", r.residual_edges},
                      {"components", r.components},
                      {"parts", r.parts},
                      {"crossing", r.crossing},
                      {"crossing_bound", r.crossing_bound},
                      {"within_bound", r.within_bound}});
  return {{"n", d.n},
          {"m", d.m},
          {"alpha", d.alpha},
          {"rounds", d.rounds},
          {"max_membership", d.max_membership()},
          {"membership_histogram", d.membership_histogram()},
          {"round_stats", rounds},
          {"parts", parts}};
}

/// Rebuilds a decomposition of `g` from its JSON report. Part graphs are
/// reconstructed from the parent edges; router and membership are re-derived.
inline Decomposition decomposition_from_json(const nlohmann::json& j, const Graph& g) {
  Decomposition d;
  d.n = j.at("n").get<std::size_t>();
  d.m = j.at("m").get<std::size_t>();
  if (d.n != g.num_vertices() || d.m != g.num_edges())
    throw std::invalid_argument("decomposition json: graph has n=" + std::to_string(g.num_vertices()) +
                                " m=" + std::to_string(g.num_edges()) + ", report has n=" + std::to_string(d.n) +
                                " m=" + std::to_string(d.m));
  d.alpha = j.at("alpha").get<double>();
  d.rounds = j.at("rounds").get<std::uint32_t>();
  for (const auto& r : j.value("round_stats", nlohmann::json::array())) {
    RoundStats s;
    s.residual_edges = r.at("residual_edges").get<std::size_t>();
    s.components = r.at("components").get<std::size_t>();
    s.parts = r.at("parts").get<std::size_t>();
    s.crossing = r.at("crossing").get<std::size_t>();
    s.crossing_bound = r.at("crossing_bound").get<double>();
    s.within_bound = r.at("within_bound").get<bool>();
    d.round_stats.push_back(s);
  }
  for (const auto& jp : j.at("parts")) {
    DecompositionPart p;
    p.vertices = jp.at("vertices").get<std::vector<Vertex>>();
    p.edges = jp.at("edges").get<std::vector<EdgeId>>();
    auto loops = jp.at("self_loops").get<std::vector<std::uint32_t>>();
    p.round = jp.value("round", 0u);
    p.certificate = certificate_from_json(jp.at("certificate"));
    std::unordered_map<Vertex, Vertex> local;
    for (Vertex i = 0; i < p.vertices.size(); ++i) {
      if (p.vertices[i] >= d.n || !local.emplace(p.vertices[i], i).second)
        throw std::invalid_argument("decomposition json: bad vertex list");
    }
    std::vector<Edge> edges;
    edges.reserve(p.edges.size());
    for (EdgeId id : p.edges) {
      if (id >= d.m) throw std::invalid_argument("decomposition json: edge index out of range");
      const Edge& e = g.edge(id);
      const auto a = local.find(e.u), b = local.find(e.v);
      if (a == local.end() || b == local.end())
        throw std::invalid_argument("decomposition json: edge " + std::to_string(id) + " leaves its part");
      edges.push_back({a->second, b->second});
    }
    p.graph = Graph::from_edges(p.vertices.size(), std::move(edges), std::move(loops));
    d.parts.push_back(std::move(p));
  }
  index_decomposition(d);
  return d;
}

}  // namespace carpool
