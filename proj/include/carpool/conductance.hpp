#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "carpool/graph.hpp"

namespace carpool {

namespace detail {

/// Cut whose S side is the component containing vertex 0. Caller guarantees
/// the graph is disconnected.
inline Cut component_cut(const Graph& g, const std::vector<std::uint32_t>& label) {
  std::vector<char> in_s(g.num_vertices(), 0);
  for (Vertex v = 0; v < g.num_vertices(); ++v) in_s[v] = label[v] == label[0];
  Cut cut = make_cut(g, in_s);
  cut.conductance = 0.0;
  return cut;
}

}  // namespace detail

struct ConductanceResult {
  double value = 0.0;
  Cut witness;
};

/// Minimum conductance over all proper cuts, by enumerating the 2^(n-1) - 1
/// cuts in Gray-code order. A disconnected graph has conductance 0 and a
/// component as witness.
inline ConductanceResult conductance_exact(const Graph& g, std::size_t exact_limit = kExactLimit) {
  const std::size_t n = g.num_vertices();
  if (n < 2) throw std::invalid_argument("conductance_exact: need at least 2 vertices");
  if (n > exact_limit)
    throw std::invalid_argument("conductance_exact: n=" + std::to_string(n) + " exceeds exact limit " +
                                std::to_string(exact_limit) + "; use sweep_cut");
  std::uint32_t components = 0;
  const auto label = connected_components(g, &components);
  if (components > 1) {
    Cut cut = detail::component_cut(g, label);
    return {0.0, std::move(cut)};
  }

  std::vector<std::uint32_t> w(n * n, 0);
  for (const auto& e : g.edges()) {
    ++w[e.u * n + e.v];
    ++w[e.v * n + e.u];
  }
  const std::uint64_t vol = g.volume();
  std::vector<std::uint64_t> to_s(n, 0);
  std::vector<char> in_s(n, 0);
  std::uint64_t crossing = 0, vol_s = 0;
  std::uint64_t best_cross = 1, best_den = 0;  // "infinite" until the first cut
  std::uint64_t best_code = 0;
  bool have_best = false;
  // Vertex n-1 stays on the rest side, so each cut is visited once.
  const std::uint64_t total = std::uint64_t{1} << (n - 1);
  for (std::uint64_t i = 1; i < total; ++i) {
    const Vertex v = static_cast<Vertex>(__builtin_ctzll(i));
    const std::uint64_t ev = g.edge_degree(v);
    if (!in_s[v]) {
      in_s[v] = 1;
      crossing = crossing + ev - 2 * to_s[v];
      vol_s += g.degree(v);
      for (std::size_t x = 0; x < n; ++x) to_s[x] += w[x * n + v];
    } else {
      in_s[v] = 0;
      crossing = crossing + 2 * to_s[v] - ev;
      vol_s -= g.degree(v);
      for (std::size_t x = 0; x < n; ++x) to_s[x] -= w[x * n + v];
    }
    const std::uint64_t den = std::min(vol_s, vol - vol_s);
    if (!have_best || detail::ratio_less(crossing, den, best_cross, best_den)) {
      have_best = true;
      best_cross = crossing;
      best_den = den;
      best_code = i ^ (i >> 1);
    }
  }
  std::vector<char> mask(n, 0);
  for (Vertex v = 0; v + 1 < n; ++v) mask[v] = (best_code >> v) & 1;
  Cut cut = detail::make_cut(g, mask);
  return {cut.conductance, std::move(cut)};
}

struct SweepOptions {
  std::uint64_t seed = 0x5eed;
  double tolerance = 1e-9;
  /// 0 selects ceil(10 n ln n).
  std::size_t max_iterations = 0;
  std::size_t restarts = 8;
};

struct SweepResult {
  /// Best prefix cut, present only when its conductance is below alpha.
  std::optional<Cut> cut;
  /// Best prefix cut found, regardless of alpha.
  Cut best;
  bool converged = false;
  std::size_t iterations = 0;
  /// Rayleigh-quotient estimate of the second-smallest eigenvalue of the
  /// normalized Laplacian.
  double eigenvalue = 0.0;
};

namespace detail {

/// Best prefix cut of the ordering of vertices by `score` (ascending, ties
/// by index).
inline Cut best_prefix_cut(const Graph& g, const std::vector<double>& score) {
  const std::size_t n = g.num_vertices();
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), Vertex{0});
  std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return score[a] < score[b]; });
  const std::uint64_t vol = g.volume();
  std::vector<char> in_s(n, 0);
  std::uint64_t crossing = 0, vol_s = 0;
  std::uint64_t best_cross = 0, best_den = 0;
  std::size_t best_k = 0;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const Vertex v = order[k];
    std::uint64_t into_s = 0;
    for (const auto& inc : g.incident(v))
      if (in_s[inc.other]) ++into_s;
    in_s[v] = 1;
    crossing = crossing + g.edge_degree(v) - 2 * into_s;
    vol_s += g.degree(v);
    const std::uint64_t den = std::min(vol_s, vol - vol_s);
    if (best_k == 0 || ratio_less(crossing, den, best_cross, best_den)) {
      best_cross = crossing;
      best_den = den;
      best_k = k + 1;
    }
  }
  std::vector<char> mask(n, 0);
  for (std::size_t k = 0; k < best_k; ++k) mask[order[k]] = 1;
  return make_cut(g, mask);
}

struct PowerIterationOutcome {
  std::vector<double> vector;  // unit 2-norm, orthogonal to sqrt(d)
  bool converged = false;
  std::size_t iterations = 0;
  double eigenvalue = 0.0;
};

/// Power iteration for the second eigenvector of the lazy normalized
/// adjacency (I + D^-1/2 A D^-1/2) / 2, with the top eigenvector sqrt(d)
/// deflated every step. Self-loops sit on the diagonal of A.
inline PowerIterationOutcome second_eigenvector(const Graph& g, std::uint64_t seed, double tol,
                                                std::size_t max_iter) {
  const std::size_t n = g.num_vertices();
  std::vector<double> inv_sqrt_d(n), top(n);
  double top_norm = 0.0;
  for (Vertex v = 0; v < n; ++v) {
    const double d = static_cast<double>(g.degree(v));
    inv_sqrt_d[v] = 1.0 / std::sqrt(d);
    top[v] = std::sqrt(d);
    top_norm += d;
  }
  top_norm = std::sqrt(top_norm);
  for (auto& t : top) t /= top_norm;

  auto deflate_normalize = [&](std::vector<double>& x) {
    double dot = 0.0;
    for (std::size_t i = 0; i < n; ++i) dot += x[i] * top[i];
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] -= dot * top[i];
      norm += x[i] * x[i];
    }
    norm = std::sqrt(norm);
    if (norm == 0.0) return false;
    for (auto& xi : x) xi /= norm;
    return true;
  };

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  PowerIterationOutcome out;
  out.vector.resize(n);
  do {
    for (auto& xi : out.vector) xi = normal(rng);
  } while (!deflate_normalize(out.vector));

  std::vector<double> y(n), scaled(n);
  double rayleigh = 0.0;
  for (std::size_t it = 1; it <= max_iter; ++it) {
    for (Vertex v = 0; v < n; ++v) scaled[v] = out.vector[v] * inv_sqrt_d[v];
    for (Vertex v = 0; v < n; ++v) {
      double acc = static_cast<double>(g.self_loops(v)) * scaled[v];
      for (const auto& inc : g.incident(v)) acc += scaled[inc.other];
      y[v] = 0.5 * (out.vector[v] + inv_sqrt_d[v] * acc);
    }
    rayleigh = 0.0;
    for (std::size_t i = 0; i < n; ++i) rayleigh += y[i] * out.vector[i];
    if (!deflate_normalize(y)) {
      // x was (numerically) in the kernel: every non-trivial eigenvalue is 0.
      out.converged = true;
      out.iterations = it;
      break;
    }
    double diff = 0.0;
    for (std::size_t i = 0; i < n; ++i) diff += (y[i] - out.vector[i]) * (y[i] - out.vector[i]);
    out.vector.swap(y);
    out.iterations = it;
    if (std::sqrt(diff) < tol) {
      out.converged = true;
      break;
    }
  }
  // Lazy eigenvalue mu = 1 - lambda/2.
  out.eigenvalue = 2.0 * (1.0 - rayleigh);
  return out;
}

}  // namespace detail

inline std::size_t default_sweep_iterations(std::size_t n) {
  const double nn = static_cast<double>(std::max<std::size_t>(n, 2));
  return static_cast<std::size_t>(std::ceil(10.0 * nn * std::log(nn)));
}

/// Spectral sweep cut. Orders vertices by the second eigenvector of the
/// degree-normalized Laplacian (scaled by D^-1/2) and evaluates every prefix
/// cut. When power iteration fails to converge within the iteration cap, the
/// best sweep over `restarts` extra random starts is used and
/// `converged` is false. A disconnected graph yields a component cut.
inline SweepResult sweep_cut(const Graph& g, double alpha, const SweepOptions& opts = {}) {
  const std::size_t n = g.num_vertices();
  if (n < 2) throw std::invalid_argument("sweep_cut: need at least 2 vertices");
  SweepResult res;
  std::uint32_t components = 0;
  const auto label = connected_components(g, &components);
  if (components > 1) {
    res.best = detail::component_cut(g, label);
    res.converged = true;
    res.cut = res.best;
    return res;
  }
  const std::size_t cap = opts.max_iterations ? opts.max_iterations : default_sweep_iterations(n);

  auto sweep_of = [&](const detail::PowerIterationOutcome& pi) {
    std::vector<double> score(n);
    for (Vertex v = 0; v < n; ++v) score[v] = pi.vector[v] / std::sqrt(static_cast<double>(g.degree(v)));
    return detail::best_prefix_cut(g, score);
  };

  auto first = detail::second_eigenvector(g, opts.seed, opts.tolerance, cap);
  res.best = sweep_of(first);
  res.converged = first.converged;
  res.iterations = first.iterations;
  res.eigenvalue = first.eigenvalue;
  if (!first.converged) {
    for (std::size_t r = 1; r <= opts.restarts; ++r) {
      auto pi = detail::second_eigenvector(g, opts.seed + 0x9e3779b97f4a7c15ULL * r, opts.tolerance, cap);
      res.iterations += pi.iterations;
      Cut c = sweep_of(pi);
      if (detail::ratio_less(c.crossing, c.min_volume(), res.best.crossing, res.best.min_volume())) {
        res.best = std::move(c);
        res.eigenvalue = pi.eigenvalue;
      }
    }
  }
  if (res.best.conductance < alpha) res.cut = res.best;
  return res;
}

}  // namespace carpool
