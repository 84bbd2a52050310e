#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "carpool/graph.hpp"

namespace carpool {

/// One prefix size k. "high" is the set of the k largest discrepancies,
/// "low" the k smallest (the mirror-image check for the -1 side).
struct PrefixRow {
  std::size_t k = 0;
  double rho_high = 0.0, lhs_high = 0.0, rhs_high = 0.0, margin_high = 0.0;
  double rho_low = 0.0, lhs_low = 0.0, rhs_low = 0.0, margin_low = 0.0;
};

struct PrefixReport {
  double beta = 0.0;
  std::vector<PrefixRow> rows;  // k = 1 .. n
  double min_margin = 0.0;
  std::size_t violations = 0;   // rows with a margin below -tolerance

  bool ok() const { return violations == 0; }
};

namespace detail {

/// (vol(S_k) + |E(S_k, rest)|) / vol(V) and rho = vol(S_k) / vol(V) for every
/// prefix S_k of `order`, by incremental updates.
inline void prefix_sides(const Graph& g, std::span<const Vertex> order, std::vector<double>& lhs,
                         std::vector<double>& rho) {
  const double vol = static_cast<double>(g.volume());
  std::vector<char> in(g.num_vertices(), 0);
  std::uint64_t vol_s = 0;
  std::int64_t crossing = 0;
  lhs.clear();
  rho.clear();
  for (Vertex v : order) {
    vol_s += g.degree(v);
    for (const auto& inc : g.incident(v)) crossing += in[inc.other] ? -1 : 1;
    in[v] = 1;
    lhs.push_back((static_cast<double>(vol_s) + static_cast<double>(crossing)) / vol);
    rho.push_back(static_cast<double>(vol_s) / vol);
  }
}

}  // namespace detail

/// Evaluates, for every k, the prefix inequality
///   (vol(S_k) + |E(S_k, V \ S_k)|) / vol(V) >= (1 + beta - beta rho) rho,
/// rho = vol(S_k) / vol(V), for S_k the k highest-discrepancy vertices (ties
/// by index) and for the k lowest. Both sides are computed exactly from the
/// graph; nothing is sampled. An empty `disc` means all zeros.
inline PrefixReport good_prefix_check(const Graph& g, double beta, std::span<const std::int64_t> disc = {},
                                      double tolerance = 1e-12) {
  if (!(beta >= 0.0 && beta <= 1.0)) throw std::invalid_argument("good_prefix_check: beta outside [0,1]");
  const std::size_t n = g.num_vertices();
  if (!disc.empty() && disc.size() != n)
    throw std::invalid_argument("good_prefix_check: disc has length " + std::to_string(disc.size()) +
                                " for n=" + std::to_string(n));
  if (g.volume() == 0) throw std::invalid_argument("good_prefix_check: graph has zero volume");
  auto value = [&](Vertex v) { return disc.empty() ? std::int64_t{0} : disc[v]; };

  std::vector<Vertex> high(n), low(n);
  std::iota(high.begin(), high.end(), Vertex{0});
  std::iota(low.begin(), low.end(), Vertex{0});
  std::stable_sort(high.begin(), high.end(), [&](Vertex a, Vertex b) { return value(a) > value(b); });
  std::stable_sort(low.begin(), low.end(), [&](Vertex a, Vertex b) { return value(a) < value(b); });

  std::vector<double> lhs_h, rho_h, lhs_l, rho_l;
  detail::prefix_sides(g, high, lhs_h, rho_h);
  detail::prefix_sides(g, low, lhs_l, rho_l);

  PrefixReport rep;
  rep.beta = beta;
  rep.min_margin = std::numeric_limits<double>::infinity();
  // (1 + beta - beta rho) rho, arranged to be exact at rho = 0 and rho = 1.
  auto rhs = [beta](double rho) { return rho + beta * rho * (1.0 - rho); };
  for (std::size_t i = 0; i < n; ++i) {
    PrefixRow row;
    row.k = i + 1;
    row.rho_high = rho_h[i];
    row.lhs_high = lhs_h[i];
    row.rhs_high = rhs(rho_h[i]);
    row.margin_high = row.lhs_high - row.rhs_high;
    row.rho_low = rho_l[i];
    row.lhs_low = lhs_l[i];
    row.rhs_low = rhs(rho_l[i]);
    row.margin_low = row.lhs_low - row.rhs_low;
    const double worst = std::min(row.margin_high, row.margin_low);
    rep.min_margin = std::min(rep.min_margin, worst);
    if (worst < -tolerance) ++rep.violations;
    rep.rows.push_back(row);
  }
  if (n == 0) rep.min_margin = 0.0;
  return rep;
}

}  // namespace carpool
