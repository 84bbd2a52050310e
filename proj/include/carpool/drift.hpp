#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "carpool/arrivals.hpp"
#include "carpool/orientation.hpp"

namespace carpool {

/// Two-sided 99% normal quantile.
inline constexpr double kZ99 = 2.5758293035489004;

namespace detail {

/// Surrogate one-step change for the sampled pair (u, v), averaged over the
/// algorithm's coins: the +1 and -1 terms are charged to whichever endpoints
/// receive them, so u == v is charged both (unlike the true process, where
/// it is a no-op).
inline double surrogate_given_pair(std::span<const std::int64_t> d, Vertex u, Vertex v, double lambda,
                                   double beta) {
  auto inc = [&](Vertex x) { return cosh_step(lambda, d[x], +1); };
  auto dec = [&](Vertex x) { return cosh_step(lambda, d[x], -1); };
  if (u == v) return inc(u) + dec(u);
  const double uv = dec(u) + inc(v);  // u -> v
  const double vu = dec(v) + inc(u);  // v -> u
  const double random = 0.5 * (uv + vu);
  const double greedy = d[u] > d[v] ? uv : d[v] > d[u] ? vu : random;
  return beta * greedy + (1.0 - beta) * random;
}

inline void check_drift_input(std::span<const std::int64_t> disc, std::span<const std::uint64_t> weights,
                              double lambda, double beta) {
  if (disc.size() != weights.size())
    throw std::invalid_argument("drift: disc and weights differ in length");
  if (disc.empty()) throw std::invalid_argument("drift: empty state");
  if (!(lambda > 0.0)) throw std::invalid_argument("drift: lambda must be positive");
  if (!(beta >= 0.0 && beta <= 1.0)) throw std::invalid_argument("drift: beta outside [0,1]");
}

}  // namespace detail

/// E over (u, v) ~ w x w of the surrogate change, by exact O(n^2) summation.
inline double drift_exact(std::span<const std::int64_t> disc, std::span<const std::uint64_t> weights, double lambda,
                          double beta) {
  detail::check_drift_input(disc, weights, lambda, beta);
  long double total = 0;
  for (auto w : weights) total += w;
  if (total == 0) throw std::invalid_argument("drift: weights must not all be zero");
  long double acc = 0;
  for (Vertex u = 0; u < disc.size(); ++u) {
    if (weights[u] == 0) continue;
    for (Vertex v = 0; v < disc.size(); ++v) {
      if (weights[v] == 0) continue;
      acc += static_cast<long double>(weights[u]) * weights[v] *
             detail::surrogate_given_pair(disc, u, v, lambda, beta);
    }
  }
  return static_cast<double>(acc / (total * total));
}

struct DriftReport {
  std::uint64_t samples = 0;
  double mean = 0.0;
  double sd = 0.0;
  double ci_low = 0.0;   // 99% normal-approximation interval for the mean
  double ci_high = 0.0;

  double log_phi = 0.0;        // log of the starting potential
  double log_phi_limit = 0.0;  // 10 log(nT)
  bool phi_guard = true;       // Phi <= (nT)^10
  double gamma_eff = 0.0;      // n * min w / sum w
  double gamma_required = 0.0; // 16 lambda^(1/4)
  bool gamma_guard = true;
  bool beta_guard = true;      // beta >= 6 lambda

  /// All hypotheses of the drift bound hold; otherwise the run is reported
  /// as unguarded rather than rejected.
  bool guarded() const { return phi_guard && gamma_guard && beta_guard; }
};

/// Monte Carlo estimate of the surrogate one-step potential change of the
/// (1+beta)-process started from `disc`, with pairs drawn from the product
/// distribution of `weights`. Each sample draws one pair and averages the
/// algorithm's coins out exactly. `horizon` only enters the potential guard.
inline DriftReport drift_estimate(std::span<const std::int64_t> disc, std::span<const std::uint64_t> weights,
                                  double lambda, double beta, std::uint64_t samples, std::uint64_t seed,
                                  std::uint64_t horizon = 1) {
  detail::check_drift_input(disc, weights, lambda, beta);
  if (samples < 2) throw std::invalid_argument("drift: need at least 2 samples");
  DriftReport rep;
  rep.samples = samples;
  const double n = static_cast<double>(disc.size());
  rep.log_phi = log_potential(disc, lambda);
  rep.log_phi_limit = 10.0 * std::log(n * static_cast<double>(std::max<std::uint64_t>(horizon, 1)));
  rep.phi_guard = rep.log_phi <= rep.log_phi_limit;
  long double total = 0;
  std::uint64_t min_w = UINT64_MAX;
  for (auto w : weights) {
    total += w;
    min_w = std::min(min_w, w);
  }
  if (total == 0) throw std::invalid_argument("drift: weights must not all be zero");
  rep.gamma_eff = static_cast<double>(n * min_w / total);
  rep.gamma_required = 16.0 * std::pow(lambda, 0.25);
  rep.gamma_guard = rep.gamma_eff >= rep.gamma_required;
  rep.beta_guard = beta >= 6.0 * lambda;

  ProductPairStream pairs(weights, samples, seed);
  // Welford running mean and variance.
  double mean = 0.0, m2 = 0.0;
  for (std::uint64_t i = 1; i <= samples; ++i) {
    const Edge p = pairs.next();
    const double x = detail::surrogate_given_pair(disc, p.u, p.v, lambda, beta);
    const double delta = x - mean;
    mean += delta / static_cast<double>(i);
    m2 += delta * (x - mean);
  }
  rep.mean = mean;
  rep.sd = std::sqrt(m2 / static_cast<double>(samples - 1));
  const double half = kZ99 * rep.sd / std::sqrt(static_cast<double>(samples));
  rep.ci_low = mean - half;
  rep.ci_high = mean + half;
  return rep;
}

inline DriftReport drift_estimate(const std::vector<std::int64_t>& disc, const std::vector<std::uint64_t>& weights,
                                  double lambda, double beta, std::uint64_t samples, std::uint64_t seed,
                                  std::uint64_t horizon = 1) {
  return drift_estimate(std::span<const std::int64_t>(disc), std::span<const std::uint64_t>(weights), lambda, beta,
                        samples, seed, horizon);
}

}  // namespace carpool
