#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "carpool/graph.hpp"

namespace carpool {

template <class C>
concept CoinSource = requires(C& c) {
  { c.bit() } -> std::convertible_to<bool>;
  { c.uniform() } -> std::convertible_to<double>;
};

/// Largest lambda * |d| evaluated with plain cosh; beyond it the potential
/// is computed in log space.
inline constexpr double kDirectPotentialLimit = 700.0;

/// log cosh(x), finite for every finite x.
inline double log_cosh(double x) {
  const double a = std::abs(x);
  return a + std::log1p(std::exp(-2.0 * a)) - std::log(2.0);
}

/// log of sum_v cosh(lambda d_v), via log-sum-exp.
template <std::integral T>
double log_potential(std::span<const T> disc, double lambda) {
  if (disc.empty()) return -std::numeric_limits<double>::infinity();
  double top = -std::numeric_limits<double>::infinity();
  for (T d : disc) top = std::max(top, log_cosh(lambda * static_cast<double>(d)));
  double acc = 0.0;
  for (T d : disc) acc += std::exp(log_cosh(lambda * static_cast<double>(d)) - top);
  return top + std::log(acc);
}

/// sum_v cosh(lambda d_v). Direct below the overflow limit, otherwise
/// exp(log_potential), which is +inf once the value leaves double range.
template <std::integral T>
double potential(std::span<const T> disc, double lambda) {
  double peak = 0.0;
  for (T d : disc) peak = std::max(peak, std::abs(lambda * static_cast<double>(d)));
  if (peak <= kDirectPotentialLimit) {
    double sum = 0.0;
    for (T d : disc) sum += std::cosh(lambda * static_cast<double>(d));
    return sum;
  }
  return std::exp(log_potential(disc, lambda));
}

template <std::integral T>
double potential(const std::vector<T>& disc, double lambda) {
  return potential(std::span<const T>(disc), lambda);
}

/// cosh(lambda (d + step)) - cosh(lambda d), written as
/// 2 sinh(lambda (d + step/2)) sinh(lambda step / 2) to avoid cancellation.
inline double cosh_step(double lambda, std::int64_t d, int step) {
  const double half = 0.5 * lambda * step;
  return 2.0 * std::sinh(lambda * static_cast<double>(d) + half) * std::sinh(half);
}

struct OrientedEdge {
  Vertex tail = 0;
  Vertex head = 0;
  std::uint64_t step = 0;  // 1-based arrival index within its state

  friend bool operator==(const OrientedEdge&, const OrientedEdge&) = default;
};

/// Signed discrepancies (in-degree minus out-degree) of one online process,
/// with a running potential and O(1) tracking of max |d|.
class OrientationState {
 public:
  OrientationState(std::size_t n, double lambda) : disc_(n, 0), lambda_(lambda), abs_count_(1, n) {
    if (!(lambda > 0.0)) throw std::invalid_argument("OrientationState: lambda must be positive");
    cached_potential_ = static_cast<double>(n);
    cache_peak_ = cached_potential_;
  }

  std::size_t size() const { return disc_.size(); }
  std::int64_t disc(Vertex v) const { return disc_[v]; }
  std::span<const std::int64_t> discrepancies() const { return disc_; }
  std::uint64_t step() const { return step_; }
  double lambda() const { return lambda_; }

  /// max_v |d_v|.
  std::int64_t max_abs() const { return max_abs_; }

  /// Smallest-index vertex attaining max |d| (O(n)).
  Vertex argmax_abs() const {
    for (Vertex v = 0; v < disc_.size(); ++v)
      if (std::abs(disc_[v]) == max_abs_) return v;
    return 0;
  }

  bool potential_cached() const { return cache_valid_; }

  double potential() const {
    if (!cache_valid_) return carpool::potential(std::span<const std::int64_t>(disc_), lambda_);
    return cached_potential_;
  }

  double log_potential() const { return carpool::log_potential(std::span<const std::int64_t>(disc_), lambda_); }

  /// Potential change if `tail` lost one and `head` gained one; the state is
  /// not modified.
  double potential_delta(Vertex tail, Vertex head) const {
    check_pair(tail, head);
    return cosh_step(lambda_, disc_[tail], -1) + cosh_step(lambda_, disc_[head], +1);
  }

  /// Records the orientation tail -> head.
  OrientedEdge apply(Vertex tail, Vertex head) {
    check_pair(tail, head);
    const double delta = potential_delta(tail, head);
    bump(tail, -1);
    bump(head, +1);
    ++step_;
    if (cache_valid_) {
      if (lambda_ * static_cast<double>(max_abs_) <= kDirectPotentialLimit) {
        cached_potential_ += delta;
        cache_peak_ = std::max(cache_peak_, cached_potential_);
        // Increments carry rounding error relative to the largest value seen;
        // recompute once the potential has fallen far below it.
        if (cached_potential_ * kRefreshRatio < cache_peak_) refresh_potential();
      } else {
        cache_valid_ = false;
      }
    } else if (lambda_ * static_cast<double>(max_abs_) <= kDirectPotentialLimit) {
      refresh_potential();
    }
    return {tail, head, step_};
  }

  /// Recomputes the cached potential from scratch.
  void refresh_potential() {
    if (lambda_ * static_cast<double>(max_abs_) <= kDirectPotentialLimit) {
      cached_potential_ = carpool::potential(std::span<const std::int64_t>(disc_), lambda_);
      cache_peak_ = cached_potential_;
      cache_valid_ = true;
    } else {
      cache_valid_ = false;
    }
  }

 private:
  void check_pair(Vertex tail, Vertex head) const {
    if (tail >= disc_.size() || head >= disc_.size())
      throw std::invalid_argument("orientation: vertex out of range (" + std::to_string(tail) + "," +
                                  std::to_string(head) + ") for n=" + std::to_string(disc_.size()));
    if (tail == head) throw std::invalid_argument("orientation: self-loop arrival at " + std::to_string(tail));
  }

  void bump(Vertex v, int by) {
    const auto before = static_cast<std::size_t>(std::abs(disc_[v]));
    disc_[v] += by;
    const auto after = static_cast<std::size_t>(std::abs(disc_[v]));
    --abs_count_[before];
    if (after >= abs_count_.size()) abs_count_.resize(after + 1, 0);
    ++abs_count_[after];
    if (static_cast<std::int64_t>(after) > max_abs_) max_abs_ = static_cast<std::int64_t>(after);
    while (max_abs_ > 0 && abs_count_[static_cast<std::size_t>(max_abs_)] == 0) --max_abs_;
  }

  std::vector<std::int64_t> disc_;
  std::uint64_t step_ = 0;
  double lambda_;
  static constexpr double kRefreshRatio = 1e3;
  double cached_potential_ = 0.0;
  double cache_peak_ = 0.0;
  bool cache_valid_ = true;
  std::vector<std::size_t> abs_count_;  // abs_count_[k] = #{v : |d_v| == k}
  std::int64_t max_abs_ = 0;
};

namespace detail {

inline void check_arrival(const OrientationState& state, Edge e) {
  if (e.u >= state.size() || e.v >= state.size())
    throw std::invalid_argument("arrival (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                ") out of range for n=" + std::to_string(state.size()));
  if (e.u == e.v) throw std::invalid_argument("arrival is a self-loop at " + std::to_string(e.u));
}

template <CoinSource C>
OrientedEdge greedy_unchecked(OrientationState& state, Edge e, C& coins) {
  const auto du = state.disc(e.u), dv = state.disc(e.v);
  bool u_is_tail;
  if (du != dv)
    u_is_tail = du > dv;
  else
    u_is_tail = coins.bit();  // heads: u gives the ride
  return u_is_tail ? state.apply(e.u, e.v) : state.apply(e.v, e.u);
}

template <CoinSource C>
OrientedEdge random_unchecked(OrientationState& state, Edge e, C& coins) {
  return coins.bit() ? state.apply(e.v, e.u) : state.apply(e.u, e.v);
}

}  // namespace detail

/// Orients from the endpoint of strictly larger discrepancy to the other;
/// a tie costs one coin bit (set: u becomes the tail).
template <CoinSource C>
OrientedEdge greedy_step(OrientationState& state, Edge e, C& coins) {
  detail::check_arrival(state, e);
  return detail::greedy_unchecked(state, e, coins);
}

/// One fair coin bit decides: clear gives u -> v, set gives v -> u.
template <CoinSource C>
OrientedEdge random_step(OrientationState& state, Edge e, C& coins) {
  detail::check_arrival(state, e);
  return detail::random_unchecked(state, e, coins);
}

/// The (1+beta)-process on a sampled pair: a no-op when u == v, otherwise
/// greedy with probability beta and a uniformly random sign with probability
/// 1 - beta. The beta coin is only drawn when 0 < beta < 1, so beta = 1 and
/// beta = 0 consume exactly the coins of greedy_step and random_step.
template <CoinSource C>
std::optional<OrientedEdge> one_plus_beta_step(OrientationState& state, Edge pair, double beta, C& coins) {
  if (!(beta >= 0.0 && beta <= 1.0)) throw std::invalid_argument("one_plus_beta_step: beta outside [0,1]");
  if (pair.u >= state.size() || pair.v >= state.size())
    throw std::invalid_argument("one_plus_beta_step: vertex out of range");
  if (pair.u == pair.v) return std::nullopt;
  const bool greedy = beta >= 1.0 || (beta > 0.0 && coins.uniform() < beta);
  return greedy ? detail::greedy_unchecked(state, pair, coins) : detail::random_unchecked(state, pair, coins);
}

/// True iff the descending rearrangement of a has every prefix sum at least
/// that of b.
template <class T>
bool majorizes(std::span<const T> a, std::span<const T> b) {
  if (a.size() != b.size())
    throw std::invalid_argument("majorizes: length mismatch " + std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()));
  std::vector<T> sa(a.begin(), a.end()), sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end(), std::greater<T>());
  std::sort(sb.begin(), sb.end(), std::greater<T>());
  T pa{}, pb{};
  for (std::size_t i = 0; i < sa.size(); ++i) {
    pa += sa[i];
    pb += sb[i];
    if (pa < pb) return false;
  }
  return true;
}

template <class T>
bool majorizes(const std::vector<T>& a, const std::vector<T>& b) {
  return majorizes(std::span<const T>(a), std::span<const T>(b));
}

}  // namespace carpool
