#include <gtest/gtest.h>

#include <cmath>

#include "carpool/arrivals.hpp"
#include "carpool/composed.hpp"
#include "carpool/generators.hpp"
#include "carpool/offline.hpp"
#include "carpool/orientation.hpp"
#include "carpool/rng.hpp"
#include "support.hpp"

using namespace carpool;
using carpool::prop::ScriptedCoins;

namespace {

/// Drives a state to the given discrepancies by orienting edges from a
/// surplus vertex to a deficit one.
OrientationState state_with(const std::vector<std::int64_t>& target, double lambda) {
  OrientationState s(target.size(), lambda);
  auto need = target;
  for (;;) {
    Vertex give = UINT32_MAX, take = UINT32_MAX;
    for (Vertex v = 0; v < need.size(); ++v) {
      if (need[v] < 0 && give == UINT32_MAX) give = v;
      if (need[v] > 0 && take == UINT32_MAX) take = v;
    }
    if (give == UINT32_MAX) break;
    s.apply(give, take);
    ++need[give];
    --need[take];
  }
  return s;
}

}  // namespace

TEST(Greedy, LargerDiscrepancyGivesTheRide) {
  auto s = state_with({3, -3}, 0.5);
  ScriptedCoins coins;
  auto e = greedy_step(s, {0, 1}, coins);
  EXPECT_EQ(e.tail, 0u);
  EXPECT_EQ(e.head, 1u);
  EXPECT_EQ(s.disc(0), 2);
  EXPECT_EQ(s.disc(1), -2);
  EXPECT_EQ(coins.used, 0);
}

TEST(Greedy, TieUsesOneBit) {
  OrientationState s(2, 0.5);
  ScriptedCoins heads{1};
  EXPECT_EQ(greedy_step(s, {0, 1}, heads).tail, 0u);
  EXPECT_EQ(heads.used, 1);
  OrientationState t(2, 0.5);
  ScriptedCoins tails{0};
  EXPECT_EQ(greedy_step(t, {0, 1}, tails).tail, 1u);
}

TEST(Greedy, RejectsBadArrivals) {
  OrientationState s(3, 0.5);
  Coins coins(1);
  EXPECT_THROW(greedy_step(s, {1, 1}, coins), std::invalid_argument);
  EXPECT_THROW(greedy_step(s, {0, 3}, coins), std::invalid_argument);
  EXPECT_THROW(random_step(s, {2, 2}, coins), std::invalid_argument);
  EXPECT_THROW(OrientationState(3, 0.0), std::invalid_argument);
}

TEST(Greedy, TwoVertexExhaustiveTieBits) {
  // Every sequence of 10 tie bits keeps |d| <= 1 on a parallel-edge pair.
  for (std::uint64_t bits = 0; bits < (1u << 10); ++bits) {
    OrientationState s(2, 0.5);
    ScriptedCoins coins{bits};
    for (int t = 0; t < 10; ++t) {
      greedy_step(s, {static_cast<Vertex>(t & 1), static_cast<Vertex>(1 - (t & 1))}, coins);
      ASSERT_LE(s.max_abs(), 1);
    }
  }
}

TEST(Greedy, TwoVertexLongRun) {
  OrientationState s(2, 0.5);
  Coins coins(7);
  for (int t = 0; t < 100000; ++t) {
    greedy_step(s, {0, 1}, coins);
    ASSERT_LE(s.max_abs(), 1);
  }
}

TEST(Random, BitDecidesDirection) {
  OrientationState s(2, 0.5);
  ScriptedCoins zero{0};
  auto e = random_step(s, {0, 1}, zero);
  EXPECT_EQ(e.tail, 0u);
  ScriptedCoins one{1};
  e = random_step(s, {0, 1}, one);
  EXPECT_EQ(e.tail, 1u);
}

TEST(Random, ZeroArrivals) {
  OrientationState s(4, 0.5);
  EXPECT_EQ(s.max_abs(), 0);
  EXPECT_EQ(s.step(), 0u);
}

TEST(Random, RepeatedEdgeGrowsLikeSqrtT) {
  std::vector<double> finals;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    OrientationState s(2, 0.5);
    Coins coins(coin_seed(seed));
    for (int t = 0; t < 10000; ++t) random_step(s, {0, 1}, coins);
    finals.push_back(static_cast<double>(std::abs(s.disc(0))));
  }
  std::nth_element(finals.begin(), finals.begin() + 50, finals.end());
  EXPECT_GE(finals[50], 0.3 * 100.0);
  EXPECT_LE(finals[50], 3.0 * 100.0);
}

TEST(OnePlusBeta, SelfPairIsNoOp) {
  OrientationState s(3, 0.5);
  Coins coins(3);
  EXPECT_FALSE(one_plus_beta_step(s, {1, 1}, 0.5, coins).has_value());
  EXPECT_EQ(s.step(), 0u);
  EXPECT_EQ(s.max_abs(), 0);
}

TEST(OnePlusBeta, RejectsBadBeta) {
  OrientationState s(3, 0.5);
  Coins coins(3);
  EXPECT_THROW(one_plus_beta_step(s, {0, 1}, 1.5, coins), std::invalid_argument);
  EXPECT_THROW(one_plus_beta_step(s, {0, 1}, -0.1, coins), std::invalid_argument);
}

TEST(OnePlusBeta, CollapsesToGreedyAndRandom) {
  auto rng = prop::rng_for(21, 0);
  const std::size_t n = 9;
  for (double beta : {1.0, 0.0}) {
    OrientationState a(n, 0.1), b(n, 0.1);
    Coins ca(5), cb(5);
    std::uniform_int_distribution<Vertex> pick(0, n - 1);
    for (int t = 0; t < 5000; ++t) {
      Vertex u = pick(rng), v = pick(rng);
      if (u == v) continue;
      auto x = one_plus_beta_step(a, {u, v}, beta, ca);
      auto y = beta == 1.0 ? greedy_step(b, {u, v}, cb) : random_step(b, {u, v}, cb);
      ASSERT_TRUE(x.has_value());
      ASSERT_EQ(*x, y);
    }
  }
}

TEST(Potential, Examples) {
  OrientationState z(5, 0.7);
  EXPECT_DOUBLE_EQ(z.potential(), 5.0);
  std::vector<std::int64_t> d{1, -1, 0};
  EXPECT_NEAR(potential(d, 1.0), 2.0 * std::cosh(1.0) + 1.0, 1e-12);
  // Independent check against the series of cosh.
  double series = 0.0, term = 1.0;
  for (int k = 0; k < 30; ++k) {
    series += term;
    term /= (2.0 * k + 1.0) * (2.0 * k + 2.0);
  }
  EXPECT_NEAR(potential(d, 1.0), 2.0 * series + 1.0, 1e-12);
  EXPECT_NEAR(potential(d, 1.0), 4.0862, 1e-4);
}

TEST(Potential, GreedyNeverIncreasesWhenGapAboveOne) {
  for (std::int64_t du = -20; du <= 20; ++du)
    for (std::int64_t dv = -20; dv <= 20; ++dv) {
      if (du <= dv + 1) continue;
      for (double lambda : {0.01, 0.3, 1.0}) {
        const double delta = cosh_step(lambda, du, -1) + cosh_step(lambda, dv, +1);
        ASSERT_LE(delta, 1e-12) << du << " " << dv << " " << lambda;
      }
    }
}

TEST(Potential, DeltaMatchesRecomputation) {
  auto s = state_with({4, -2, 1, -3, 0}, 0.3);
  const double before = s.potential();
  const double delta = s.potential_delta(0, 3);
  s.apply(0, 3);
  EXPECT_NEAR(s.potential() - before, delta, 1e-12);
  EXPECT_NEAR(s.potential(), potential(s.discrepancies(), 0.3), 1e-12);
}

TEST(Potential, LogSpaceAgreesAtCrossover) {
  for (std::int64_t d : {600, 699, 700, 701}) {
    std::vector<std::int64_t> v{d, -d, 3};
    const double direct = std::log(std::cosh(static_cast<double>(d))) + std::log(2.0);
    const double via_log = log_potential(std::span<const std::int64_t>(v), 1.0);
    EXPECT_NEAR(via_log, direct, 1e-9 * std::abs(direct));
  }
  std::vector<std::int64_t> edge{700, -700};
  std::vector<std::int64_t> past{701, -701};
  const double at = potential(edge, 1.0);
  const double beyond = potential(past, 1.0);
  EXPECT_TRUE(std::isfinite(at));
  EXPECT_NEAR(beyond / at, std::exp(1.0), 1e-9 * std::exp(1.0));
}

TEST(Potential, CacheInvalidatesAndRecovers) {
  OrientationState s(2, 100.0);
  ScriptedCoins coins;
  for (int i = 0; i < 8; ++i) s.apply(0, 1);
  EXPECT_FALSE(s.potential_cached());
  EXPECT_TRUE(std::isinf(s.potential()));
  for (int i = 0; i < 8; ++i) s.apply(1, 0);
  EXPECT_TRUE(s.potential_cached());
  EXPECT_DOUBLE_EQ(s.potential(), 2.0);
}

TEST(Offline, CycleIsDirected) {
  auto out = offline_orient(gen::cycle(4));
  for (auto d : discrepancy_of(4, out)) EXPECT_EQ(d, 0);
}

TEST(Offline, PathEndpoints) {
  auto d = discrepancy_of(3, offline_orient(gen::path(3)));
  EXPECT_EQ(d[1], 0);
  EXPECT_EQ(std::abs(d[0]), 1);
  EXPECT_EQ(d[0], -d[2]);
}

TEST(Offline, RandomMultigraphs) {
  for (std::uint64_t i = 0; i < 100; ++i) {
    auto rng = prop::rng_for(22, i);
    const auto n = prop::uniform_size(rng, 2, 10);
    auto g = prop::random_multigraph(rng, n, prop::uniform_size(rng, 0, 30));
    auto out = offline_orient(g);
    ASSERT_EQ(out.size(), g.num_edges());
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      const Edge& x = g.edge(e);
      ASSERT_TRUE((out[e].tail == x.u && out[e].head == x.v) || (out[e].tail == x.v && out[e].head == x.u));
    }
    for (auto d : discrepancy_of(n, out)) ASSERT_LE(std::abs(d), 1) << "case " << i;
  }
}

TEST(Majorization, Examples) {
  EXPECT_TRUE(majorizes(std::vector<int>{2, 0}, std::vector<int>{1, 1}));
  EXPECT_FALSE(majorizes(std::vector<int>{1, 1}, std::vector<int>{2, 0}));
  EXPECT_THROW(majorizes(std::vector<int>{1}, std::vector<int>{1, 2}), std::invalid_argument);
}

TEST(Majorization, ImpliesPotentialOrder) {
  std::size_t checked = 0;
  for (std::uint64_t i = 0; i < 10000; ++i) {
    auto rng = prop::rng_for(23, i);
    const auto n = prop::uniform_size(rng, 1, 6);
    auto a = prop::random_zero_sum(rng, n, 6);
    auto b = prop::random_zero_sum(rng, n, 6);
    if (!majorizes(a, b)) std::swap(a, b);
    if (!majorizes(a, b)) continue;
    ++checked;
    for (double lambda : {0.05, 0.5, 2.0})
      ASSERT_GE(potential(a, lambda), potential(b, lambda) * (1 - 1e-12)) << "case " << i;
  }
  EXPECT_GT(checked, 1000u);
}

TEST(Composed, SinglePartMatchesGreedy) {
  auto g = gen::complete(8);
  auto d = full_decomposition(g, 0.3);
  ASSERT_EQ(d.parts.size(), 1u);
  ComposedOrienter c(d, 0.1);
  OrientationState plain(8, 0.1);
  Coins ca(9), cb(9);
  UniformEdgeStream s(g, 2000, 4);
  while (!s.done()) {
    auto a = s.next();
    auto x = composed_step(c, a.id, ca);
    auto y = greedy_step(plain, a.edge, cb);
    ASSERT_EQ(x, y);
  }
}

TEST(Composed, BarbellBridgeTouchesOnlyItsPart) {
  auto g = gen::barbell(8);
  auto d = full_decomposition(g, 0.3);
  ComposedOrienter c(d, 0.1);
  Coins coins(1);
  EdgeId bridge = static_cast<EdgeId>(g.num_edges() - 1);
  const auto owner = d.router[bridge].part;
  composed_step(c, bridge, coins);
  for (std::size_t p = 0; p < c.num_parts(); ++p)
    EXPECT_EQ(c.part_state(p).step(), p == owner ? 1u : 0u);
  EXPECT_THROW(composed_step(c, static_cast<EdgeId>(g.num_edges()), coins), std::invalid_argument);
}

TEST(Composed, AdditiveAndWithinBudgetsEveryStep) {
  auto g = gen::grid(6, 6);
  auto d = full_decomposition(g, default_alpha(36));
  ComposedOrienter c(d, 0.1);
  Coins coins(2);
  UniformEdgeStream s(g, 3000, 8);
  std::vector<std::int64_t> from_log(36, 0);
  while (!s.done()) {
    auto e = composed_step(c, s.next().id, coins);
    --from_log[e.tail];
    ++from_log[e.head];
    ASSERT_TRUE(c.additive());
    const auto budget = c.part_budgets();
    for (Vertex v = 0; v < 36; ++v) {
      ASSERT_EQ(from_log[v], c.global().disc(v));
      ASSERT_LE(std::abs(c.global().disc(v)), budget[v]);
    }
  }
}

TEST(EngineProperty, ZeroSumAndUnitGrowth) {
  for (std::uint64_t i = 0; i < 20; ++i) {
    auto rng = prop::rng_for(24, i);
    const auto n = prop::uniform_size(rng, 2, 20);
    auto g = prop::random_connected(rng, n, n);
    OrientationState gs(n, 0.2), rs(n, 0.2), bs(n, 0.2);
    Coins coins(i);
    UniformEdgeStream s(g, 2000, i);
    ProductPairStream p(degree_weights(g), 2000, i);
    while (!s.done()) {
      const auto e = s.next().edge;
      const std::int64_t before[] = {gs.max_abs(), rs.max_abs(), bs.max_abs()};
      greedy_step(gs, e, coins);
      random_step(rs, e, coins);
      one_plus_beta_step(bs, p.next(), 0.5, coins);
      int k = 0;
      for (const auto* st : {&gs, &rs, &bs}) {
        std::int64_t sum = 0;
        for (auto x : st->discrepancies()) sum += x;
        ASSERT_EQ(sum, 0);
        ASSERT_LE(st->max_abs(), before[k++] + 1);
      }
    }
  }
}

TEST(EngineProperty, MaxAbsTracking) {
  auto rng = prop::rng_for(25, 0);
  OrientationState s(7, 0.2);
  std::uniform_int_distribution<Vertex> pick(0, 6);
  for (int t = 0; t < 5000; ++t) {
    Vertex u = pick(rng), v = pick(rng);
    if (u == v) continue;
    s.apply(u, v);
    std::int64_t top = 0;
    for (auto x : s.discrepancies()) top = std::max<std::int64_t>(top, std::abs(x));
    ASSERT_EQ(s.max_abs(), top);
    ASSERT_EQ(std::abs(s.disc(s.argmax_abs())), top);
  }
}
