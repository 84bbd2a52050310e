#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "carpool/conductance.hpp"
#include "carpool/drift.hpp"
#include "carpool/experiment.hpp"
#include "carpool/generators.hpp"
#include "carpool/prefix_check.hpp"
#include "support.hpp"

using namespace carpool;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "carpool_harness_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST(PrefixCheck, CompleteFourFirstPrefix) {
  auto rep = good_prefix_check(gen::complete(4), 2.0 / 3.0);
  ASSERT_EQ(rep.rows.size(), 4u);
  EXPECT_DOUBLE_EQ(rep.rows[0].lhs_high, 0.5);
  EXPECT_DOUBLE_EQ(rep.rows[0].rhs_high, 0.375);
  EXPECT_DOUBLE_EQ(rep.rows[0].margin_high, 0.125);
}

TEST(PrefixCheck, FullSetHasZeroMargin) {
  auto g = gen::grid(3, 4);
  auto rep = good_prefix_check(g, 0.4);
  const auto& last = rep.rows.back();
  EXPECT_DOUBLE_EQ(last.rho_high, 1.0);
  EXPECT_DOUBLE_EQ(last.lhs_high, 1.0);
  EXPECT_DOUBLE_EQ(last.rhs_high, 1.0);
  EXPECT_DOUBLE_EQ(last.margin_high, 0.0);
}

TEST(PrefixCheck, OrderFollowsDiscrepancy) {
  auto g = gen::path(4);
  const std::vector<std::int64_t> d{-1, 5, 0, 2};
  auto rep = good_prefix_check(g, 0.0, d);
  // Highest first is vertex 1 (degree 2), lowest first is vertex 0 (degree 1).
  EXPECT_DOUBLE_EQ(rep.rows[0].rho_high, 2.0 / 6.0);
  EXPECT_DOUBLE_EQ(rep.rows[0].rho_low, 1.0 / 6.0);
}

TEST(PrefixCheck, ViolationFlaggedWhenBetaExceedsConductance) {
  auto g = gen::barbell(5);
  std::vector<std::int64_t> d(10, 0);
  for (Vertex v = 0; v < 5; ++v) d[v] = 1;
  auto rep = good_prefix_check(g, 0.9, d);
  EXPECT_FALSE(rep.ok());
  EXPECT_LT(rep.min_margin, 0.0);
}

TEST(PrefixCheck, Errors) {
  EXPECT_THROW(good_prefix_check(gen::path(3), 1.5), std::invalid_argument);
  const std::vector<std::int64_t> d{1, 2};
  EXPECT_THROW(good_prefix_check(gen::path(3), 0.5, d), std::invalid_argument);
  EXPECT_THROW(good_prefix_check(build_graph({}, 3), 0.5), std::invalid_argument);
}

TEST(PrefixCheckProperty, ExpandersHaveNonNegativeMargins) {
  std::size_t graphs = 0;
  for (std::uint64_t i = 0; graphs < 40 && i < 400; ++i) {
    auto rng = prop::rng_for(31, i);
    const auto n = prop::uniform_size(rng, 2, 10);
    auto g = prop::random_connected(rng, n, prop::uniform_size(rng, 0, 3 * n));
    const double beta = conductance_exact(g).value;
    ++graphs;
    for (int trial = 0; trial < 5; ++trial) {
      auto d = trial == 0 ? std::vector<std::int64_t>(n, 0) : prop::random_disc(rng, n, 4);
      auto rep = good_prefix_check(g, beta, d);
      ASSERT_GE(rep.min_margin, -1e-12) << "case " << i;
    }
  }
}

TEST(Drift, ZeroStateClosedForm) {
  const std::vector<std::int64_t> d(6, 0);
  const std::vector<std::uint64_t> w{3, 1, 2, 2, 5, 1};
  for (double lambda : {0.01, 0.2}) {
    const double expect = 2.0 * (std::cosh(lambda) - 1.0);
    auto rep = drift_estimate(d, w, lambda, 0.5, 1000, 3);
    EXPECT_NEAR(rep.mean, expect, 1e-15);
    EXPECT_LE(rep.ci_low, expect + 1e-15);
    EXPECT_GE(rep.ci_high, expect - 1e-15);
    EXPECT_NEAR(drift_exact(d, w, lambda, 0.5), expect, 1e-15);
  }
}

TEST(Drift, GreedyShrinksSpreadOnHeavyExtremes) {
  const std::int64_t M = 6;
  const std::vector<std::int64_t> d{M, -M, 0, 0};
  const std::vector<std::uint64_t> w{10, 10, 1, 1};
  const double exact = drift_exact(d, w, 0.5, 1.0);
  EXPECT_LT(exact, 0.0);
  auto rep = drift_estimate(d, w, 0.5, 1.0, 200000, 4);
  EXPECT_LT(rep.ci_high, 0.0);
  EXPECT_LE(rep.ci_low, exact);
  EXPECT_GE(rep.ci_high, exact);
}

TEST(Drift, EstimateCoversExactValue) {
  std::size_t covered = 0;
  for (std::uint64_t i = 0; i < 40; ++i) {
    auto rng = prop::rng_for(32, i);
    const auto n = prop::uniform_size(rng, 2, 12);
    auto d = prop::random_zero_sum(rng, n, 8);
    std::vector<std::uint64_t> w(n);
    for (auto& x : w) x = 1 + rng() % 5;
    const double beta = (rng() % 100) / 100.0;
    const double exact = drift_exact(d, w, 0.3, beta);
    auto rep = drift_estimate(d, w, 0.3, beta, 20000, i);
    covered += rep.ci_low <= exact && exact <= rep.ci_high;
  }
  EXPECT_GE(covered, 36u);  // 99% intervals
}

TEST(Drift, GuardsReported) {
  const std::vector<std::int64_t> d{0, 0, 0, 0};
  const std::vector<std::uint64_t> w{1, 1, 1, 9};
  auto rep = drift_estimate(d, w, 1e-6, 0.5, 100, 1, 100);
  EXPECT_TRUE(rep.phi_guard);
  EXPECT_TRUE(rep.beta_guard);
  EXPECT_NEAR(rep.gamma_eff, 4.0 / 12.0, 1e-12);
  EXPECT_NEAR(rep.gamma_required, 16.0 * std::pow(1e-6, 0.25), 1e-12);
  EXPECT_FALSE(rep.gamma_guard);
  EXPECT_FALSE(rep.guarded());
  const std::vector<std::int64_t> big{400, -400, 0, 0};
  EXPECT_FALSE(drift_estimate(big, w, 1.0, 1.0, 100, 1, 10).phi_guard);
}

TEST(Drift, Errors) {
  const std::vector<std::int64_t> d{0, 0};
  EXPECT_THROW(drift_estimate(d, std::vector<std::uint64_t>{0, 0}, 0.1, 0.5, 10, 1), std::invalid_argument);
  EXPECT_THROW(drift_estimate(d, std::vector<std::uint64_t>{1}, 0.1, 0.5, 10, 1), std::invalid_argument);
  EXPECT_THROW(drift_estimate(d, std::vector<std::uint64_t>{1, 1}, 0.1, 1.5, 10, 1), std::invalid_argument);
}

TEST(Experiment, DefaultsAndValidation) {
  EXPECT_EQ(default_record_every(1000), 1u);
  EXPECT_EQ(default_record_every(100000), 128u);
  EXPECT_EQ(default_record_every(1), 1u);
  EXPECT_DOUBLE_EQ(default_lambda(2, 1), 0.5);
  EXPECT_DOUBLE_EQ(default_lambda(64, 100000), 1.0 / std::pow(23.0, 4));
  ExperimentConfig cfg;
  cfg.graph = std::make_shared<Graph>(gen::complete(4));
  EXPECT_THROW(resolve(cfg), std::invalid_argument);  // horizon 0
  cfg.horizon = 10;
  cfg.beta = 2.0;
  EXPECT_THROW(resolve(cfg), std::invalid_argument);
  cfg.beta = 0.5;
  cfg.lambda = -1.0;
  EXPECT_THROW(resolve(cfg), std::invalid_argument);
  EXPECT_THROW(algorithm_from_string("fancy"), std::invalid_argument);
}

TEST(Experiment, AutoLambdaRespectsBeta) {
  ExperimentConfig cfg;
  cfg.algorithm = Algorithm::one_plus_beta;
  cfg.graph = std::make_shared<Graph>(gen::path(3));
  cfg.horizon = 2;
  auto p = resolve(cfg);
  EXPECT_DOUBLE_EQ(p.alpha, default_alpha(3));
  EXPECT_DOUBLE_EQ(p.beta, p.alpha);
  EXPECT_LE(6.0 * p.lambda, p.beta);
}

TEST(Experiment, SummaryTracksEveryStep) {
  ExperimentConfig cfg;
  cfg.algorithm = Algorithm::random;
  cfg.graph = std::make_shared<Graph>(gen::complete(6));
  cfg.horizon = 5000;
  cfg.record_every = 700;
  cfg.seeds = {1, 2, 3};
  for (const auto& r : run_experiment(cfg)) {
    std::int64_t row_max = 0;
    for (const auto& row : r.rows) row_max = std::max(row_max, row.max_disc);
    EXPECT_LE(row_max, r.max_disc);
    EXPECT_EQ(r.rows.back().step, 5000u);
    EXPECT_EQ(r.rows.size(), 8u);
  }
}

TEST(Experiment, PairedSeedsShareArrivals) {
  // With identical arrivals, the final discrepancy parity is the same for
  // every algorithm: d_v = deg_in_stream(v) mod 2.
  for (auto algo : {Algorithm::greedy, Algorithm::random}) {
    ExperimentConfig cfg;
    cfg.algorithm = algo;
    cfg.graph = std::make_shared<Graph>(gen::grid(3, 3));
    cfg.horizon = 777;
    cfg.seeds = {42};
    auto r = run_experiment(cfg).front();
    std::vector<int> parity(9, 0);
    for (const auto& a : uniform_edge_stream(*cfg.graph, cfg.horizon, arrival_seed(42))) {
      parity[a.edge.u] ^= 1;
      parity[a.edge.v] ^= 1;
    }
    for (Vertex v = 0; v < 9; ++v) EXPECT_EQ(std::abs(r.final_disc[v]) % 2, parity[v]);
  }
}

TEST(Experiment, MaxDiscMonotoneInHorizon) {
  ExperimentConfig cfg;
  cfg.algorithm = Algorithm::greedy;
  cfg.graph = std::make_shared<Graph>(gen::cycle(9));
  cfg.seeds = {5};
  std::int64_t prev = 0;
  for (std::uint64_t T : {10, 100, 1000, 5000}) {
    cfg.horizon = T;
    auto r = run_experiment(cfg).front();
    EXPECT_GE(r.max_disc, prev);
    prev = r.max_disc;
  }
}

TEST(Experiment, WorkerCountDoesNotChangeResults) {
  ExperimentConfig cfg;
  cfg.algorithm = Algorithm::one_plus_beta;
  cfg.graph = std::make_shared<Graph>(gen::complete(10));
  cfg.horizon = 3000;
  cfg.seeds = {4, 5, 6, 7};
  cfg.workers = 1;
  auto a = run_experiment(cfg);
  cfg.workers = 3;
  auto b = run_experiment(cfg);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].seed, b[i].seed);
    EXPECT_EQ(a[i].final_disc, b[i].final_disc);
    EXPECT_EQ(rows_csv(a[i].rows), rows_csv(b[i].rows));
  }
}

TEST(Experiment, ComposedRunsOnBarbell) {
  ExperimentConfig cfg;
  cfg.algorithm = Algorithm::composed;
  cfg.graph = std::make_shared<Graph>(gen::barbell(10));
  cfg.horizon = 20000;
  cfg.seeds = {1};
  auto r = run_experiment(cfg).front();
  EXPECT_GT(r.max_disc, 0);
  EXPECT_EQ(r.effective_steps, 20000u);
}

TEST(Experiment, Checkpoints) {
  ExperimentConfig cfg;
  cfg.graph = std::make_shared<Graph>(gen::complete(5));
  cfg.horizon = 1000;
  cfg.checkpoints = {500, 10, 1000};
  auto r = run_experiment(cfg).front();
  ASSERT_EQ(r.checkpoint_max.size(), 3u);
  EXPECT_EQ(r.checkpoint_max[0].first, 10u);
  EXPECT_LE(r.checkpoint_max[1].second, r.checkpoint_max[2].second);
  EXPECT_EQ(r.checkpoint_max[2].second, r.max_disc);
  ASSERT_EQ(r.checkpoint_disc.size(), 3u);
  EXPECT_EQ(r.checkpoint_disc[2].second, r.final_max_disc);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(r.checkpoint_disc[i].first, r.checkpoint_max[i].first);
    EXPECT_LE(r.checkpoint_disc[i].second, r.checkpoint_max[i].second);
  }
}

TEST(Emit, EmptyRecordsGiveHeaderOnly) {
  auto p = scratch("empty.csv");
  write_rows_csv(p, {});
  EXPECT_EQ(slurp(p), "step,max_disc,argmax,potential\n");
  EXPECT_FALSE(std::filesystem::exists(p.string() + ".tmp"));
}

TEST(Emit, SameSeedByteIdentical) {
  ExperimentConfig cfg;
  cfg.graph = std::make_shared<Graph>(gen::grid(4, 4));
  cfg.horizon = 4000;
  cfg.seeds = {9};
  auto a = scratch("a.csv"), b = scratch("b.csv");
  write_rows_csv(a, run_experiment(cfg).front().rows);
  write_rows_csv(b, run_experiment(cfg).front().rows);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_GT(slurp(a).size(), 100u);
}

TEST(Emit, UnwritableSinkThrows) {
  EXPECT_THROW(write_rows_csv("/nonexistent-dir/x.csv", {}), std::runtime_error);
}

TEST(Emit, SeedPaths) {
  EXPECT_EQ(seed_csv_path("out/run.csv", 3, true), std::filesystem::path("out/run.csv"));
  EXPECT_EQ(seed_csv_path("out/run.csv", 3, false), std::filesystem::path("out/run.seed3.csv"));
}

TEST(Emit, OrientationLog) {
  const std::vector<OrientedEdge> log{{0, 1, 1}, {2, 1, 2}};
  auto s = orientation_csv(log, 3, 1.0, true);
  EXPECT_EQ(s.substr(0, s.find('\n')), "step,tail,head,max_disc,potential");
  EXPECT_NE(s.find("\n2,2,1,2,"), std::string::npos);
  auto t = orientation_csv(log, 3, 1.0, false);
  EXPECT_EQ(t.substr(0, t.find('\n')), "tail,head,max_disc,potential");
}
