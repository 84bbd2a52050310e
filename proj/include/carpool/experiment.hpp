#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "carpool/arrivals.hpp"
#include "carpool/composed.hpp"
#include "carpool/decomposition.hpp"
#include "carpool/orientation.hpp"
#include "carpool/rng.hpp"

namespace carpool {

enum class Algorithm { greedy, random, one_plus_beta, composed };

inline const char* to_string(Algorithm a) {
  switch (a) {
    case Algorithm::greedy: return "greedy";
    case Algorithm::random: return "random";
    case Algorithm::one_plus_beta: return "one-plus-beta";
    case Algorithm::composed: return "composed";
  }
  return "?";
}

inline Algorithm algorithm_from_string(const std::string& s) {
  if (s == "greedy") return Algorithm::greedy;
  if (s == "random") return Algorithm::random;
  if (s == "one-plus-beta") return Algorithm::one_plus_beta;
  if (s == "composed") return Algorithm::composed;
  throw std::invalid_argument("unknown algorithm '" + s + "'");
}

/// 1 / ceil(log2(n T))^4, capped at 1/2.
inline double default_lambda(std::size_t n, std::uint64_t horizon) {
  const double nt = std::max(2.0, static_cast<double>(n) * static_cast<double>(horizon));
  const double lg = std::ceil(std::log2(nt));
  return std::min(0.5, 1.0 / std::pow(lg, 4.0));
}

/// Smallest power of two >= T / 1000 (at least 1): about 1000 rows per run.
inline std::uint64_t default_record_every(std::uint64_t horizon) {
  std::uint64_t stride = 1;
  while (stride * 1000 < horizon) stride *= 2;
  return stride;
}

struct ExperimentConfig {
  Algorithm algorithm = Algorithm::greedy;
  std::shared_ptr<const Graph> graph;
  std::uint64_t horizon = 0;
  std::vector<std::uint64_t> seeds{1};
  std::optional<double> lambda;  // nullopt: auto
  std::optional<double> beta;    // nullopt: auto (= alpha)
  std::optional<double> alpha;   // nullopt: auto (default_alpha(n))
  std::uint64_t record_every = 0;  // 0: default_record_every(horizon)
  std::vector<std::uint64_t> checkpoints;  // steps at which max |d| and the running max are captured
  std::shared_ptr<const Decomposition> decomposition;  // composed mode; built on demand when null
  unsigned workers = 0;  // 0: hardware concurrency
};

/// Parameters after auto-resolution.
struct ResolvedParams {
  double lambda = 0.0;
  double beta = 0.0;
  double alpha = 0.0;
  std::uint64_t record_every = 1;
};

inline ResolvedParams resolve(const ExperimentConfig& cfg) {
  if (!cfg.graph) throw std::invalid_argument("experiment: no graph");
  if (cfg.horizon < 1) throw std::invalid_argument("experiment: horizon must be >= 1");
  if (cfg.seeds.empty()) throw std::invalid_argument("experiment: no seeds");
  const std::size_t n = cfg.graph->num_vertices();
  ResolvedParams p;
  p.alpha = cfg.alpha.value_or(cfg.decomposition ? cfg.decomposition->alpha : default_alpha(n));
  p.beta = cfg.beta.value_or(p.alpha);
  p.lambda = cfg.lambda.value_or(default_lambda(n, cfg.horizon));
  // Auto lambda also respects beta >= 6 lambda where beta is used.
  if (!cfg.lambda && cfg.algorithm == Algorithm::one_plus_beta && p.beta > 0.0)
    p.lambda = std::min(p.lambda, p.beta / 6.0);
  p.record_every = cfg.record_every ? cfg.record_every : default_record_every(cfg.horizon);
  if (!(p.lambda > 0.0)) throw std::invalid_argument("experiment: lambda must be positive");
  if (!(p.beta >= 0.0 && p.beta <= 1.0)) throw std::invalid_argument("experiment: beta outside [0,1]");
  if (!(p.alpha > 0.0 && p.alpha <= 1.0)) throw std::invalid_argument("experiment: alpha outside (0,1]");
  return p;
}

struct RunRow {
  std::uint64_t step = 0;
  std::int64_t max_disc = 0;
  Vertex argmax = 0;
  double potential = 0.0;
  std::int64_t running_max = 0;  // max over all steps so far (not written to CSV)
};

struct RunRecord {
  std::uint64_t seed = 0;
  std::vector<RunRow> rows;
  std::int64_t max_disc = 0;        // max over every step, not only recorded rows
  std::int64_t final_max_disc = 0;
  std::vector<std::int64_t> final_disc;
  std::vector<std::pair<std::uint64_t, std::int64_t>> checkpoint_max;   // (step, running max)
  std::vector<std::pair<std::uint64_t, std::int64_t>> checkpoint_disc;  // (step, max |d| at that step)
  std::uint64_t effective_steps = 0;  // arrivals that changed the state
  double wall_seconds = 0.0;
  ResolvedParams params;
};

namespace detail {

inline void check_zero_sum(const OrientationState& s) {
  std::int64_t sum = 0;
  for (auto d : s.discrepancies()) sum += d;
  if (sum != 0)
    throw InvariantViolation("discrepancies sum to " + std::to_string(sum) + " at step " + std::to_string(s.step()));
}

}  // namespace detail

/// One seed of an experiment. Arrivals and algorithm coins come from separate
/// streams derived from the seed, so algorithms run with the same seed see
/// the same arrivals.
inline RunRecord run_seed(const ExperimentConfig& cfg, const ResolvedParams& p, std::uint64_t seed,
                          const Decomposition* decomposition = nullptr) {
  const auto t0 = std::chrono::steady_clock::now();
  const Graph& g = *cfg.graph;
  RunRecord rec;
  rec.seed = seed;
  rec.params = p;
  Coins coins(coin_seed(seed));

  std::optional<ComposedOrienter> composed;
  std::optional<OrientationState> plain;
  if (cfg.algorithm == Algorithm::composed) {
    if (!decomposition) throw std::invalid_argument("experiment: composed mode needs a decomposition");
    composed.emplace(*decomposition, p.lambda);
  } else {
    plain.emplace(g.num_vertices(), p.lambda);
  }
  const OrientationState& state = composed ? composed->global() : *plain;

  std::optional<UniformEdgeStream> edges;
  std::optional<ProductPairStream> pairs;
  std::vector<std::uint64_t> weights;
  if (cfg.algorithm == Algorithm::one_plus_beta) {
    weights = degree_weights(g);
    pairs.emplace(weights, cfg.horizon, arrival_seed(seed));
  } else {
    edges.emplace(g, cfg.horizon, arrival_seed(seed));
  }

  auto checkpoints = cfg.checkpoints;
  std::sort(checkpoints.begin(), checkpoints.end());
  std::size_t next_checkpoint = 0;
  std::int64_t running = 0;
  auto record_row = [&](std::uint64_t t) {
    detail::check_zero_sum(state);
    if (composed && !composed->additive())
      throw InvariantViolation("composed: global discrepancy differs from the sum over parts at step " +
                               std::to_string(t));
    rec.rows.push_back({t, state.max_abs(), state.argmax_abs(), state.potential(), running});
  };

  for (std::uint64_t t = 1; t <= cfg.horizon; ++t) {
    const std::int64_t before = state.max_abs();
    const std::uint64_t applied_before = state.step();
    switch (cfg.algorithm) {
      case Algorithm::greedy: greedy_step(*plain, edges->next().edge, coins); break;
      case Algorithm::random: random_step(*plain, edges->next().edge, coins); break;
      case Algorithm::one_plus_beta: one_plus_beta_step(*plain, pairs->next(), p.beta, coins); break;
      case Algorithm::composed: composed->step(edges->next().id, coins); break;
    }
    rec.effective_steps += state.step() - applied_before;
    if (state.max_abs() > before + 1)
      throw InvariantViolation("max discrepancy grew by more than 1 at step " + std::to_string(t));
    running = std::max(running, state.max_abs());
    for (; next_checkpoint < checkpoints.size() && checkpoints[next_checkpoint] <= t; ++next_checkpoint) {
      rec.checkpoint_max.push_back({checkpoints[next_checkpoint], running});
      rec.checkpoint_disc.push_back({checkpoints[next_checkpoint], state.max_abs()});
    }
    if (t % p.record_every == 0 || t == cfg.horizon) record_row(t);
  }
  if (composed) {
    const auto budget = composed->part_budgets();
    for (Vertex v = 0; v < budget.size(); ++v)
      if (std::abs(state.disc(v)) > budget[v])
        throw InvariantViolation("composed: |d_" + std::to_string(v) + "| exceeds the sum of its part maxima");
  }
  rec.max_disc = running;
  rec.final_max_disc = state.max_abs();
  rec.final_disc.assign(state.discrepancies().begin(), state.discrepancies().end());
  rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

/// Runs every seed of the config, fanning seeds out to worker threads; the
/// result is in seed order and does not depend on the worker count.
inline std::vector<RunRecord> run_experiment(const ExperimentConfig& cfg) {
  const ResolvedParams p = resolve(cfg);
  std::shared_ptr<const Decomposition> decomposition = cfg.decomposition;
  if (cfg.algorithm == Algorithm::composed && !decomposition)
    decomposition = std::make_shared<const Decomposition>(full_decomposition(*cfg.graph, p.alpha));
  if (decomposition && (decomposition->n != cfg.graph->num_vertices() || decomposition->m != cfg.graph->num_edges()))
    throw std::invalid_argument("experiment: decomposition does not match the graph");

  unsigned workers = cfg.workers ? cfg.workers : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(cfg.seeds.size()));
  std::vector<RunRecord> out(cfg.seeds.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < cfg.seeds.size(); ++i) out[i] = run_seed(cfg, p, cfg.seeds[i], decomposition.get());
    return out;
  }
  for (std::size_t start = 0; start < cfg.seeds.size(); start += workers) {
    std::vector<std::future<RunRecord>> batch;
    const std::size_t stop = std::min(cfg.seeds.size(), start + workers);
    for (std::size_t i = start; i < stop; ++i)
      batch.push_back(std::async(std::launch::async, [&, i] { return run_seed(cfg, p, cfg.seeds[i], decomposition.get()); }));
    for (std::size_t i = start; i < stop; ++i) out[i] = batch[i - start].get();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Output
// ---------------------------------------------------------------------------

inline std::string format_double(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

/// Writes `content` to `path` through a temporary sibling and a rename, so a
/// failed write never leaves a partial file behind.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) {
      out.close();
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw std::runtime_error("write failed: " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw std::runtime_error("cannot rename into " + path.string());
  }
}

inline std::string rows_csv(const std::vector<RunRow>& rows) {
  std::string s = "step,max_disc,argmax,potential\n";
  for (const auto& r : rows)
    s += std::to_string(r.step) + ',' + std::to_string(r.max_disc) + ',' + std::to_string(r.argmax) + ',' +
         format_double(r.potential) + '\n';
  return s;
}

inline void write_rows_csv(const std::filesystem::path& path, const std::vector<RunRow>& rows) {
  write_file_atomic(path, rows_csv(rows));
}

/// CSV path for one seed: the path itself for a single-seed run, otherwise
/// "<stem>.seed<seed><ext>" next to it.
inline std::filesystem::path seed_csv_path(const std::filesystem::path& base, std::uint64_t seed, bool single) {
  if (single) return base;
  auto out = base;
  out.replace_filename(base.stem().string() + ".seed" + std::to_string(seed) + base.extension().string());
  return out;
}

inline std::string orientation_csv(const std::vector<OrientedEdge>& oriented, std::size_t n, double lambda,
                                   bool with_step) {
  OrientationState state(n, lambda);
  std::string s = with_step ? "step,tail,head,max_disc,potential\n" : "tail,head,max_disc,potential\n";
  for (const auto& e : oriented) {
    state.apply(e.tail, e.head);
    if (with_step) s += std::to_string(e.step) + ',';
    s += std::to_string(e.tail) + ',' + std::to_string(e.head) + ',' + std::to_string(state.max_abs()) + ',' +
         format_double(state.potential()) + '\n';
  }
  return s;
}

}  // namespace carpool
