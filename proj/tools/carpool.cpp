// Command-line front end: simulate, decompose, check-prefix, offline, drift.
//
// Exit codes: 0 ok, 1 usage or I/O error, 2 invariant violation detected.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "carpool/carpool.hpp"
#include "carpool/decomposition_json.hpp"

namespace {

using namespace carpool;

constexpr int kExitUsage = 1;
constexpr int kExitViolation = 2;

std::optional<double> parse_auto(const std::string& s, const char* name) {
  if (s == "auto") return std::nullopt;
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw std::invalid_argument(std::string("--") + name + ": expected a number or 'auto', got '" + s + "'");
}

/// "a,b,c" is a list, "a:b" the inclusive range, a bare "N" means seeds 1..N.
std::vector<std::uint64_t> parse_seeds(const std::string& s) {
  std::vector<std::uint64_t> out;
  if (s.find(',') != std::string::npos) {
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!item.empty()) out.push_back(std::stoull(item));
  } else if (auto colon = s.find(':'); colon != std::string::npos) {
    const auto lo = std::stoull(s.substr(0, colon)), hi = std::stoull(s.substr(colon + 1));
    for (auto x = lo; x <= hi; ++x) out.push_back(x);
  } else {
    const auto count = std::stoull(s);
    for (std::uint64_t x = 1; x <= count; ++x) out.push_back(x);
  }
  if (out.empty()) throw std::invalid_argument("--seeds: no seeds in '" + s + "'");
  return out;
}

/// Integers separated by whitespace or commas.
std::vector<std::int64_t> read_disc(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  for (auto& c : text)
    if (c == ',') c = ' ';
  std::istringstream ss(text);
  std::vector<std::int64_t> out;
  std::int64_t x;
  while (ss >> x) out.push_back(x);
  if (!ss.eof()) throw std::runtime_error(path + ": expected integers");
  return out;
}

nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return nlohmann::json::parse(in);
}

struct SimulateArgs {
  std::string algo = "greedy", graph, seeds = "1", lambda = "auto", beta = "auto", alpha = "auto", csv, decomposition;
  std::uint64_t steps = 0, record_every = 0;
  unsigned workers = 0;
};

int simulate(const SimulateArgs& a) {
  ExperimentConfig cfg;
  cfg.algorithm = algorithm_from_string(a.algo);
  cfg.graph = std::make_shared<const Graph>(read_edge_list(a.graph));
  cfg.horizon = a.steps;
  cfg.seeds = parse_seeds(a.seeds);
  cfg.lambda = parse_auto(a.lambda, "lambda");
  cfg.beta = parse_auto(a.beta, "beta");
  cfg.alpha = parse_auto(a.alpha, "alpha");
  cfg.record_every = a.record_every;
  cfg.workers = a.workers;
  if (!a.decomposition.empty())
    cfg.decomposition =
        std::make_shared<const Decomposition>(decomposition_from_json(load_json(a.decomposition), *cfg.graph));
  const auto records = run_experiment(cfg);
  const auto& p = records.front().params;
  std::printf("algo=%s n=%zu m=%zu T=%llu lambda=%.6g beta=%.6g alpha=%.6g record_every=%llu\n",
              to_string(cfg.algorithm), cfg.graph->num_vertices(), cfg.graph->num_edges(),
              static_cast<unsigned long long>(cfg.horizon), p.lambda, p.beta, p.alpha,
              static_cast<unsigned long long>(p.record_every));
  for (const auto& r : records) {
    std::printf("seed=%llu max_disc=%lld final_max_disc=%lld effective_steps=%llu wall_s=%.3f\n",
                static_cast<unsigned long long>(r.seed), static_cast<long long>(r.max_disc),
                static_cast<long long>(r.final_max_disc), static_cast<unsigned long long>(r.effective_steps),
                r.wall_seconds);
    if (!a.csv.empty()) write_rows_csv(seed_csv_path(a.csv, r.seed, records.size() == 1), r.rows);
  }
  return 0;
}

int decompose(const std::string& input, const std::string& alpha_arg, const std::string& out) {
  const Graph g = read_edge_list(input);
  const double alpha = parse_auto(alpha_arg, "alpha").value_or(default_alpha(g.num_vertices()));
  const Decomposition d = full_decomposition(g, alpha);
  const auto audit = audit_decomposition(g, d);
  std::printf("n=%zu m=%zu alpha=%.6g parts=%zu rounds=%u max_membership=%u exact_checked=%zu\n", d.n, d.m, d.alpha,
              d.parts.size(), d.rounds, d.max_membership(), audit.exact_checked);
  if (!out.empty()) write_file_atomic(out, to_json(d).dump(1) + "\n");
  for (const auto& v : audit.violations) std::fprintf(stderr, "violation: %s\n", v.c_str());
  return audit.ok() ? 0 : kExitViolation;
}

int check_prefix(const std::string& graph, double beta, const std::string& disc_path, bool strict) {
  const Graph g = read_edge_list(graph);
  std::vector<std::int64_t> disc;
  if (!disc_path.empty()) disc = read_disc(disc_path);
  const auto rep = good_prefix_check(g, beta, disc);
  std::printf("k,rho_high,lhs_high,rhs_high,margin_high,rho_low,lhs_low,rhs_low,margin_low\n");
  for (const auto& r : rep.rows)
    std::printf("%zu,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n", r.k, r.rho_high, r.lhs_high, r.rhs_high,
                r.margin_high, r.rho_low, r.lhs_low, r.rhs_low, r.margin_low);
  std::fprintf(stderr, "beta=%.6g min_margin=%.6g violations=%zu\n", beta, rep.min_margin, rep.violations);
  return strict && !rep.ok() ? kExitViolation : 0;
}

int offline(const std::string& graph, const std::string& out, double lambda) {
  const Graph g = read_edge_list(graph);
  const auto oriented = offline_orient(g);
  const auto disc = discrepancy_of(g.num_vertices(), oriented);
  std::int64_t worst = 0;
  for (auto d : disc) worst = std::max<std::int64_t>(worst, std::abs(d));
  const std::string csv = orientation_csv(oriented, g.num_vertices(), lambda, false);
  if (out.empty())
    std::fputs(csv.c_str(), stdout);
  else
    write_file_atomic(out, csv);
  std::fprintf(stderr, "n=%zu m=%zu max_disc=%lld\n", g.num_vertices(), g.num_edges(), static_cast<long long>(worst));
  return worst <= 1 ? 0 : kExitViolation;
}

int drift(const std::string& graph, double lambda, double beta, std::uint64_t samples, std::uint64_t seed,
          std::uint64_t horizon, const std::string& disc_path) {
  const Graph g = read_edge_list(graph);
  std::vector<std::int64_t> disc(g.num_vertices(), 0);
  if (!disc_path.empty()) disc = read_disc(disc_path);
  const auto rep = drift_estimate(disc, degree_weights(g), lambda, beta, samples, seed, horizon);
  std::printf("samples=%llu mean=%.9g sd=%.9g ci99=[%.9g, %.9g]\n", static_cast<unsigned long long>(rep.samples),
              rep.mean, rep.sd, rep.ci_low, rep.ci_high);
  std::printf("log_phi=%.6g limit=%.6g phi_guard=%d gamma_eff=%.6g gamma_required=%.6g gamma_guard=%d beta_guard=%d %s\n",
              rep.log_phi, rep.log_phi_limit, rep.phi_guard, rep.gamma_eff, rep.gamma_required, rep.gamma_guard,
              rep.beta_guard, rep.guarded() ? "guarded" : "unguarded");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online edge orientation under stochastic arrivals"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* s = app.add_subcommand("simulate", "run an online orientation process");
  s->add_option("--algo", sim.algo, "greedy | random | one-plus-beta | composed")
      ->check(CLI::IsMember({"greedy", "random", "one-plus-beta", "composed"}));
  s->add_option("--graph", sim.graph, "edge-list file")->required();
  s->add_option("--steps", sim.steps, "horizon T")->required()->check(CLI::PositiveNumber);
  s->add_option("--seeds", sim.seeds, "list a,b,c | range a:b | count N (seeds 1..N)");
  s->add_option("--lambda", sim.lambda, "potential parameter or 'auto'");
  s->add_option("--beta", sim.beta, "greedy probability or 'auto'");
  s->add_option("--alpha", sim.alpha, "decomposition conductance target or 'auto'");
  s->add_option("--csv", sim.csv, "time-series output (one file per seed when several)");
  s->add_option("--record-every", sim.record_every, "row stride (default: about 1000 rows)");
  s->add_option("--decomposition", sim.decomposition, "decomposition JSON for composed mode");
  s->add_option("--workers", sim.workers, "worker threads (default: hardware)");

  std::string dec_input, dec_alpha = "auto", dec_out;
  auto* d = app.add_subcommand("decompose", "weakly-regular expander decomposition");
  d->add_option("--input", dec_input, "edge-list file")->required();
  d->add_option("--alpha", dec_alpha, "conductance target or 'auto'");
  d->add_option("--out", dec_out, "JSON report path");

  std::string cp_graph, cp_disc;
  double cp_beta = 0.0;
  bool cp_strict = false;
  auto* c = app.add_subcommand("check-prefix", "exact prefix inequality check");
  c->add_option("--graph", cp_graph, "edge-list file")->required();
  c->add_option("--beta", cp_beta, "beta")->required()->check(CLI::Range(0.0, 1.0));
  c->add_option("--disc", cp_disc, "discrepancy vector file (default all zero)");
  c->add_flag("--strict", cp_strict, "exit 2 when any margin is negative");

  std::string off_graph, off_out;
  double off_lambda = 0.5;
  auto* o = app.add_subcommand("offline", "offline orientation with discrepancy at most 1");
  o->add_option("--graph", off_graph, "edge-list file")->required();
  o->add_option("--out", off_out, "CSV output (default stdout)");
  o->add_option("--lambda", off_lambda, "lambda for the potential column")->check(CLI::PositiveNumber);

  std::string dr_graph, dr_disc;
  double dr_lambda = 0.0, dr_beta = 0.0;
  std::uint64_t dr_samples = 100000, dr_seed = 1, dr_horizon = 1;
  auto* r = app.add_subcommand("drift", "Monte Carlo one-step potential drift");
  r->add_option("--graph", dr_graph, "edge-list file (degrees give the weights)")->required();
  r->add_option("--lambda", dr_lambda, "lambda")->required()->check(CLI::PositiveNumber);
  r->add_option("--beta", dr_beta, "beta")->required()->check(CLI::Range(0.0, 1.0));
  r->add_option("--samples", dr_samples, "sample count")->check(CLI::Range(2ull, ~0ull));
  r->add_option("--seed", dr_seed, "seed");
  r->add_option("--horizon", dr_horizon, "T used by the potential guard");
  r->add_option("--disc", dr_disc, "discrepancy vector file (default all zero)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*s) return simulate(sim);
    if (*d) return decompose(dec_input, dec_alpha, dec_out);
    if (*c) return check_prefix(cp_graph, cp_beta, cp_disc, cp_strict);
    if (*o) return offline(off_graph, off_out, off_lambda);
    if (*r) return drift(dr_graph, dr_lambda, dr_beta, dr_samples, dr_seed, dr_horizon, dr_disc);
  } catch (const InvariantViolation& e) {
    std::fprintf(stderr, "invariant violation: %s\n", e.what());
    return kExitViolation;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}
