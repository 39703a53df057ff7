//
// seedmatch - Copyright 2026 The seedmatch Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: generate, match, simulate, oracle, bounds.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "seedmatch.hpp"

namespace fs = std::filesystem;
using namespace seedmatch;

namespace {

enum ExitCode : int { kOk = 0, kParameter = 2, kFormat = 3, kResource = 4 };

GraphFormat format_or_auto(const std::string& name, const fs::path& path) {
  return name == "auto" ? graph_format_for(path) : parse_graph_format(name);
}

struct GenerateArgs {
  std::size_t n = 100;
  double p = 0.5;
  double rho = 1.0;
  std::uint64_t seed = 0;
  std::string out1, out2, truth, format = "auto";
  bool hide = false;
};

int run_generate(const GenerateArgs& a) {
  auto [g1, g2] = generate_correlated_pair({a.n, a.p, a.rho, a.seed});
  Permutation latent = Permutation::identity(a.n);
  if (a.hide) {
    SplitMix64 rng(hash64({a.seed, 0x68696465}));
    latent = Permutation(random_indices(a.n, rng));
    g2 = permute_vertices(g2, latent);
  }
  write_graph(g1, a.out1, format_or_auto(a.format, a.out1));
  write_graph(g2, a.out2, format_or_auto(a.format, a.out2));
  if (!a.truth.empty()) {
    std::string text = "v_in_g1,v_in_g2\n";
    for (std::size_t v = 0; v < a.n; ++v) text += std::to_string(v) + ',' + std::to_string(latent[v]) + '\n';
    io::write_file(a.truth, text);
  }
  std::cout << "rng_algorithm=" << kRngAlgorithm << "\nedges_g1=" << g1.edge_count()
            << "\nedges_g2=" << g2.edge_count() << '\n';
  return kOk;
}

struct MatchArgs {
  std::string method = "sgm";
  std::string g1, g2, seeds, out, format = "auto";
  std::size_t max_iters = 20;
  double tol = 1e-6;
};

int run_match(const MatchArgs& a) {
  const Method method = parse_method(a.method);
  const Graph g1 = load_graph(a.g1, format_or_auto(a.format, a.g1));
  const Graph g2 = load_graph(a.g2, format_or_auto(a.format, a.g2));
  std::vector<SeedPair> seeds;
  if (!a.seeds.empty()) seeds = load_seeds(a.seeds);
  if (method == Method::faq && !seeds.empty()) throw ParameterError("match: faq takes no seeds");
  const CanonicalPair canon = canonicalize(g1, g2, seeds);

  SgmConfig cfg;
  cfg.max_iters = a.max_iters;
  cfg.tol = a.tol;
  const MatchResult r = method == Method::rgm ? rgm_match(canon.g1, canon.g2, canon.seeding)
                                              : sgm_match(canon.g1, canon.g2, canon.seeding, cfg);
  const auto full = lift_matching(canon, r.permutation);

  std::vector<bool> seeded(full.size(), false);
  for (const SeedPair& sp : seeds) seeded[sp.g1] = true;
  std::string text = "vertex_g1,vertex_g2,seed\n";
  for (std::size_t v = 0; v < full.size(); ++v)
    text += std::to_string(v) + ',' + std::to_string(full[v]) + ',' + (seeded[v] ? "1" : "0") + '\n';
  if (a.out.empty())
    std::cout << text;
  else
    io::write_file(a.out, text);

  std::cerr << "method=" << method_name(method) << " seeds=" << canon.seeding.s << " objective="
            << io::format_real(r.objective) << " iterations=" << r.iterations
            << " converged=" << (r.converged ? "true" : "false") << '\n';
  return kOk;
}

struct SimulateArgs {
  std::string config, out, json, matches, plot, heatmap, seeds_file;
  std::size_t threads = 1;
  bool timing = false;
};

int run_simulate(const SimulateArgs& a) {
  ExperimentConfig cfg = load_experiment_config(a.config);
  if (!a.seeds_file.empty()) {
    std::vector<std::size_t> fixed;
    for (const SeedPair& sp : load_seeds(a.seeds_file)) {
      if (sp.g1 != sp.g2)
        throw ParameterError("simulate: seed pairs must name the same vertex in both graphs");
      fixed.push_back(sp.g1);
    }
    cfg.fixed_seeds = std::move(fixed);
  }
  RunOptions opts;
  opts.threads = a.threads;
  opts.record_timing = a.timing;
  opts.keep_matches = !a.matches.empty() || !a.heatmap.empty();

  const ExperimentOutput out = run_experiment_detailed(cfg, opts);
  for (const Cell& c : out.skipped)
    std::cerr << "skipped: " << method_name(c.method) << " at rho=" << cfg.rho_grid[c.rho_index]
              << " s=0 (rgm requires at least one seed)\n";

  write_results_csv(out.results, a.out);
  if (!a.json.empty()) io::write_file(a.json, format_results_json(out.results, cfg, out.skipped));
  if (!a.matches.empty()) {
    // One record file per cell: <stem>.<method>.rho<index>.s<s>.csv
    const fs::path base(a.matches);
    for (std::size_t ci = 0; ci < out.cells.size(); ++ci) {
      const Cell& c = out.cells[ci];
      fs::path file = base;
      file += "." + std::string(method_name(c.method)) + ".rho" + std::to_string(c.rho_index) + ".s" +
              std::to_string(c.s) + ".csv";
      io::write_file(file, format_match_records(out.outcomes[ci]));
    }
  }
  if (!a.plot.empty()) io::write_file(a.plot, render_accuracy_svg(out.results));
  if (!a.heatmap.empty()) {
    std::vector<MatchRecord> records;
    for (const auto& cell : out.outcomes)
      for (const auto& o : cell) records.push_back(o.record);
    io::write_file(a.heatmap, render_heatmap_svg(aggregate_match_frequency(records)));
  }
  return kOk;
}

struct OracleArgs {
  std::string mode = "gm";
  std::string g1, g2, format = "auto";
  std::size_t s = 0;
  std::size_t n = 7;
  double p = 0.5;
  double rho = 0.5;
  std::uint64_t seed = 0;
};

int run_oracle(const OracleArgs& a) {
  Graph g1, g2;
  if (!a.g1.empty() || !a.g2.empty()) {
    if (a.g1.empty() || a.g2.empty()) throw ParameterError("oracle: give both --g1 and --g2");
    g1 = load_graph(a.g1, format_or_auto(a.format, a.g1));
    g2 = load_graph(a.g2, format_or_auto(a.format, a.g2));
  } else {
    std::tie(g1, g2) = generate_correlated_pair({a.n, a.p, a.rho, a.seed});
  }
  OracleReport r;
  if (a.mode == "gm") {
    r = brute_force_gm(g1, g2);
  } else if (a.mode == "rgm") {
    if (a.s > g1.order()) throw ParameterError("oracle: more seeds than vertices");
    r = brute_force_rgm(g1, g2, Seeding{a.s, g1.order() - a.s});
  } else {
    throw ParameterError("oracle: --mode must be gm or rgm");
  }
  nlohmann::ordered_json j;
  j["mode"] = a.mode;
  j["n"] = g1.order();
  if (a.mode == "rgm") j["s"] = a.s;
  j["bijections"] = r.bijections;
  j["optimum"] = r.optimum;
  j["identity_value"] = r.identity_value;
  j["argmin_count"] = r.argmin_count;
  j["identity_is_unique_argmin"] = r.identity_is_unique_argmin;
  j["better_than_identity"] = r.better_than_identity;
  std::cout << j.dump(2) << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Seeded graph matching for correlated Erdős–Rényi graphs"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Draw a correlated Erdős–Rényi pair and write it to files");
  generate->add_option("--n", gen.n, "Vertex count")->required();
  generate->add_option("--p", gen.p, "Edge probability in (0,1)")->required();
  generate->add_option("--rho", gen.rho, "Edge correlation in [0,1]")->required();
  generate->add_option("--seed", gen.seed, "64-bit RNG seed");
  generate->add_option("--out1", gen.out1, "First graph file")->required();
  generate->add_option("--out2", gen.out2, "Second graph file")->required();
  generate->add_option("--format", gen.format, "dense, edges or auto (by extension)");
  generate->add_flag("--hide", gen.hide, "Randomly relabel the second graph");
  generate->add_option("--truth", gen.truth, "Write the latent alignment as a seeds-style CSV");

  MatchArgs match;
  auto* matchc = app.add_subcommand("match", "Match one pair of graphs");
  matchc->add_option("--method", match.method, "sgm, rgm or faq");
  matchc->add_option("--g1", match.g1, "First graph file")->required();
  matchc->add_option("--g2", match.g2, "Second graph file")->required();
  matchc->add_option("--seeds", match.seeds, "Seeds CSV (v_in_g1,v_in_g2 per line)");
  matchc->add_option("--max-iters", match.max_iters, "Frank-Wolfe iteration cap");
  matchc->add_option("--tol", match.tol, "Stop when the iterate moves less than this (Frobenius)");
  matchc->add_option("--format", match.format, "dense, edges or auto (by extension)");
  matchc->add_option("--out", match.out, "Write the matching CSV here instead of stdout");

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Run a Monte Carlo experiment grid");
  simulate->add_option("--config", sim.config, "key=value experiment config")->required();
  simulate->add_option("--out", sim.out, "Results CSV")->required();
  simulate->add_option("--json", sim.json, "Results JSON with config and provenance");
  simulate->add_option("--emit-matches", sim.matches, "Per-match record CSV prefix (one file per cell)");
  simulate->add_option("--plot", sim.plot, "Accuracy-versus-seeds SVG");
  simulate->add_option("--heatmap", sim.heatmap, "Match-frequency heat map SVG over all runs");
  simulate->add_option("--seeds-file", sim.seeds_file, "Fixed seed vertices instead of random draws");
  simulate->add_option("--threads", sim.threads, "Worker threads");
  simulate->add_flag("--timing", sim.timing, "Record wall-clock time in wall_ms_total");

  OracleArgs oracle;
  auto* oraclec = app.add_subcommand("oracle", "Exhaustive-enumeration reports (n or m at most 9)");
  oraclec->add_option("--mode", oracle.mode, "gm or rgm");
  oraclec->add_option("--g1", oracle.g1, "First graph file (latent alignment = identity)");
  oraclec->add_option("--g2", oracle.g2, "Second graph file");
  oraclec->add_option("--format", oracle.format, "dense, edges or auto");
  oraclec->add_option("--s", oracle.s, "Seeds (prefix 0..s-1) for rgm mode");
  oraclec->add_option("--n", oracle.n, "Vertex count when generating");
  oraclec->add_option("--p", oracle.p, "Edge probability when generating");
  oraclec->add_option("--rho", oracle.rho, "Correlation when generating");
  oraclec->add_option("--seed", oracle.seed, "RNG seed when generating");

  auto* bounds = app.add_subcommand("bounds", "Evaluate KL divergence, binomial tail bound, seed constants");
  bounds->require_subcommand(1);
  double kl_r = 0, kl_q = 0;
  auto* kl = bounds->add_subcommand("kl", "H(r,q) for Bernoulli distributions");
  kl->add_option("--r", kl_r)->required();
  kl->add_option("--q", kl_q)->required();
  std::uint64_t tail_eta = 0;
  double tail_q = 0, tail_r = 0;
  auto* tail = bounds->add_subcommand("tail", "Binomial tail lower bound next to the exact tail");
  tail->add_option("--eta", tail_eta)->required();
  tail->add_option("--q", tail_q)->required();
  tail->add_option("--r", tail_r)->required();
  double c_p = 0, c_rho = 0, c_eps = 1.0;
  auto* consts = bounds->add_subcommand("seeds", "Seed-threshold constants c5 (lower) and c6 (upper)");
  consts->add_option("--p", c_p)->required();
  consts->add_option("--rho", c_rho)->required();
  consts->add_option("--eps", c_eps, "In (0,2)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParameter;
  }

  try {
    if (*generate) return run_generate(gen);
    if (*matchc) return run_match(match);
    if (*simulate) return run_simulate(sim);
    if (*oraclec) return run_oracle(oracle);
    if (*kl) {
      std::cout << "H=" << io::format_real(kl_divergence_bernoulli(kl_r, kl_q)) << '\n';
    } else if (*tail) {
      const double bound = binomial_tail_lower_bound(tail_eta, tail_q, tail_r);
      const auto k_min = static_cast<std::uint64_t>(std::ceil(static_cast<double>(tail_eta) * tail_r));
      std::cout << "bound=" << io::format_real(bound) << "\nexact_tail="
                << io::format_real(binomial_upper_tail(tail_eta, tail_q, k_min)) << "\nk_min=" << k_min << '\n';
    } else if (*consts) {
      const auto c = seed_threshold_constants(c_p, c_rho, c_eps);
      std::cout << "c5_lower=" << io::format_real(c.c5_lower) << "\nc6_upper=" << io::format_real(c.c6_upper)
                << '\n';
    }
    return kOk;
  } catch (const ResourceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kResource;
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFormat;
  } catch (const ParameterError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kParameter;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
