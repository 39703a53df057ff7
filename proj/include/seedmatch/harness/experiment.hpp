//
// seedmatch - Copyright 2026 The seedmatch Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "seedmatch/errors.hpp"
#include "seedmatch/graph.hpp"
#include "seedmatch/harness/canonical.hpp"
#include "seedmatch/matchers.hpp"
#include "seedmatch/rng.hpp"

namespace seedmatch {

enum class Method { sgm = 0, rgm = 1, faq = 2 };

inline std::string_view method_name(Method m) {
  switch (m) {
    case Method::sgm: return "sgm";
    case Method::rgm: return "rgm";
    case Method::faq: return "faq";
  }
  return "?";
}

inline Method parse_method(std::string_view name) {
  if (name == "sgm") return Method::sgm;
  if (name == "rgm") return Method::rgm;
  if (name == "faq") return Method::faq;
  throw ParameterError("unknown method '" + std::string(name) + "' (expected sgm, rgm or faq)");
}

struct ExperimentConfig {
  std::size_t n = 300;
  double p = 0.5;
  std::vector<double> rho_grid;
  std::vector<std::size_t> seed_grid;
  std::size_t replicates = 100;
  std::vector<Method> methods;
  std::uint64_t master_seed = 0;
  SgmConfig sgm;
  // When set, every replicate uses these seed vertices instead of a random
  // draw, and the seed grid is the single value fixed_seeds->size().
  std::optional<std::vector<std::size_t>> fixed_seeds;
  // Free text copied into JSON metadata.
  std::string note;

  std::vector<std::size_t> effective_seed_grid() const {
    if (fixed_seeds) return {fixed_seeds->size()};
    return seed_grid;
  }

  void validate() const {
    CorrelatedPairSpec{n, p, 0.0, 0}.validate();
    if (n < 2) throw ParameterError("experiment: n must be at least 2");
    if (rho_grid.empty()) throw ParameterError("experiment: rho grid is empty");
    for (const double rho : rho_grid) CorrelatedPairSpec{n, p, rho, 0}.validate();
    if (replicates < 1) throw ParameterError("experiment: replicates must be positive");
    if (methods.empty()) throw ParameterError("experiment: no methods selected");
    const bool seeded_method =
        std::any_of(methods.begin(), methods.end(), [](Method m) { return m != Method::faq; });
    const auto grid = effective_seed_grid();
    if (seeded_method && grid.empty()) throw ParameterError("experiment: seed grid is empty");
    for (const std::size_t s : grid)
      if (s > n - 1) throw ParameterError("experiment: seed count " + std::to_string(s) + " exceeds n-1");
    if (fixed_seeds) {
      std::vector<bool> seen(n, false);
      for (const std::size_t v : *fixed_seeds) {
        if (v >= n || seen[v]) throw ParameterError("experiment: fixed seed list has an invalid or repeated vertex");
        seen[v] = true;
      }
    }
    sgm.validate();
  }
};

// One (method, rho, s) cell of the experiment grid.
struct Cell {
  Method method = Method::sgm;
  std::size_t rho_index = 0;
  std::size_t s = 0;

  friend bool operator==(const Cell&, const Cell&) = default;
};

struct CellResult {
  Method method = Method::sgm;
  std::size_t n = 0;
  double p = 0.0;
  double rho = 0.0;
  std::size_t s = 0;
  std::size_t replicates = 0;
  double mean_accuracy = 0.0;
  double std_error = 0.0;
  double mean_iterations = 0.0;
  std::uint64_t wall_ms_total = 0;
};

// Vertex-level outcome of one run, in latent labels: matching[v] is the
// latent vertex of the second graph matched to vertex v of the first.
struct MatchRecord {
  std::vector<std::size_t> matching;
  std::vector<std::size_t> seeds;
};

struct ReplicateOutcome {
  bool skipped = false;
  double accuracy = 0.0;
  std::size_t iterations = 0;
  double objective = 0.0;
  std::vector<double> objective_trace;
  MatchRecord record;
  double wall_ms = 0.0;
};

// Cells in output order: methods as configured, then rho, then s. FAQ runs a
// single s = 0 cell per rho; RGM at s = 0 is reported through `skipped`.
inline std::vector<Cell> experiment_cells(const ExperimentConfig& cfg, std::vector<Cell>* skipped = nullptr) {
  std::vector<Cell> cells;
  const auto grid = cfg.effective_seed_grid();
  for (const Method m : cfg.methods) {
    for (std::size_t r = 0; r < cfg.rho_grid.size(); ++r) {
      if (m == Method::faq) {
        cells.push_back({m, r, 0});
        continue;
      }
      for (const std::size_t s : grid) {
        if (m == Method::rgm && s == 0) {
          if (skipped) skipped->push_back({m, r, s});
          continue;
        }
        cells.push_back({m, r, s});
      }
    }
  }
  return cells;
}

// Per-replicate stream seed: a pure function of the cell coordinates.
inline std::uint64_t replicate_seed(std::uint64_t master_seed, std::size_t rho_index, std::size_t s,
                                    Method method, std::size_t replicate_index) {
  return hash64({master_seed, rho_index, s, static_cast<std::uint64_t>(method), replicate_index});
}

// Generates a correlated pair, draws s seeds uniformly from the n vertices,
// hides the latent alignment by randomly relabeling the second graph's
// nonseeds, runs the method and scores nonseed accuracy.
inline ReplicateOutcome run_replicate(const ExperimentConfig& cfg, std::size_t rho_index, std::size_t s,
                                      Method method, std::size_t replicate_index) {
  if (rho_index >= cfg.rho_grid.size()) throw ParameterError("run_replicate: rho index out of range");
  if (s > cfg.n - 1) throw ParameterError("run_replicate: too many seeds");
  if (method == Method::faq && s != 0) throw ParameterError("run_replicate: faq runs without seeds");
  if (cfg.fixed_seeds && s != 0 && s != cfg.fixed_seeds->size())
    throw ParameterError("run_replicate: s differs from the fixed seed list");

  ReplicateOutcome out;
  if (method == Method::rgm && s == 0) {
    out.skipped = true;
    return out;
  }

  const auto start = std::chrono::steady_clock::now();
  SplitMix64 stream(replicate_seed(cfg.master_seed, rho_index, s, method, replicate_index));
  const std::uint64_t graph_seed = stream();
  SplitMix64 selection(stream());
  SplitMix64 hiding(stream());

  const std::size_t n = cfg.n;
  auto [g1, g2] = generate_correlated_pair({n, cfg.p, cfg.rho_grid[rho_index], graph_seed});

  std::vector<std::size_t> seeds;
  if (s > 0) {
    if (cfg.fixed_seeds) {
      seeds = *cfg.fixed_seeds;
    } else {
      const auto order = random_indices(n, selection);
      seeds.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(s));
    }
  }

  // hide[v]: label of latent vertex v in the observed second graph. Seeds
  // keep their labels; nonseeds are shuffled among themselves.
  std::vector<bool> is_seed(n, false);
  for (const std::size_t v : seeds) is_seed[v] = true;
  std::vector<std::size_t> nonseeds;
  for (std::size_t v = 0; v < n; ++v)
    if (!is_seed[v]) nonseeds.push_back(v);
  std::vector<std::size_t> targets = nonseeds;
  shuffle(std::span<std::size_t>(targets), hiding);
  std::vector<std::size_t> hide_map(n);
  for (const std::size_t v : seeds) hide_map[v] = v;
  for (std::size_t k = 0; k < nonseeds.size(); ++k) hide_map[nonseeds[k]] = targets[k];
  const Permutation hide(std::move(hide_map));
  const Graph observed2 = permute_vertices(g2, hide);

  std::vector<SeedPair> pairs;
  for (const std::size_t v : seeds) pairs.push_back({v, v});
  const CanonicalPair canon = canonicalize(g1, observed2, pairs);

  MatchResult result;
  switch (method) {
    case Method::rgm: result = rgm_match(canon.g1, canon.g2, canon.seeding); break;
    case Method::sgm:
    case Method::faq: result = sgm_match(canon.g1, canon.g2, canon.seeding, cfg.sgm); break;
  }

  const std::vector<std::size_t> observed_match = lift_matching(canon, result.permutation);
  const Permutation unhide = hide.inverse();
  out.record.seeds = seeds;
  out.record.matching.resize(n);
  std::size_t correct = 0;
  for (std::size_t v = 0; v < n; ++v) {
    out.record.matching[v] = unhide[observed_match[v]];
    if (!is_seed[v] && out.record.matching[v] == v) ++correct;
  }
  out.accuracy = static_cast<double>(correct) / static_cast<double>(nonseeds.size());
  out.iterations = result.iterations;
  out.objective = result.objective;
  out.objective_trace = std::move(result.objective_trace);
  out.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out;
}

struct RunOptions {
  std::size_t threads = 1;
  // Wall-clock time is not reproducible; when false wall_ms_total is 0 so
  // result files are byte-identical across runs.
  bool record_timing = false;
  // Keep per-vertex match records in the output.
  bool keep_matches = false;
};

struct ExperimentOutput {
  std::vector<Cell> cells;
  std::vector<CellResult> results;                       // parallel to cells
  std::vector<std::vector<ReplicateOutcome>> outcomes;  // [cell][replicate]
  std::vector<Cell> skipped;
};

// Mean and standard error (sample standard deviation / √k) of `xs`, summed
// in index order.
inline std::pair<double, double> mean_and_stderr(std::span<const double> xs) {
  if (xs.empty()) return {0.0, 0.0};
  double sum = 0.0;
  for (const double x : xs) sum += x;
  const double mean = sum / static_cast<double>(xs.size());
  if (xs.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (const double x : xs) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  return {mean, sd / std::sqrt(static_cast<double>(xs.size()))};
}

// Runs every cell for cfg.replicates replicates. Work is spread over
// opts.threads workers; results depend only on the configuration.
inline ExperimentOutput run_experiment_detailed(const ExperimentConfig& cfg, const RunOptions& opts = {}) {
  cfg.validate();
  ExperimentOutput out;
  out.cells = experiment_cells(cfg, &out.skipped);
  const std::size_t reps = cfg.replicates;
  const std::size_t tasks = out.cells.size() * reps;
  out.outcomes.assign(out.cells.size(), std::vector<ReplicateOutcome>(reps));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t t = next.fetch_add(1);
      if (t >= tasks) return;
      const Cell& c = out.cells[t / reps];
      try {
        ReplicateOutcome r = run_replicate(cfg, c.rho_index, c.s, c.method, t % reps);
        if (!opts.keep_matches) r.record = {};
        out.outcomes[t / reps][t % reps] = std::move(r);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(tasks);
      }
    }
  };
  const std::size_t threads = std::max<std::size_t>(1, std::min(opts.threads, std::max<std::size_t>(tasks, 1)));
  {
    std::vector<std::jthread> pool;
    for (std::size_t i = 1; i < threads; ++i) pool.emplace_back(worker);
    worker();
  }
  if (failure) std::rethrow_exception(failure);

  for (std::size_t ci = 0; ci < out.cells.size(); ++ci) {
    const Cell& c = out.cells[ci];
    std::vector<double> acc(reps);
    double iters = 0.0;
    double wall = 0.0;
    for (std::size_t r = 0; r < reps; ++r) {
      acc[r] = out.outcomes[ci][r].accuracy;
      iters += static_cast<double>(out.outcomes[ci][r].iterations);
      wall += out.outcomes[ci][r].wall_ms;
    }
    const auto [mean, se] = mean_and_stderr(acc);
    CellResult res;
    res.method = c.method;
    res.n = cfg.n;
    res.p = cfg.p;
    res.rho = cfg.rho_grid[c.rho_index];
    res.s = c.s;
    res.replicates = reps;
    res.mean_accuracy = mean;
    res.std_error = se;
    res.mean_iterations = iters / static_cast<double>(reps);
    res.wall_ms_total = opts.record_timing ? static_cast<std::uint64_t>(std::llround(wall)) : 0;
    out.results.push_back(res);
  }
  return out;
}

inline std::vector<CellResult> run_experiment(const ExperimentConfig& cfg, const RunOptions& opts = {}) {
  return run_experiment_detailed(cfg, opts).results;
}

// counts[i*n + j]: number of runs in which unseeded vertex i was matched to j.
struct MatchFrequencyMap {
  std::size_t n = 0;
  std::vector<std::uint64_t> counts;
  std::uint64_t runs = 0;

  std::uint64_t count(std::size_t i, std::size_t j) const { return counts[i * n + j]; }
};

inline MatchFrequencyMap aggregate_match_frequency(std::span<const MatchRecord> records) {
  MatchFrequencyMap map;
  if (records.empty()) return map;
  map.n = records.front().matching.size();
  map.counts.assign(map.n * map.n, 0);
  for (const MatchRecord& rec : records) {
    if (rec.matching.size() != map.n)
      throw ParameterError("aggregate_match_frequency: records cover different vertex counts");
    std::vector<bool> seeded(map.n, false);
    for (const std::size_t v : rec.seeds) {
      if (v >= map.n) throw ParameterError("aggregate_match_frequency: seed out of range");
      seeded[v] = true;
    }
    for (std::size_t i = 0; i < map.n; ++i) {
      if (seeded[i]) continue;
      if (rec.matching[i] >= map.n) throw ParameterError("aggregate_match_frequency: match target out of range");
      ++map.counts[i * map.n + rec.matching[i]];
    }
    ++map.runs;
  }
  return map;
}

}  // namespace seedmatch
