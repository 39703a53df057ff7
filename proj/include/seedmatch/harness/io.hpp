//
// seedmatch - Copyright 2026 The seedmatch Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <nlohmann/json.hpp>

#include "seedmatch/errors.hpp"
#include "seedmatch/graph.hpp"
#include "seedmatch/harness/canonical.hpp"
#include "seedmatch/harness/experiment.hpp"
#include "seedmatch/rng.hpp"

namespace seedmatch {

enum class GraphFormat { dense_csv, edge_list };

// Asymmetry tolerated in dense input before it is rejected.
inline constexpr double kDenseSymmetryTolerance = 1e-9;

namespace io {

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    const std::size_t b = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r') ++i;
    if (i > b) out.push_back(s.substr(b, i - b));
  }
  return out;
}

// Number parsers throw FormatError; `where` names the file and line.
inline double parse_real(std::string_view tok, const std::string& where) {
  double v = 0.0;
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw FormatError(where + ": expected a number, got '" + std::string(tok) + "'");
  return v;
}

inline std::uint64_t parse_uint(std::string_view tok, const std::string& where) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw FormatError(where + ": expected a nonnegative integer, got '" + std::string(tok) + "'");
  return v;
}

// Shortest representation that parses back to the same double.
inline std::string format_real(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("cannot open '" + path.string() + "' for writing");
  out << text;
  out.flush();
  if (!out) throw FormatError("write to '" + path.string() + "' failed");
}

inline std::vector<std::string_view> lines(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto pos = text.find('\n', start);
    if (pos == std::string_view::npos) {
      if (start < text.size()) out.push_back(text.substr(start));
      break;
    }
    out.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

inline std::string at(const std::string& name, std::size_t line) {
  return name + ":" + std::to_string(line);
}

}  // namespace io

// Dense CSV when the extension is .csv, edge list otherwise.
inline GraphFormat graph_format_for(const std::filesystem::path& path) {
  return path.extension() == ".csv" ? GraphFormat::dense_csv : GraphFormat::edge_list;
}

inline GraphFormat parse_graph_format(std::string_view name) {
  if (name == "dense" || name == "dense_csv" || name == "csv") return GraphFormat::dense_csv;
  if (name == "edges" || name == "edge_list" || name == "tsv") return GraphFormat::edge_list;
  throw ParameterError("unknown graph format '" + std::string(name) + "' (expected dense or edges)");
}

// Dense CSV: n rows of n comma-separated reals.
inline Graph parse_dense_csv(std::string_view text, const std::string& name = "<dense>") {
  std::vector<std::vector<double>> rows;
  const auto ls = io::lines(text);
  for (std::size_t ln = 0; ln < ls.size(); ++ln) {
    const auto line = io::trim(ls[ln]);
    if (line.empty() || line.front() == '#') continue;
    std::vector<double> row;
    for (const auto tok : io::split(line, ',')) row.push_back(io::parse_real(tok, io::at(name, ln + 1)));
    rows.push_back(std::move(row));
  }
  const std::size_t n = rows.size();
  Matrix adj(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n)
      throw FormatError(name + ": row " + std::to_string(i + 1) + " has " + std::to_string(rows[i].size()) +
                        " entries, expected " + std::to_string(n));
    for (std::size_t j = 0; j < n; ++j) adj(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  }
  try {
    return Graph::from_adjacency(std::move(adj), kDenseSymmetryTolerance);
  } catch (const ParameterError& e) {
    throw FormatError(name + ": " + e.what());
  }
}

// Edge list: one `u v w` line per edge (tab or space separated, w defaults to
// 1). Each line adds w to the unordered pair {u,v}. A `# vertices N` comment
// fixes the vertex count; otherwise it is one more than the largest id.
inline Graph parse_edge_list(std::string_view text, const std::string& name = "<edges>") {
  struct Entry {
    std::size_t u, v;
    double w;
  };
  std::vector<Entry> entries;
  std::optional<std::size_t> declared;
  std::size_t max_id = 0;
  bool any = false;
  const auto ls = io::lines(text);
  for (std::size_t ln = 0; ln < ls.size(); ++ln) {
    const auto line = io::trim(ls[ln]);
    if (line.empty()) continue;
    const std::string where = io::at(name, ln + 1);
    if (line.front() == '#') {
      const auto toks = io::split_ws(line.substr(1));
      if (toks.size() == 2 && toks[0] == "vertices") declared = io::parse_uint(toks[1], where);
      continue;
    }
    const auto toks = io::split_ws(line);
    if (toks.size() != 2 && toks.size() != 3) throw FormatError(where + ": expected 'u v [w]'");
    const auto u = static_cast<std::size_t>(io::parse_uint(toks[0], where));
    const auto v = static_cast<std::size_t>(io::parse_uint(toks[1], where));
    const double w = toks.size() == 3 ? io::parse_real(toks[2], where) : 1.0;
    if (u == v) throw FormatError(where + ": self-loop at vertex " + std::to_string(u));
    if (!std::isfinite(w) || w < 0.0) throw FormatError(where + ": weight must be finite and nonnegative");
    entries.push_back({u, v, w});
    max_id = std::max({max_id, u, v});
    any = true;
  }
  const std::size_t n = declared ? *declared : (any ? max_id + 1 : 0);
  if (any && max_id >= n) throw FormatError(name + ": vertex id " + std::to_string(max_id) + " exceeds declared count");
  Matrix adj = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (const Entry& e : entries) {
    const auto u = static_cast<Eigen::Index>(e.u);
    const auto v = static_cast<Eigen::Index>(e.v);
    adj(u, v) += e.w;
    adj(v, u) = adj(u, v);
  }
  return Graph::from_adjacency(std::move(adj));
}

inline Graph load_graph(const std::filesystem::path& path, GraphFormat format) {
  const std::string text = io::read_file(path);
  return format == GraphFormat::dense_csv ? parse_dense_csv(text, path.string())
                                          : parse_edge_list(text, path.string());
}

inline Graph load_graph(const std::filesystem::path& path) { return load_graph(path, graph_format_for(path)); }

inline std::string format_graph(const Graph& g, GraphFormat format) {
  std::string out;
  const std::size_t n = g.order();
  if (format == GraphFormat::dense_csv) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (j) out += ',';
        out += io::format_real(g.weight(i, j));
      }
      out += '\n';
    }
    return out;
  }
  out += "# vertices " + std::to_string(n) + "\n";
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (g.adjacent(i, j))
        out += std::to_string(i) + '\t' + std::to_string(j) + '\t' + io::format_real(g.weight(i, j)) + '\n';
  return out;
}

inline void write_graph(const Graph& g, const std::filesystem::path& path, GraphFormat format) {
  io::write_file(path, format_graph(g, format));
}

// Seeds file: `v_in_g1,v_in_g2` per line.
inline std::vector<SeedPair> parse_seeds(std::string_view text, const std::string& name = "<seeds>") {
  std::vector<SeedPair> out;
  const auto ls = io::lines(text);
  for (std::size_t ln = 0; ln < ls.size(); ++ln) {
    const auto line = io::trim(ls[ln]);
    if (line.empty() || line.front() == '#') continue;
    const auto toks = io::split(line, ',');
    const std::string where = io::at(name, ln + 1);
    if (toks.size() != 2) throw FormatError(where + ": expected 'v_in_g1,v_in_g2'");
    out.push_back({static_cast<std::size_t>(io::parse_uint(toks[0], where)),
                   static_cast<std::size_t>(io::parse_uint(toks[1], where))});
  }
  return out;
}

inline std::vector<SeedPair> load_seeds(const std::filesystem::path& path) {
  return parse_seeds(io::read_file(path), path.string());
}

// key = value experiment config. List values are comma separated; seed
// lists also accept inclusive ranges `first:last:step`. `#` starts a comment.
inline ExperimentConfig parse_experiment_config(std::string_view text, const std::string& name = "<config>") {
  ExperimentConfig cfg;
  cfg.rho_grid.clear();
  const auto ls = io::lines(text);
  for (std::size_t ln = 0; ln < ls.size(); ++ln) {
    std::string_view line = ls[ln];
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = io::trim(line);
    if (line.empty()) continue;
    const std::string where = io::at(name, ln + 1);
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw FormatError(where + ": expected key = value");
    const auto key = io::trim(line.substr(0, eq));
    const auto value = io::trim(line.substr(eq + 1));
    if (key == "n") {
      cfg.n = io::parse_uint(value, where);
    } else if (key == "p") {
      cfg.p = io::parse_real(value, where);
    } else if (key == "rho") {
      cfg.rho_grid.clear();
      for (const auto tok : io::split(value, ',')) cfg.rho_grid.push_back(io::parse_real(tok, where));
    } else if (key == "seeds") {
      cfg.seed_grid.clear();
      for (const auto tok : io::split(value, ',')) {
        const auto parts = io::split(tok, ':');
        if (parts.size() == 1) {
          cfg.seed_grid.push_back(io::parse_uint(tok, where));
        } else if (parts.size() == 3) {
          const auto first = io::parse_uint(parts[0], where);
          const auto last = io::parse_uint(parts[1], where);
          const auto step = io::parse_uint(parts[2], where);
          if (step == 0 || last < first) throw FormatError(where + ": bad seed range '" + std::string(tok) + "'");
          for (auto s = first; s <= last; s += step) cfg.seed_grid.push_back(s);
        } else {
          throw FormatError(where + ": bad seed entry '" + std::string(tok) + "'");
        }
      }
    } else if (key == "replicates") {
      cfg.replicates = io::parse_uint(value, where);
    } else if (key == "methods") {
      cfg.methods.clear();
      for (const auto tok : io::split(value, ',')) {
        try {
          cfg.methods.push_back(parse_method(tok));
        } catch (const ParameterError& e) {
          throw FormatError(where + ": " + e.what());
        }
      }
    } else if (key == "master_seed") {
      cfg.master_seed = io::parse_uint(value, where);
    } else if (key == "max_iters") {
      cfg.sgm.max_iters = io::parse_uint(value, where);
    } else if (key == "tol") {
      cfg.sgm.tol = io::parse_real(value, where);
    } else if (key == "note") {
      cfg.note = std::string(value);
    } else {
      throw FormatError(where + ": unknown key '" + std::string(key) + "'");
    }
  }
  return cfg;
}

inline ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  return parse_experiment_config(io::read_file(path), path.string());
}

inline constexpr std::string_view kResultsHeader =
    "method,n,p,rho,s,replicates,mean_accuracy,stderr,mean_iterations,wall_ms_total";

inline std::string format_results_csv(std::span<const CellResult> results) {
  std::string out(kResultsHeader);
  out += '\n';
  for (const CellResult& r : results) {
    out += std::string(method_name(r.method)) + ',' + std::to_string(r.n) + ',' + io::format_real(r.p) + ',' +
           io::format_real(r.rho) + ',' + std::to_string(r.s) + ',' + std::to_string(r.replicates) + ',' +
           io::format_real(r.mean_accuracy) + ',' + io::format_real(r.std_error) + ',' +
           io::format_real(r.mean_iterations) + ',' + std::to_string(r.wall_ms_total) + '\n';
  }
  return out;
}

inline std::vector<CellResult> parse_results_csv(std::string_view text, const std::string& name = "<results>") {
  const auto ls = io::lines(text);
  if (ls.empty() || io::trim(ls[0]) != kResultsHeader) throw FormatError(name + ": missing results header");
  std::vector<CellResult> out;
  for (std::size_t ln = 1; ln < ls.size(); ++ln) {
    const auto line = io::trim(ls[ln]);
    if (line.empty()) continue;
    const std::string where = io::at(name, ln + 1);
    const auto t = io::split(line, ',');
    if (t.size() != 10) throw FormatError(where + ": expected 10 columns");
    CellResult r;
    try {
      r.method = parse_method(t[0]);
    } catch (const ParameterError& e) {
      throw FormatError(where + ": " + e.what());
    }
    r.n = io::parse_uint(t[1], where);
    r.p = io::parse_real(t[2], where);
    r.rho = io::parse_real(t[3], where);
    r.s = io::parse_uint(t[4], where);
    r.replicates = io::parse_uint(t[5], where);
    r.mean_accuracy = io::parse_real(t[6], where);
    r.std_error = io::parse_real(t[7], where);
    r.mean_iterations = io::parse_real(t[8], where);
    r.wall_ms_total = io::parse_uint(t[9], where);
    out.push_back(r);
  }
  return out;
}

inline void write_results_csv(std::span<const CellResult> results, const std::filesystem::path& path) {
  io::write_file(path, format_results_csv(results));
}

inline nlohmann::ordered_json config_json(const ExperimentConfig& cfg) {
  nlohmann::ordered_json j;
  j["n"] = cfg.n;
  j["p"] = cfg.p;
  j["rho_grid"] = cfg.rho_grid;
  j["seed_grid"] = cfg.effective_seed_grid();
  j["replicates"] = cfg.replicates;
  std::vector<std::string> methods;
  for (const Method m : cfg.methods) methods.emplace_back(method_name(m));
  j["methods"] = methods;
  j["master_seed"] = cfg.master_seed;
  j["sgm"] = {{"max_iters", cfg.sgm.max_iters}, {"tol", cfg.sgm.tol}, {"init", "barycenter"}};
  if (cfg.fixed_seeds) j["fixed_seeds"] = *cfg.fixed_seeds;
  if (!cfg.note.empty()) j["note"] = cfg.note;
  return j;
}

inline std::string format_results_json(std::span<const CellResult> results, const ExperimentConfig& cfg,
                                       std::span<const Cell> skipped = {}) {
  nlohmann::ordered_json j;
  j["rng_algorithm"] = std::string(kRngAlgorithm);
  j["config"] = config_json(cfg);
  auto& cells = j["results"] = nlohmann::ordered_json::array();
  for (const CellResult& r : results) {
    cells.push_back({{"method", std::string(method_name(r.method))},
                     {"n", r.n},
                     {"p", r.p},
                     {"rho", r.rho},
                     {"s", r.s},
                     {"replicates", r.replicates},
                     {"mean_accuracy", r.mean_accuracy},
                     {"stderr", r.std_error},
                     {"mean_iterations", r.mean_iterations},
                     {"wall_ms_total", r.wall_ms_total}});
  }
  auto& sk = j["skipped"] = nlohmann::ordered_json::array();
  for (const Cell& c : skipped) {
    sk.push_back({{"method", std::string(method_name(c.method))},
                  {"rho", cfg.rho_grid.at(c.rho_index)},
                  {"s", c.s},
                  {"reason", "rgm requires at least one seed"}});
  }
  return j.dump(2) + "\n";
}

inline constexpr std::string_view kMatchRecordsHeader = "replicate,vertex,matched_to,correct";

// One row per unseeded vertex per replicate, in latent labels.
inline std::string format_match_records(std::span<const ReplicateOutcome> outcomes) {
  std::string out(kMatchRecordsHeader);
  out += '\n';
  for (std::size_t r = 0; r < outcomes.size(); ++r) {
    const MatchRecord& rec = outcomes[r].record;
    std::vector<bool> seeded(rec.matching.size(), false);
    for (const std::size_t v : rec.seeds) seeded[v] = true;
    for (std::size_t v = 0; v < rec.matching.size(); ++v) {
      if (seeded[v]) continue;
      out += std::to_string(r) + ',' + std::to_string(v) + ',' + std::to_string(rec.matching[v]) + ',' +
             (rec.matching[v] == v ? "1" : "0") + '\n';
    }
  }
  return out;
}

}  // namespace seedmatch
