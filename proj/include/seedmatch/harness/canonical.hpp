//
// seedmatch - Copyright 2026 The seedmatch Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "seedmatch/errors.hpp"
#include "seedmatch/graph.hpp"
#include "seedmatch/permutation.hpp"

namespace seedmatch {

// A known correspondence: vertex `g1` of the first graph is vertex `g2` of
// the second.
struct SeedPair {
  std::size_t g1 = 0;
  std::size_t g2 = 0;

  friend bool operator==(const SeedPair&, const SeedPair&) = default;
};

// Both graphs relabeled so the seeds occupy the prefix 0..s-1 (in the order
// given) and the nonseeds follow in increasing original index.
struct CanonicalPair {
  Graph g1;
  Graph g2;
  Seeding seeding;
  Permutation relabel1;  // original g1 vertex -> canonical index
  Permutation relabel2;  // original g2 vertex -> canonical index
};

namespace detail {

inline Permutation prefix_relabeling(std::size_t n, const std::vector<std::size_t>& seeds, const char* side) {
  std::vector<std::size_t> order;
  order.reserve(n);
  std::vector<bool> is_seed(n, false);
  for (const std::size_t v : seeds) {
    if (v >= n)
      throw ParameterError(std::string("seeds: vertex ") + std::to_string(v) + " out of range in " + side);
    if (is_seed[v])
      throw ParameterError(std::string("seeds: vertex ") + std::to_string(v) + " repeated in " + side);
    is_seed[v] = true;
    order.push_back(v);
  }
  for (std::size_t v = 0; v < n; ++v)
    if (!is_seed[v]) order.push_back(v);
  // order[k] is the original vertex placed at canonical position k.
  return Permutation(std::move(order)).inverse();
}

}  // namespace detail

inline CanonicalPair canonicalize(const Graph& g1, const Graph& g2, std::span<const SeedPair> seeds) {
  if (g1.order() != g2.order()) throw ParameterError("canonicalize: graphs have different vertex counts");
  const std::size_t n = g1.order();
  if (seeds.size() >= n) throw ParameterError("canonicalize: at least one vertex must be unseeded");
  std::vector<std::size_t> s1, s2;
  for (const SeedPair& sp : seeds) {
    s1.push_back(sp.g1);
    s2.push_back(sp.g2);
  }
  CanonicalPair c{Graph{}, Graph{}, Seeding::for_order(n, seeds.size()),
                  detail::prefix_relabeling(n, s1, "first graph"),
                  detail::prefix_relabeling(n, s2, "second graph")};
  c.g1 = permute_vertices(g1, c.relabel1);
  c.g2 = permute_vertices(g2, c.relabel2);
  return c;
}

// Full bijection in original labels, out[v] = vertex of the second graph
// matched to vertex v of the first. Seeds map to their partners.
inline std::vector<std::size_t> lift_matching(const CanonicalPair& c, const Permutation& psi) {
  if (psi.size() != c.seeding.m) throw ParameterError("lift_matching: permutation length differs from m");
  const Permutation back2 = c.relabel2.inverse();
  const std::size_t n = c.seeding.order();
  std::vector<std::size_t> out(n);
  for (std::size_t v = 0; v < n; ++v) {
    const std::size_t i = c.relabel1[v];
    const std::size_t j = i < c.seeding.s ? i : c.seeding.s + psi[i - c.seeding.s];
    out[v] = back2[j];
  }
  return out;
}

}  // namespace seedmatch
