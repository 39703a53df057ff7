//
// seedmatch - Copyright 2026 The seedmatch Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>

#include "seedmatch/errors.hpp"
#include "seedmatch/matrix.hpp"
#include "seedmatch/permutation.hpp"
#include "seedmatch/rng.hpp"

namespace seedmatch {

// Undirected graph without self-loops, stored as a dense symmetric adjacency
// matrix. Entries are nonnegative weights; graphs drawn from the correlated
// Erdős–Rényi model are binary.
class Graph {
 public:
  Graph() = default;

  // Edgeless graph on n vertices.
  explicit Graph(std::size_t n) : adj_(Matrix::Zero(idx(n), idx(n))) {}

  // Validates and adopts `adj`. Entries within `symmetry_tol` of their mirror
  // are averaged; larger asymmetry, negative or non-finite weights and a
  // nonzero diagonal throw ParameterError.
  static Graph from_adjacency(Matrix adj, double symmetry_tol = 0.0) {
    if (adj.rows() != adj.cols()) throw ParameterError("graph: adjacency matrix is not square");
    const Eigen::Index n = adj.rows();
    for (Eigen::Index i = 0; i < n; ++i) {
      if (adj(i, i) != 0.0)
        throw ParameterError("graph: self-loop at vertex " + std::to_string(i));
      for (Eigen::Index j = 0; j < n; ++j) {
        const double w = adj(i, j);
        if (!std::isfinite(w) || w < 0.0)
          throw ParameterError("graph: weight at (" + std::to_string(i) + "," + std::to_string(j) +
                               ") must be finite and nonnegative");
      }
      for (Eigen::Index j = i + 1; j < n; ++j) {
        if (std::abs(adj(i, j) - adj(j, i)) > symmetry_tol)
          throw ParameterError("graph: adjacency is not symmetric at (" + std::to_string(i) +
                               "," + std::to_string(j) + ")");
        if (adj(i, j) != adj(j, i)) adj(i, j) = adj(j, i) = 0.5 * (adj(i, j) + adj(j, i));
      }
    }
    Graph g;
    g.adj_ = std::move(adj);
    return g;
  }

  std::size_t order() const noexcept { return static_cast<std::size_t>(adj_.rows()); }
  const Matrix& adjacency() const noexcept { return adj_; }

  double weight(std::size_t i, std::size_t j) const { return adj_(idx(i), idx(j)); }
  bool adjacent(std::size_t i, std::size_t j) const { return weight(i, j) != 0.0; }

  // Sets both (i,j) and (j,i).
  void set_weight(std::size_t i, std::size_t j, double w) {
    if (i == j) throw ParameterError("graph: self-loops are not allowed");
    if (!std::isfinite(w) || w < 0.0) throw ParameterError("graph: weight must be finite and nonnegative");
    adj_(idx(i), idx(j)) = w;
    adj_(idx(j), idx(i)) = w;
  }

  bool is_binary() const noexcept {
    return ((adj_.array() == 0.0) || (adj_.array() == 1.0)).all();
  }

  // Number of unordered pairs with nonzero weight.
  std::size_t edge_count() const noexcept {
    return static_cast<std::size_t>((adj_.array() != 0.0).count()) / 2;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.adj_.rows() == b.adj_.rows() && a.adj_ == b.adj_;
  }

 private:
  static Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

  Matrix adj_;
};

// Seeds occupy the prefix 0..s-1 of both graphs and are matched to each other
// in order; the m nonseeds are s..s+m-1.
struct Seeding {
  std::size_t s = 0;
  std::size_t m = 0;

  std::size_t order() const noexcept { return s + m; }

  // Seeding with `s` seeds for graphs of order n.
  static Seeding for_order(std::size_t n, std::size_t s) {
    if (s >= n) throw ParameterError("seeding: seed count must be smaller than the vertex count");
    return Seeding{s, n - s};
  }

  friend bool operator==(const Seeding&, const Seeding&) = default;
};

struct CorrelatedPairSpec {
  std::size_t n = 1;
  double p = 0.5;
  double rho = 0.0;
  std::uint64_t rng_seed = 0;

  void validate() const {
    if (n < 1) throw ParameterError("correlated pair: n must be positive");
    if (!(p > 0.0 && p < 1.0)) throw ParameterError("correlated pair: p must lie in (0,1)");
    if (!(rho >= 0.0 && rho <= 1.0)) throw ParameterError("correlated pair: rho must lie in [0,1]");
  }
};

// Draws a correlated Erdős–Rényi pair on a common vertex set (latent
// alignment = identity). For each pair i<j in lexicographic order two
// uniforms are consumed: the first decides the edge in G1 with probability
// p, the second decides the edge in G2 with probability p + rho(1-p) if the
// G1 edge is present and p(1-rho) otherwise.
inline std::pair<Graph, Graph> generate_correlated_pair(const CorrelatedPairSpec& spec) {
  spec.validate();
  const double p_if_present = spec.p + spec.rho * (1.0 - spec.p);
  const double p_if_absent = spec.p * (1.0 - spec.rho);

  SplitMix64 rng(spec.rng_seed);
  Graph g1(spec.n);
  Graph g2(spec.n);
  for (std::size_t i = 0; i < spec.n; ++i) {
    for (std::size_t j = i + 1; j < spec.n; ++j) {
      const bool e1 = rng.uniform() < spec.p;
      const bool e2 = rng.uniform() < (e1 ? p_if_present : p_if_absent);
      if (e1) g1.set_weight(i, j, 1.0);
      if (e2) g2.set_weight(i, j, 1.0);
    }
  }
  return {std::move(g1), std::move(g2)};
}

// Relabels vertex i as perm[i]: out(perm[i], perm[j]) = g(i, j).
inline Graph permute_vertices(const Graph& g, const Permutation& perm) {
  const std::size_t n = g.order();
  if (perm.size() != n)
    throw ParameterError("permute_vertices: permutation has length " + std::to_string(perm.size()) +
                         " but graph has " + std::to_string(n) + " vertices");
  Matrix out(g.adjacency().rows(), g.adjacency().cols());
  const Matrix& a = g.adjacency();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      out(static_cast<Eigen::Index>(perm[i]), static_cast<Eigen::Index>(perm[j])) =
          a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  return Graph::from_adjacency(std::move(out));
}

// Adjacency disagreement counters induced by a bijection.
//   plus:       nonadjacent in G1, image adjacent in G2
//   minus:      adjacent in G1, image nonadjacent in G2
//   zero_plus:  nonadjacent in G1, image adjacent in G1, image nonadjacent in G2
//   zero_minus: adjacent in G1, image nonadjacent in G1, image adjacent in G2
struct DisagreementBreakdown {
  std::uint64_t total = 0;
  std::uint64_t plus = 0;
  std::uint64_t minus = 0;
  std::uint64_t zero_plus = 0;
  std::uint64_t zero_minus = 0;

  friend bool operator==(const DisagreementBreakdown&, const DisagreementBreakdown&) = default;
};

namespace detail {

inline void check_conformal(const Graph& g1, const Graph& g2, const Seeding& seeding,
                            const Permutation& psi, const char* who) {
  if (g1.order() != g2.order())
    throw ParameterError(std::string(who) + ": graphs have different vertex counts");
  if (seeding.order() != g1.order())
    throw ParameterError(std::string(who) + ": seeding does not cover the vertex set");
  if (psi.size() != seeding.m)
    throw ParameterError(std::string(who) + ": permutation length differs from nonseed count");
}

inline void require_binary(const Graph& g, const char* who) {
  if (!g.is_binary())
    throw DomainError(std::string(who) + ": disagreement counts are defined for binary graphs only");
}

// Full-vertex image of v: seeds fixed, nonseeds mapped through psi.
inline std::size_t image(const Seeding& seeding, const Permutation& psi, std::size_t v) {
  return v < seeding.s ? v : seeding.s + psi[v - seeding.s];
}

inline void tally(DisagreementBreakdown& d, bool a, bool a_img, bool b_img) {
  if (!a && b_img) ++d.plus;
  if (a && !b_img) ++d.minus;
  if (!a && a_img && !b_img) ++d.zero_plus;
  if (a && !a_img && b_img) ++d.zero_minus;
}

}  // namespace detail

// Counts over all unordered vertex pairs; psi acts on nonseeds, seeds map to
// themselves.
inline DisagreementBreakdown count_disagreements(const Graph& g1, const Graph& g2,
                                                 const Seeding& seeding, const Permutation& psi) {
  detail::check_conformal(g1, g2, seeding, psi, "count_disagreements");
  detail::require_binary(g1, "count_disagreements");
  detail::require_binary(g2, "count_disagreements");

  const std::size_t n = g1.order();
  std::vector<std::size_t> img(n);
  for (std::size_t v = 0; v < n; ++v) img[v] = detail::image(seeding, psi, v);

  DisagreementBreakdown d;
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t w = v + 1; w < n; ++w) {
      detail::tally(d, g1.adjacent(v, w), g1.adjacent(img[v], img[w]), g2.adjacent(img[v], img[w]));
    }
  }
  d.total = d.plus + d.minus;
  return d;
}

// Counts over ordered (nonseed, seed) pairs only.
inline DisagreementBreakdown count_restricted_disagreements(const Graph& g1, const Graph& g2,
                                                            const Seeding& seeding,
                                                            const Permutation& psi) {
  detail::check_conformal(g1, g2, seeding, psi, "count_restricted_disagreements");
  detail::require_binary(g1, "count_restricted_disagreements");
  detail::require_binary(g2, "count_restricted_disagreements");

  DisagreementBreakdown d;
  for (std::size_t k = 0; k < seeding.m; ++k) {
    const std::size_t w = seeding.s + k;
    const std::size_t w_img = seeding.s + psi[k];
    for (std::size_t u = 0; u < seeding.s; ++u) {
      detail::tally(d, g1.adjacent(w, u), g1.adjacent(w_img, u), g2.adjacent(w_img, u));
    }
  }
  d.total = d.plus + d.minus;
  return d;
}

// Fraction of nonseeds mapped to their latent partner, taken to be the
// identity. Seeds are never counted. An empty permutation scores 1.
inline double accuracy(const Permutation& psi) {
  if (psi.size() == 0) return 1.0;
  std::size_t fixed = 0;
  for (std::size_t i = 0; i < psi.size(); ++i)
    if (psi[i] == i) ++fixed;
  return static_cast<double>(fixed) / static_cast<double>(psi.size());
}

}  // namespace seedmatch
