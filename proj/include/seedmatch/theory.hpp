//
// seedmatch - Copyright 2026 The seedmatch Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include "seedmatch/errors.hpp"
#include "seedmatch/graph.hpp"

namespace seedmatch {

// Largest vertex (or nonseed) count the enumeration oracles accept.
inline constexpr std::size_t kMaxEnumerationOrder = 9;

// Summary of an exhaustive search over bijections. The latent alignment is
// the identity labeling.
struct OracleReport {
  std::uint64_t optimum = 0;
  std::uint64_t argmin_count = 0;
  bool identity_is_unique_argmin = false;
  std::uint64_t better_than_identity = 0;  // |{ψ : Δ(ψ) < Δ(e)}|
  std::uint64_t identity_value = 0;        // Δ(e)
  std::uint64_t bijections = 0;            // number enumerated
};

namespace detail {

inline std::vector<std::uint8_t> bits_of(const Graph& g) {
  const std::size_t n = g.order();
  std::vector<std::uint8_t> out(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i * n + j] = g.adjacent(i, j) ? 1 : 0;
  return out;
}

// Walks all permutations of {0..k-1} in lexicographic order (identity first)
// and folds their disagreement values into a report.
template <class Value>
OracleReport enumerate(std::size_t k, Value&& value) {
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  OracleReport r;
  r.identity_value = value(perm);
  r.optimum = r.identity_value;
  r.argmin_count = 0;
  do {
    const std::uint64_t v = value(perm);
    ++r.bijections;
    if (v < r.optimum) {
      r.optimum = v;
      r.argmin_count = 1;
    } else if (v == r.optimum) {
      ++r.argmin_count;
    }
    if (v < r.identity_value) ++r.better_than_identity;
  } while (std::next_permutation(perm.begin(), perm.end()));
  r.identity_is_unique_argmin = r.optimum == r.identity_value && r.argmin_count == 1;
  return r;
}

inline void check_oracle_input(const Graph& g1, const Graph& g2, const char* who) {
  if (g1.order() != g2.order())
    throw ParameterError(std::string(who) + ": graphs have different vertex counts");
  if (!g1.is_binary() || !g2.is_binary())
    throw DomainError(std::string(who) + ": oracle requires binary graphs");
}

}  // namespace detail

// Exhaustive graph matching over all n! bijections, scoring each by Δ.
inline OracleReport brute_force_gm(const Graph& g1, const Graph& g2) {
  detail::check_oracle_input(g1, g2, "brute_force_gm");
  const std::size_t n = g1.order();
  if (n > kMaxEnumerationOrder)
    throw ResourceError("brute_force_gm: n = " + std::to_string(n) + " exceeds the enumeration limit of " +
                        std::to_string(kMaxEnumerationOrder));
  const auto a = detail::bits_of(g1);
  const auto b = detail::bits_of(g2);
  return detail::enumerate(n, [&](const std::vector<std::size_t>& psi) {
    std::uint64_t d = 0;
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t w = v + 1; w < n; ++w) d += a[v * n + w] != b[psi[v] * n + psi[w]];
    return d;
  });
}

// Exhaustive restricted-focus matching over all m! nonseed bijections,
// scoring each by Δ_R. With no seeds every bijection scores 0.
inline OracleReport brute_force_rgm(const Graph& g1, const Graph& g2, const Seeding& seeding) {
  detail::check_oracle_input(g1, g2, "brute_force_rgm");
  if (seeding.order() != g1.order())
    throw ParameterError("brute_force_rgm: seeding does not cover the vertex set");
  const std::size_t m = seeding.m;
  const std::size_t s = seeding.s;
  if (m > kMaxEnumerationOrder)
    throw ResourceError("brute_force_rgm: m = " + std::to_string(m) + " exceeds the enumeration limit of " +
                        std::to_string(kMaxEnumerationOrder));
  const std::size_t n = g1.order();
  const auto a = detail::bits_of(g1);
  const auto b = detail::bits_of(g2);
  return detail::enumerate(m, [&](const std::vector<std::size_t>& psi) {
    std::uint64_t d = 0;
    for (std::size_t k = 0; k < m; ++k) {
      const std::size_t w = s + k;
      const std::size_t w_img = s + psi[k];
      for (std::size_t u = 0; u < s; ++u) d += a[w * n + u] != b[w_img * n + u];
    }
    return d;
  });
}

// H(r,q) = r log(r/q) + (1-r) log((1-r)/(1-q)), natural log: the
// Kullback–Leibler divergence of Bernoulli(r) from Bernoulli(q).
inline double kl_divergence_bernoulli(double r, double q) {
  if (!(r > 0.0 && r < 1.0) || !(q > 0.0 && q < 1.0))
    throw DomainError("kl_divergence_bernoulli: arguments must lie strictly inside (0,1)");
  return r * std::log(r / q) + (1.0 - r) * std::log((1.0 - r) / (1.0 - q));
}

// P(X ≥ k_min) for X ~ Binomial(eta, q), by direct summation of the pmf in
// long double, smallest terms first.
inline double binomial_upper_tail(std::uint64_t eta, double q, std::uint64_t k_min) {
  if (!(q >= 0.0 && q <= 1.0)) throw DomainError("binomial_upper_tail: q must lie in [0,1]");
  if (k_min == 0) return 1.0;
  if (k_min > eta) return 0.0;
  if (q == 0.0) return 0.0;
  if (q == 1.0) return 1.0;
  const long double lq = std::log(static_cast<long double>(q));
  const long double l1q = std::log1p(-static_cast<long double>(q));
  const long double lgn = std::lgamma(static_cast<long double>(eta) + 1.0L);
  std::vector<long double> terms;
  terms.reserve(eta - k_min + 1);
  for (std::uint64_t k = k_min; k <= eta; ++k) {
    const auto kk = static_cast<long double>(k);
    const auto rest = static_cast<long double>(eta - k);
    const long double log_term = lgn - std::lgamma(kk + 1.0L) - std::lgamma(rest + 1.0L) + kk * lq + rest * l1q;
    terms.push_back(std::exp(log_term));
  }
  std::sort(terms.begin(), terms.end());
  long double sum = 0.0L;
  for (const long double t : terms) sum += t;
  return static_cast<double>(std::min(sum, 1.0L));
}

// Lower bound on P(X ≥ eta·r) for X ~ Binomial(eta, q), valid when
// 0 < q < r < 1 - 1/eta:
//   (√π / e³) · √((1-r)/r) · eta^(-1/2) · q · exp(-eta·H(r,q)).
inline double binomial_tail_lower_bound(std::uint64_t eta, double q, double r) {
  const double n = static_cast<double>(eta);
  if (eta == 0 || !(q > 0.0) || !(q < r) || !(r < 1.0 - 1.0 / n))
    throw DomainError("binomial_tail_lower_bound: requires 0 < q < r < 1 - 1/eta");
  const double lead = std::sqrt(std::numbers::pi) / std::exp(3.0);
  return lead * std::sqrt((1.0 - r) / r) / std::sqrt(n) * q *
         std::exp(-n * kl_divergence_bernoulli(r, q));
}

struct SeedThresholdConstants {
  double c5_lower = 0.0;  // c₅ must exceed this for the restricted matching to be consistent
  double c6_upper = 0.0;  // c₆ must stay below this for spurious matchings to blow up
};

// With q₁ = (1-p)(1-ρ), q₂ = p(1-ρ), H₁ = H(q₁+ρ/2, q₁), H₂ = H(q₂+ρ/2, q₂):
//   c5_lower = max{ 2/(H₁·p(1-p)(2-ε)), 2/(H₂·p(1-p)(2-ε)), 16/(ε²p(1-p)) }
//   c6_upper = 1 / (4(H₁+H₂)·p(1-p))
inline SeedThresholdConstants seed_threshold_constants(double p, double rho, double eps) {
  if (!(p > 0.0 && p < 1.0)) throw ParameterError("seed_threshold_constants: p must lie in (0,1)");
  if (!(rho > 0.0 && rho < 1.0)) throw ParameterError("seed_threshold_constants: rho must lie in (0,1)");
  if (!(eps > 0.0 && eps < 2.0)) throw ParameterError("seed_threshold_constants: eps must lie in (0,2)");
  const double q1 = (1.0 - p) * (1.0 - rho);
  const double q2 = p * (1.0 - rho);
  const double r1 = q1 + rho / 2.0;
  const double r2 = q2 + rho / 2.0;
  if (!(r1 > 0.0 && r1 < 1.0) || !(r2 > 0.0 && r2 < 1.0))
    throw ParameterError("seed_threshold_constants: q + rho/2 leaves (0,1)");
  const double h1 = kl_divergence_bernoulli(r1, q1);
  const double h2 = kl_divergence_bernoulli(r2, q2);
  const double pq = p * (1.0 - p);
  SeedThresholdConstants c;
  c.c5_lower = std::max({2.0 / (h1 * pq * (2.0 - eps)), 2.0 / (h2 * pq * (2.0 - eps)), 16.0 / (eps * eps * pq)});
  c.c6_upper = 1.0 / (4.0 * (h1 + h2) * pq);
  return c;
}

}  // namespace seedmatch
