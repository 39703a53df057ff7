//
// seedmatch - Copyright 2026 The seedmatch Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "seedmatch/errors.hpp"
#include "seedmatch/graph.hpp"
#include "seedmatch/lap.hpp"
#include "seedmatch/matrix.hpp"
#include "seedmatch/permutation.hpp"

namespace seedmatch {

// m×m nonnegative matrix with unit row and column sums (tolerance 1e-9).
class DoublyStochastic {
 public:
  static constexpr double kSumTolerance = 1e-9;
  static constexpr double kEntryTolerance = 1e-12;

  // Throws ParameterError if `m` is not doubly stochastic.
  explicit DoublyStochastic(Matrix m) : m_(std::move(m)) {
    if (!is_doubly_stochastic(m_))
      throw ParameterError("doubly stochastic: matrix violates the row/column sum or sign constraints");
  }

  // All entries 1/m.
  static DoublyStochastic barycenter(std::size_t m) {
    const auto k = static_cast<Eigen::Index>(m);
    return DoublyStochastic(Matrix::Constant(k, k, 1.0 / static_cast<double>(m)), Trusted{});
  }

  static DoublyStochastic from_permutation(const Permutation& p) {
    return DoublyStochastic(p.matrix(), Trusted{});
  }

  static bool is_doubly_stochastic(const Matrix& m) {
    if (m.rows() != m.cols() || m.rows() == 0) return false;
    if (!m.allFinite() || m.minCoeff() < -kEntryTolerance) return false;
    const bool rows_ok = ((m.rowwise().sum().array() - 1.0).abs() <= kSumTolerance).all();
    const bool cols_ok = ((m.colwise().sum().array() - 1.0).abs() <= kSumTolerance).all();
    return rows_ok && cols_ok;
  }

  std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }
  const Matrix& matrix() const noexcept { return m_; }

 private:
  struct Trusted {};
  DoublyStochastic(Matrix m, Trusted) : m_(std::move(m)) {}

  Matrix m_;
};

struct MatchResult {
  Permutation permutation;  // nonseed alignment
  double objective = 0.0;   // f at the returned permutation
  std::size_t iterations = 0;
  std::vector<double> objective_trace;  // f(P⁽¹⁾), f(P⁽²⁾), ...
  bool converged = false;
};

struct SgmConfig {
  std::size_t max_iters = 20;
  // Stop once ‖P⁽ⁱ⁺¹⁾ − P⁽ⁱ⁾‖_F < tol.
  double tol = 1e-6;
  // Starting iterate; the barycenter when empty.
  std::optional<DoublyStochastic> init;
  // Called with every iterate, starting point included.
  std::function<void(const DoublyStochastic&)> on_iterate;

  void validate() const {
    if (max_iters < 1) throw ParameterError("sgm: max_iters must be at least 1");
    if (!(tol >= 0.0)) throw ParameterError("sgm: tol must be nonnegative");
  }
};

namespace detail {

inline void check_pair(const Graph& g1, const Graph& g2, const Seeding& seeding, const char* who) {
  if (g1.order() != g2.order())
    throw ParameterError(std::string(who) + ": graphs have different vertex counts");
  if (seeding.order() != g1.order())
    throw ParameterError(std::string(who) + ": seeding does not cover the vertex set");
  if (seeding.m == 0) throw ParameterError(std::string(who) + ": there are no nonseed vertices");
}

inline void check_dim(const Matrix& p, const Seeding& seeding, const char* who) {
  const auto m = static_cast<Eigen::Index>(seeding.m);
  if (p.rows() != m || p.cols() != m)
    throw ParameterError(std::string(who) + ": iterate is not " + std::to_string(seeding.m) + "x" +
                         std::to_string(seeding.m));
}

// The seed/nonseed blocks of an adjacency matrix.
struct Blocks {
  Eigen::Ref<const Matrix> seed_seed;        // s×s   (A₁₁)
  Eigen::Ref<const Matrix> nonseed_seed;     // m×s   (A₂₁)
  Eigen::Ref<const Matrix> nonseed_nonseed;  // m×m   (A₂₂)
};

inline Blocks blocks(const Graph& g, const Seeding& seeding) {
  const auto s = static_cast<Eigen::Index>(seeding.s);
  const auto m = static_cast<Eigen::Index>(seeding.m);
  const Matrix& a = g.adjacency();
  return Blocks{a.topLeftCorner(s, s), a.bottomLeftCorner(m, s), a.bottomRightCorner(m, m)};
}

// Frobenius inner product ⟨X, Y⟩ = trace(Xᵀ Y).
inline double inner(const Matrix& x, const Matrix& y) { return x.cwiseProduct(y).sum(); }

// Y·B₂₂ for a permutation matrix Y: row i of the result is row y[i] of B₂₂.
inline Matrix permute_rows(const Permutation& y, const Eigen::Ref<const Matrix>& b) {
  Matrix out(b.rows(), b.cols());
  for (std::size_t i = 0; i < y.size(); ++i)
    out.row(static_cast<Eigen::Index>(i)) = b.row(static_cast<Eigen::Index>(y[i]));
  return out;
}

// Step length maximizing aλ² + bλ + c on [0,1].
inline double best_step(double a, double b, bool direction_is_zero) {
  if (direction_is_zero) return 0.0;
  if (a < 0.0) return std::clamp(-b / (2.0 * a), 0.0, 1.0);
  if (a > 0.0) return (a + b >= 0.0) ? 1.0 : 0.0;
  return b >= 0.0 ? 1.0 : 0.0;
}

}  // namespace detail

// A₂₁B₂₁ᵀ: the restricted-focus (seed-to-nonseed) score, m×m.
inline Matrix restricted_score(const Graph& g1, const Graph& g2, const Seeding& seeding) {
  detail::check_pair(g1, g2, seeding, "restricted_score");
  const auto a = detail::blocks(g1, seeding);
  const auto b = detail::blocks(g2, seeding);
  return a.nonseed_seed * b.nonseed_seed.transpose();
}

// A₂₂PB₂₂: the nonseed-to-nonseed score at P, m×m.
inline Matrix faq_score(const Graph& g1, const Graph& g2, const Seeding& seeding, const Matrix& p) {
  detail::check_pair(g1, g2, seeding, "faq_score");
  detail::check_dim(p, seeding, "faq_score");
  const auto a = detail::blocks(g1, seeding);
  const auto b = detail::blocks(g2, seeding);
  Matrix pb = p * b.nonseed_nonseed;
  return a.nonseed_nonseed * pb;
}

// Linear score of one Frank-Wolfe step (half the gradient).
inline Matrix linearization_score(const Graph& g1, const Graph& g2, const Seeding& seeding,
                                  const Matrix& p) {
  return restricted_score(g1, g2, seeding) + faq_score(g1, g2, seeding, p);
}

// f(P) = trace(A₁₁B₁₁) + 2·trace(PᵀA₂₁B₂₁ᵀ) + trace(A₂₂PB₂₂Pᵀ), which equals
// ⟨A, (I⊕P)B(I⊕P)ᵀ⟩ for symmetric A, B. P need not be doubly stochastic.
inline double sgm_objective(const Graph& g1, const Graph& g2, const Seeding& seeding,
                            const Matrix& p) {
  detail::check_pair(g1, g2, seeding, "sgm_objective");
  detail::check_dim(p, seeding, "sgm_objective");
  const auto a = detail::blocks(g1, seeding);
  const auto b = detail::blocks(g2, seeding);
  const double seed_term = a.seed_seed.cwiseProduct(b.seed_seed.transpose()).sum();
  return seed_term + 2.0 * detail::inner(p, restricted_score(g1, g2, seeding)) +
         detail::inner(faq_score(g1, g2, seeding, p), p);
}

// ∇f(P) = 2·A₂₁B₂₁ᵀ + 2·A₂₂PB₂₂.
inline Matrix sgm_gradient(const Graph& g1, const Graph& g2, const Seeding& seeding,
                           const Matrix& p) {
  return 2.0 * linearization_score(g1, g2, seeding, p);
}

// Vertex of the Birkhoff polytope maximizing ⟨∇f(P), ·⟩.
inline Permutation fw_linearization_step(const Graph& g1, const Graph& g2, const Seeding& seeding,
                                         const DoublyStochastic& p) {
  return solve_max_trace(linearization_score(g1, g2, seeding, p.matrix())).permutation;
}

// f(P + λD) = aλ² + bλ + c along D = Y − P.
struct LineQuadratic {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};

inline LineQuadratic line_quadratic(const Graph& g1, const Graph& g2, const Seeding& seeding,
                                    const DoublyStochastic& p, const Permutation& y) {
  detail::check_pair(g1, g2, seeding, "line_search");
  detail::check_dim(p.matrix(), seeding, "line_search");
  if (y.size() != seeding.m) throw ParameterError("line_search: permutation length differs from m");
  const Matrix d = y.matrix() - p.matrix();
  const Matrix half_grad = linearization_score(g1, g2, seeding, p.matrix());
  LineQuadratic q;
  q.a = detail::inner(faq_score(g1, g2, seeding, d), d);
  q.b = 2.0 * detail::inner(half_grad, d);
  q.c = sgm_objective(g1, g2, seeding, p.matrix());
  return q;
}

// Exact maximizer of f on the segment from P to Y. Degenerate cases: D = 0
// gives 0; a convex or flat quadratic picks the better endpoint, preferring 1.
inline double line_search(const Graph& g1, const Graph& g2, const Seeding& seeding,
                          const DoublyStochastic& p, const Permutation& y) {
  const LineQuadratic q = line_quadratic(g1, g2, seeding, p, y);
  const bool zero = (y.matrix() - p.matrix()).isZero(0.0);
  return detail::best_step(q.a, q.b, zero);
}

// Nearest permutation in Frobenius norm, i.e. argmax trace(PᵀQ).
inline Permutation project_to_permutation(const DoublyStochastic& q) {
  return solve_max_trace(q.matrix()).permutation;
}

// Restricted-focus matching: exact argmax of trace(PᵀA₂₁B₂₁ᵀ), equivalently
// argmin ‖A₂₁ − PB₂₁‖_F. Requires at least one seed.
inline MatchResult rgm_match(const Graph& g1, const Graph& g2, const Seeding& seeding) {
  detail::check_pair(g1, g2, seeding, "rgm_match");
  if (seeding.s == 0) throw PreconditionError("rgm_match: at least one seed is required");
  Assignment best = solve_max_trace(restricted_score(g1, g2, seeding));
  MatchResult r;
  r.permutation = std::move(best.permutation);
  r.objective = best.objective;
  r.iterations = 1;
  r.objective_trace = {best.objective};
  r.converged = true;
  return r;
}

// Seeded graph matching by Frank-Wolfe on the doubly stochastic relaxation
// of max f(P), followed by projection onto the permutations. With s = 0 this
// is FAQ.
inline MatchResult sgm_match(const Graph& g1, const Graph& g2, const Seeding& seeding,
                             const SgmConfig& cfg = {}) {
  detail::check_pair(g1, g2, seeding, "sgm_match");
  cfg.validate();
  if (cfg.init) detail::check_dim(cfg.init->matrix(), seeding, "sgm_match");

  const auto a = detail::blocks(g1, seeding);
  const auto b = detail::blocks(g2, seeding);
  const double seed_term = a.seed_seed.cwiseProduct(b.seed_seed.transpose()).sum();
  const Matrix restricted = a.nonseed_seed * b.nonseed_seed.transpose();

  DoublyStochastic p = cfg.init ? *cfg.init : DoublyStochastic::barycenter(seeding.m);
  Matrix pb = p.matrix() * b.nonseed_nonseed;
  Matrix apb = a.nonseed_nonseed * pb;  // A₂₂PB₂₂, kept in step with P

  auto objective_at = [&](const Matrix& pm, const Matrix& apbm) {
    return seed_term + 2.0 * detail::inner(pm, restricted) + detail::inner(apbm, pm);
  };

  MatchResult r;
  r.objective_trace.push_back(objective_at(p.matrix(), apb));
  if (cfg.on_iterate) cfg.on_iterate(p);

  for (std::size_t it = 0; it < cfg.max_iters; ++it) {
    const Matrix half_grad = restricted + apb;
    const Permutation y = solve_max_trace(half_grad).permutation;

    const Matrix d = y.matrix() - p.matrix();
    const Matrix ayb = a.nonseed_nonseed * detail::permute_rows(y, b.nonseed_nonseed);
    const Matrix ad_b = ayb - apb;  // A₂₂DB₂₂
    const double qa = detail::inner(ad_b, d);
    const double qb = 2.0 * detail::inner(half_grad, d);
    const double lambda = detail::best_step(qa, qb, d.isZero(0.0));

    Matrix next = p.matrix() + lambda * d;
    const double change = (lambda * d).norm();
    apb += lambda * ad_b;
    p = DoublyStochastic(std::move(next));

    ++r.iterations;
    r.objective_trace.push_back(objective_at(p.matrix(), apb));
    if (cfg.on_iterate) cfg.on_iterate(p);
    if (change < cfg.tol) {
      r.converged = true;
      break;
    }
  }

  r.permutation = project_to_permutation(p);
  r.objective = sgm_objective(g1, g2, seeding, r.permutation.matrix());
  return r;
}

// FAQ: SGM without seeds.
inline MatchResult faq_match(const Graph& g1, const Graph& g2, const SgmConfig& cfg = {}) {
  return sgm_match(g1, g2, Seeding{0, g1.order()}, cfg);
}

}  // namespace seedmatch
