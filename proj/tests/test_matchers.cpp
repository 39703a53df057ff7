//
// seedmatch - Copyright 2026 The seedmatch Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "seedmatch/matchers.hpp"
#include "seedmatch/theory.hpp"

using namespace seedmatch;
using seedmatch::testing::Rng;
namespace t = seedmatch::testing;

namespace {

void expect_monotone(const MatchResult& r) {
  for (std::size_t i = 1; i < r.objective_trace.size(); ++i)
    ASSERT_GE(r.objective_trace[i], r.objective_trace[i - 1] - 1e-9) << "step " << i;
}

// Relabels the nonseeds of g by s + pi[k]; returns the hidden graph.
Graph hide_nonseeds(const Graph& g, std::size_t s, const Permutation& pi) {
  std::vector<std::size_t> full(g.order());
  for (std::size_t v = 0; v < s; ++v) full[v] = v;
  for (std::size_t k = 0; k < pi.size(); ++k) full[s + k] = s + pi[k];
  return permute_vertices(g, Permutation(full));
}

double hidden_accuracy(const Permutation& found, const Permutation& pi) {
  std::size_t ok = 0;
  for (std::size_t k = 0; k < pi.size(); ++k) ok += found[k] == pi[k];
  return static_cast<double>(ok) / static_cast<double>(pi.size());
}

double value_at(const Matrix& score, const Permutation& p) {
  double v = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    v += score(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(p[i]));
  return v;
}

Matrix embed(std::size_t s, const Matrix& p) {
  const auto n = static_cast<Eigen::Index>(s) + p.rows();
  Matrix big = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(s); ++i) big(i, i) = 1;
  big.bottomRightCorner(p.rows(), p.cols()) = p;
  return big;
}

}  // namespace

TEST(DoublyStochastic, ValidatesInvariants) {
  EXPECT_NO_THROW(DoublyStochastic::barycenter(4));
  EXPECT_THROW(DoublyStochastic(Matrix::Constant(3, 3, 0.3)), ParameterError);
  Matrix m = Matrix::Identity(2, 2);
  m(0, 0) = 1.5;
  m(0, 1) = -0.5;
  m(1, 0) = -0.5;
  m(1, 1) = 1.5;
  EXPECT_THROW(DoublyStochastic{m}, ParameterError);
  EXPECT_TRUE(DoublyStochastic::is_doubly_stochastic(Permutation({2, 0, 1}).matrix()));
}

TEST(SgmObjective, SelfPairAtIdentityCountsAdjacentOrderedPairs) {
  Rng rng(20);
  for (int k = 0; k < 20; ++k) {
    const std::size_t n = 4 + k % 8, s = k % 4;
    const Graph g = t::random_binary_graph(n, 0.5, rng);
    const Matrix i = Matrix::Identity(static_cast<Eigen::Index>(n - s), static_cast<Eigen::Index>(n - s));
    double agreements = 0;  // ordered pairs adjacent in both copies
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t w = 0; w < n; ++w) agreements += g.adjacent(v, w) ? 1 : 0;
    EXPECT_EQ(sgm_objective(g, g, {s, n - s}, i), agreements);
    EXPECT_EQ(agreements, 2.0 * static_cast<double>(g.edge_count()));
  }
}

TEST(SgmObjective, MatchesDirectEvaluation) {
  Rng rng(21);
  for (int k = 0; k < 50; ++k) {
    const std::size_t n = 3 + k % 9, s = k % 3;
    const Graph g1 = t::random_weighted_graph(n, rng), g2 = t::random_weighted_graph(n, rng);
    const Matrix p = t::random_doubly_stochastic(n - s, rng);
    EXPECT_NEAR(sgm_objective(g1, g2, {s, n - s}, p), t::direct_objective(g1, g2, s, p), 1e-10);
  }
}

TEST(SgmObjective, NoSeedsIsTraceAPBPt) {
  Rng rng(22);
  const Graph g1 = t::random_weighted_graph(7, rng), g2 = t::random_weighted_graph(7, rng);
  const Matrix p = t::random_doubly_stochastic(7, rng);
  const double direct = (g1.adjacency() * p * g2.adjacency() * p.transpose()).trace();
  EXPECT_NEAR(sgm_objective(g1, g2, {0, 7}, p), direct, 1e-10);
}

TEST(SgmObjective, FrobeniusIdentityAndDisagreements) {
  Rng rng(23);
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = 3 + k % 10, s = k % 3;
    auto [g1, g2] = generate_correlated_pair({n, 0.5, 0.3, rng()});
    const Permutation psi = t::random_permutation(n - s, rng);
    const Matrix big = embed(s, psi.matrix());
    const Matrix diff = g1.adjacency() - big * g2.adjacency() * big.transpose();
    const double lhs = diff.squaredNorm();
    const double f = sgm_objective(g1, g2, {s, n - s}, psi.matrix());
    ASSERT_EQ(lhs, g1.adjacency().squaredNorm() + g2.adjacency().squaredNorm() - 2 * f);
    ASSERT_EQ(lhs, 2.0 * static_cast<double>(count_disagreements(g1, g2, {s, n - s}, psi).total));
  }
}

TEST(SgmObjective, DimensionMismatch) {
  EXPECT_THROW(sgm_objective(Graph(5), Graph(5), {2, 3}, Matrix::Zero(2, 2)), ParameterError);
  EXPECT_THROW(sgm_objective(Graph(5), Graph(4), {1, 4}, Matrix::Zero(4, 4)), ParameterError);
}

TEST(SgmGradient, CentralDifferences) {
  Rng rng(24);
  const std::size_t s = 4, m = 10, n = s + m;
  const double h = 1e-5;
  for (int inst = 0; inst < 20; ++inst) {
    const Graph g1 = t::random_weighted_graph(n, rng), g2 = t::random_weighted_graph(n, rng);
    const Matrix p = t::random_doubly_stochastic(m, rng);
    const Matrix grad = sgm_gradient(g1, g2, {s, m}, p);
    for (int e = 0; e < 20; ++e) {
      const auto i = static_cast<Eigen::Index>(rng() % m), j = static_cast<Eigen::Index>(rng() % m);
      Matrix up = p, down = p;
      up(i, j) += h;
      down(i, j) -= h;
      const double fd = (sgm_objective(g1, g2, {s, m}, up) - sgm_objective(g1, g2, {s, m}, down)) / (2 * h);
      ASSERT_LT(std::abs(fd - grad(i, j)) / std::abs(grad(i, j)), 1e-6);
    }
  }
}

TEST(SgmGradient, NoSeedsAndZeroIterate) {
  Rng rng(25);
  const Graph g1 = t::random_weighted_graph(8, rng), g2 = t::random_weighted_graph(8, rng);
  const Matrix p = t::random_doubly_stochastic(8, rng);
  const Matrix expected = 2.0 * g1.adjacency() * p * g2.adjacency();
  EXPECT_TRUE(sgm_gradient(g1, g2, {0, 8}, p).isApprox(expected, 1e-13));

  const Matrix a21 = g1.adjacency().bottomLeftCorner(5, 3);
  const Matrix b21 = g2.adjacency().bottomLeftCorner(5, 3);
  EXPECT_EQ(sgm_gradient(g1, g2, {3, 5}, Matrix::Zero(5, 5)), Matrix(2.0 * a21 * b21.transpose()));
}

TEST(Linearization, BarycenterIsDegreeOuterProduct) {
  Rng rng(26);
  for (int k = 0; k < 30; ++k) {
    const std::size_t m = 2 + k % 5;
    const Graph g1 = t::random_binary_graph(m, 0.5, rng), g2 = t::random_binary_graph(m, 0.5, rng);
    Matrix outer(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        double di = 0, dj = 0;
        for (std::size_t w = 0; w < m; ++w) {
          di += g1.weight(i, w);
          dj += g2.weight(w, j);
        }
        outer(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = di * dj / static_cast<double>(m);
      }
    const auto bary = DoublyStochastic::barycenter(m);
    EXPECT_TRUE(linearization_score(g1, g2, {0, m}, bary.matrix()).isApprox(outer, 1e-14));
    const Permutation y = fw_linearization_step(g1, g2, {0, m}, bary);
    EXPECT_NEAR(value_at(outer, y), t::brute_force_max_assignment(outer), 1e-12);
  }
}

TEST(Linearization, DecomposesIntoRestrictedAndFaqTerms) {
  Rng rng(27);
  for (int k = 0; k < 30; ++k) {
    const std::size_t s = 1 + k % 4, m = 3 + k % 5, n = s + m;
    const Graph g1 = t::random_weighted_graph(n, rng), g2 = t::random_weighted_graph(n, rng);
    const Matrix p = t::random_doubly_stochastic(m, rng);
    const Seeding sd{s, m};
    const Matrix lin = linearization_score(g1, g2, sd, p);
    ASSERT_EQ(lin, Matrix(restricted_score(g1, g2, sd) + faq_score(g1, g2, sd, p)));

    // Zero the seed-to-nonseed block: the step is the FAQ step on the nonseeds.
    Matrix a = g1.adjacency(), b = g2.adjacency();
    a.bottomLeftCorner(m, s).setZero();
    a.topRightCorner(s, m).setZero();
    b.bottomLeftCorner(m, s).setZero();
    b.topRightCorner(s, m).setZero();
    const Graph h1 = Graph::from_adjacency(a), h2 = Graph::from_adjacency(b);
    const Graph sub1 = Graph::from_adjacency(a.bottomRightCorner(m, m));
    const Graph sub2 = Graph::from_adjacency(b.bottomRightCorner(m, m));
    const auto dp = DoublyStochastic(p);
    ASSERT_EQ(fw_linearization_step(h1, h2, sd, dp), fw_linearization_step(sub1, sub2, {0, m}, dp));

    // Zero the nonseed block: the step is the restricted LAP that RGM solves.
    a = g1.adjacency();
    b = g2.adjacency();
    a.bottomRightCorner(m, m).setZero();
    b.bottomRightCorner(m, m).setZero();
    const Graph r1 = Graph::from_adjacency(a), r2 = Graph::from_adjacency(b);
    ASSERT_EQ(fw_linearization_step(r1, r2, sd, dp), rgm_match(r1, r2, sd).permutation);
  }
}

TEST(Linearization, SingleNonseed) {
  Rng rng(28);
  const Graph g1 = t::random_binary_graph(5, 0.5, rng), g2 = t::random_binary_graph(5, 0.5, rng);
  EXPECT_TRUE(fw_linearization_step(g1, g2, {4, 1}, DoublyStochastic::barycenter(1)).is_identity());
}

TEST(LineSearch, ZeroDirectionGivesZero) {
  Rng rng(29);
  const Graph g1 = t::random_weighted_graph(6, rng), g2 = t::random_weighted_graph(6, rng);
  const Permutation y({2, 0, 3, 1});
  EXPECT_EQ(line_search(g1, g2, {2, 4}, DoublyStochastic::from_permutation(y), y), 0.0);
}

TEST(LineSearch, QuadraticCoefficientsMatchObjective) {
  Rng rng(30);
  for (int k = 0; k < 40; ++k) {
    const std::size_t s = k % 3, m = 2 + k % 6, n = s + m;
    const Graph g1 = t::random_weighted_graph(n, rng), g2 = t::random_weighted_graph(n, rng);
    const DoublyStochastic p(t::random_doubly_stochastic(m, rng));
    const Permutation y = t::random_permutation(m, rng);
    const auto q = line_quadratic(g1, g2, {s, m}, p, y);
    const Matrix d = y.matrix() - p.matrix();
    for (double lam : {0.0, 0.3, 0.7, 1.0}) {
      const double f = sgm_objective(g1, g2, {s, m}, p.matrix() + lam * d);
      ASSERT_NEAR(q.a * lam * lam + q.b * lam + q.c, f, 1e-9 * (1 + std::abs(f)));
    }
  }
}

TEST(LineSearch, ConcaveCaseHitsVertex) {
  // Search small weighted instances for a concave segment whose vertex lies
  // in (0.5, 1), then restart the segment so the vertex sits at exactly 0.5.
  Rng rng(31);
  bool found = false;
  for (int k = 0; k < 5000 && !found; ++k) {
    const std::size_t s = 1, m = 4, n = s + m;
    const Graph g1 = t::random_weighted_graph(n, rng, 0.8), g2 = t::random_weighted_graph(n, rng, 0.8);
    const DoublyStochastic p(t::random_doubly_stochastic(m, rng));
    const Permutation y = t::random_permutation(m, rng);
    const auto q = line_quadratic(g1, g2, {s, m}, p, y);
    if (!(q.a < 0)) continue;
    const double vertex = -q.b / (2 * q.a);
    if (!(vertex > 0.55 && vertex < 0.95)) continue;
    found = true;
    const double shift = 2 * vertex - 1;
    const DoublyStochastic start(p.matrix() + shift * (y.matrix() - p.matrix()));
    const double lam = line_search(g1, g2, {s, m}, start, y);
    EXPECT_NEAR(lam, 0.5, 1e-9);
    const Matrix d = y.matrix() - start.matrix();
    const double best = sgm_objective(g1, g2, {s, m}, start.matrix() + lam * d);
    for (int i = 0; i <= 10; ++i) {
      const double f = sgm_objective(g1, g2, {s, m}, start.matrix() + (i / 10.0) * d);
      EXPECT_GE(best, f - 1e-12);
    }
  }
  ASSERT_TRUE(found);
}

TEST(LineSearch, NeverWorseThanStayingPut) {
  Rng rng(32);
  for (int k = 0; k < 300; ++k) {
    const std::size_t s = k % 3, m = 2 + k % 7, n = s + m;
    const Graph g1 = k % 2 ? t::random_weighted_graph(n, rng) : t::random_binary_graph(n, 0.5, rng);
    const Graph g2 = k % 2 ? t::random_weighted_graph(n, rng) : t::random_binary_graph(n, 0.5, rng);
    const DoublyStochastic p(t::random_doubly_stochastic(m, rng));
    const Permutation y = t::random_permutation(m, rng);
    const double lam = line_search(g1, g2, {s, m}, p, y);
    ASSERT_GE(lam, 0.0);
    ASSERT_LE(lam, 1.0);
    const Matrix next = p.matrix() + lam * (y.matrix() - p.matrix());
    ASSERT_GE(sgm_objective(g1, g2, {s, m}, next), sgm_objective(g1, g2, {s, m}, p.matrix()) - 1e-9);
  }
}

TEST(Projection, PermutationAndBarycenter) {
  const Permutation p({3, 1, 0, 2});
  EXPECT_EQ(project_to_permutation(DoublyStochastic::from_permutation(p)), p);
  EXPECT_TRUE(project_to_permutation(DoublyStochastic::barycenter(6)).is_identity());
}

TEST(Projection, MatchesEnumerationOnSinkhornMatrices) {
  Rng rng(33);
  for (int k = 0; k < 100; ++k) {
    const std::size_t m = 1 + k % 6;
    const DoublyStochastic q(t::random_doubly_stochastic(m, rng));
    const Permutation p = project_to_permutation(q);
    ASSERT_EQ(value_at(q.matrix(), p), t::brute_force_max_assignment(q.matrix()));
  }
}

TEST(Rgm, SingleNonseed) {
  Rng rng(34);
  const Graph g1 = t::random_binary_graph(6, 0.5, rng), g2 = t::random_binary_graph(6, 0.5, rng);
  const auto r = rgm_match(g1, g2, {5, 1});
  EXPECT_TRUE(r.permutation.is_identity());
  EXPECT_EQ(accuracy(r.permutation), 1.0);
  EXPECT_EQ(r.iterations, 1u);
}

TEST(Rgm, RequiresSeeds) {
  EXPECT_THROW(rgm_match(Graph(4), Graph(4), {0, 4}), PreconditionError);
}

TEST(Rgm, AttainsRestrictedMinimumOnEightVertices) {
  Rng rng(35);
  for (int k = 0; k < 50; ++k) {
    auto [g1, g2] = generate_correlated_pair({8, 0.5, 0.3, rng()});
    const Seeding sd{3, 5};
    const auto r = rgm_match(g1, g2, sd);
    const auto oracle = brute_force_rgm(g1, g2, sd);
    ASSERT_EQ(oracle.bijections, 120u);
    ASSERT_EQ(count_restricted_disagreements(g1, g2, sd, r.permutation).total, oracle.optimum);
    // trace objective and Δ_R are two views of the same quantity.
    const Matrix a21 = g1.adjacency().bottomLeftCorner(5, 3);
    const Matrix b21 = g2.adjacency().bottomLeftCorner(5, 3);
    ASSERT_EQ((a21 - r.permutation.matrix() * b21).squaredNorm(), static_cast<double>(oracle.optimum));
  }
}

TEST(Rgm, RecoversAlignmentWithManySeeds) {
  const std::size_t s = 50, m = 50;
  double total = 0;
  for (std::uint64_t rep = 0; rep < 100; ++rep) {
    auto [g1, g2] = generate_correlated_pair({s + m, 0.5, 0.5, hash64({0x46, rep})});
    Rng rng(rep);
    const Permutation pi = t::random_permutation(m, rng);
    const auto r = rgm_match(g1, hide_nonseeds(g2, s, pi), {s, m});
    total += hidden_accuracy(r.permutation, pi);
  }
  EXPECT_GE(total / 100, 0.95);
}

TEST(Sgm, RecoversIsomorphism) {
  const std::size_t n = 100;
  int exact = 0;
  for (std::uint64_t rep = 0; rep < 50; ++rep) {
    Rng rng(1000 + rep);
    const Graph g1 = t::random_binary_graph(n, 0.5, rng);
    const Graph g2 = permute_vertices(g1, t::random_permutation(n, rng));
    const auto r = faq_match(g1, g2);
    expect_monotone(r);
    exact += count_disagreements(g1, g2, {0, n}, r.permutation).total == 0;
  }
  EXPECT_GE(exact, 48);  // 95% of 50, rounded up
}

TEST(Sgm, SingleNonseedTakesOneIteration) {
  Rng rng(36);
  const Graph g1 = t::random_binary_graph(7, 0.5, rng), g2 = t::random_binary_graph(7, 0.5, rng);
  const auto r = sgm_match(g1, g2, {6, 1});
  EXPECT_TRUE(r.permutation.is_identity());
  EXPECT_EQ(r.iterations, 1u);
  EXPECT_TRUE(r.converged);
  expect_monotone(r);
}

TEST(Sgm, ProjectedObjectiveBoundedByEnumeration) {
  Rng rng(37);
  int equal = 0;
  for (int k = 0; k < 40; ++k) {
    const std::size_t s = 2, m = 5, n = s + m;
    const Graph g1 = t::random_weighted_graph(n, rng), g2 = t::random_weighted_graph(n, rng);
    const auto r = sgm_match(g1, g2, {s, m});
    expect_monotone(r);
    std::vector<std::size_t> perm = {0, 1, 2, 3, 4};
    double best = -1e300;
    do {
      best = std::max(best, sgm_objective(g1, g2, {s, m}, Permutation(perm).matrix()));
    } while (std::next_permutation(perm.begin(), perm.end()));
    ASSERT_LE(r.objective, best + 1e-9);
    EXPECT_NEAR(r.objective, sgm_objective(g1, g2, {s, m}, r.permutation.matrix()), 0.0);
    equal += std::abs(r.objective - best) < 1e-9;
  }
  RecordProperty("optimal_fraction", std::to_string(equal / 40.0));
}

TEST(Sgm, IteratesStayDoublyStochastic) {
  Rng rng(38);
  for (int k = 0; k < 20; ++k) {
    const std::size_t s = k % 5, m = 10 + k, n = s + m;
    auto [g1, g2] = generate_correlated_pair({n, 0.5, 0.6, rng()});
    SgmConfig cfg;
    std::size_t seen = 0;
    cfg.on_iterate = [&](const DoublyStochastic& p) {
      ++seen;
      ASSERT_TRUE(DoublyStochastic::is_doubly_stochastic(p.matrix()));
    };
    const auto r = sgm_match(g1, g2, {s, m}, cfg);
    EXPECT_EQ(seen, r.iterations + 1);
    EXPECT_EQ(r.objective_trace.size(), r.iterations + 1);
    expect_monotone(r);
  }
}

TEST(Sgm, FaqEquivalenceWhenSeedsAreDisconnected) {
  Rng rng(39);
  for (int k = 0; k < 10; ++k) {
    const std::size_t s = 3, m = 12, n = s + m;
    Matrix a = t::random_binary_graph(n, 0.5, rng).adjacency();
    Matrix b = t::random_binary_graph(n, 0.5, rng).adjacency();
    for (Matrix* x : {&a, &b}) {
      x->bottomLeftCorner(m, s).setZero();
      x->topRightCorner(s, m).setZero();
    }
    const Graph g1 = Graph::from_adjacency(a), g2 = Graph::from_adjacency(b);
    const Graph sub1 = Graph::from_adjacency(a.bottomRightCorner(m, m));
    const Graph sub2 = Graph::from_adjacency(b.bottomRightCorner(m, m));
    std::vector<Matrix> seeded, plain;
    SgmConfig c1, c2;
    c1.on_iterate = [&](const DoublyStochastic& p) { seeded.push_back(p.matrix()); };
    c2.on_iterate = [&](const DoublyStochastic& p) { plain.push_back(p.matrix()); };
    const auto r1 = sgm_match(g1, g2, {s, m}, c1);
    const auto r2 = faq_match(sub1, sub2, c2);
    expect_monotone(r1);
    expect_monotone(r2);
    ASSERT_EQ(seeded.size(), plain.size());
    for (std::size_t i = 0; i < seeded.size(); ++i) ASSERT_EQ(seeded[i], plain[i]);
    ASSERT_EQ(r1.permutation, r2.permutation);
  }
}

TEST(Sgm, ScalingWeightsKeepsLinearizationOptima) {
  Rng rng(40);
  for (int k = 0; k < 30; ++k) {
    const std::size_t s = 2, m = 6, n = s + m;
    const Graph g1 = t::random_weighted_graph(n, rng), g2 = t::random_weighted_graph(n, rng);
    const DoublyStochastic p(t::random_doubly_stochastic(m, rng));
    const Matrix score = linearization_score(g1, g2, {s, m}, p.matrix());
    const double best = t::brute_force_max_assignment(score);
    for (double c : {0.25, 2.0, 3.0, 17.5}) {
      const Graph h1 = Graph::from_adjacency(c * g1.adjacency()), h2 = Graph::from_adjacency(c * g2.adjacency());
      const Permutation y = fw_linearization_step(h1, h2, {s, m}, p);
      ASSERT_NEAR(value_at(score, y), best, 1e-12 * (1 + std::abs(best)));
    }
  }
}

TEST(Sgm, WeightedRunsAscend) {
  Rng rng(41);
  for (int k = 0; k < 20; ++k) {
    const std::size_t s = k % 6, m = 20, n = s + m;
    const Graph g1 = t::random_weighted_graph(n, rng), g2 = t::random_weighted_graph(n, rng);
    const auto r = sgm_match(g1, g2, {s, m});
    expect_monotone(r);
    EXPECT_LE(r.iterations, 20u);
  }
}

TEST(Sgm, RejectsBadConfig) {
  SgmConfig cfg;
  cfg.max_iters = 0;
  EXPECT_THROW(sgm_match(Graph(4), Graph(4), {0, 4}, cfg), ParameterError);
  cfg.max_iters = 5;
  cfg.init = DoublyStochastic::barycenter(3);
  EXPECT_THROW(sgm_match(Graph(4), Graph(4), {0, 4}, cfg), ParameterError);
}
