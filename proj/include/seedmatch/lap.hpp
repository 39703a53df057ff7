//
// seedmatch - Copyright 2026 The seedmatch Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "seedmatch/errors.hpp"
#include "seedmatch/matrix.hpp"
#include "seedmatch/permutation.hpp"

namespace seedmatch {

struct Assignment {
  Permutation permutation;
  // Σ_i M(i, permutation[i]), summed in row order.
  double objective = 0.0;
};

namespace detail {

inline void require_square_finite(const Matrix& m, const char* who) {
  if (m.rows() != m.cols()) throw ParameterError(std::string(who) + ": matrix is not square");
  if (!m.allFinite()) throw ParameterError(std::string(who) + ": matrix has a non-finite entry");
}

// Kuhn–Munkres with row/column potentials and shortest augmenting paths,
// O(n³). Rows are inserted one at a time; each insertion runs a Dijkstra-like
// scan over columns with reduced costs c(i,j) - u(i) - v(j) ≥ 0.
//
// Column scans run in increasing index order and only a strictly smaller
// slack replaces the current best, so among equal candidates the lowest
// column wins. With all costs equal every row lands on its own column and
// the identity comes back.
inline std::vector<std::size_t> hungarian_min(const Matrix& cost) {
  const std::size_t n = static_cast<std::size_t>(cost.rows());
  const double inf = std::numeric_limits<double>::infinity();

  // Index 0 is a virtual column/row used as the root of each search.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
  std::vector<std::size_t> row_of(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);

  for (std::size_t i = 1; i <= n; ++i) {
    row_of[0] = i;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), char{0});
    do {
      used[j0] = 1;
      const std::size_t i0 = row_of[j0];
      const auto r = static_cast<Eigen::Index>(i0 - 1);
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(r, static_cast<Eigen::Index>(j - 1)) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[row_of[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (row_of[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      row_of[j0] = row_of[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<std::size_t> col_of_row(n);
  for (std::size_t j = 1; j <= n; ++j) col_of_row[row_of[j] - 1] = j - 1;
  return col_of_row;
}

inline double assignment_value(const Matrix& m, const Permutation& p) {
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i)
    total += m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(p[i]));
  return total;
}

}  // namespace detail

// Permutation minimizing Σ_i cost(i, P(i)).
inline Assignment solve_min_cost(const Matrix& cost) {
  detail::require_square_finite(cost, "solve_min_cost");
  Permutation p(detail::hungarian_min(cost));
  const double value = detail::assignment_value(cost, p);
  return {std::move(p), value};
}

// Permutation maximizing trace(Pᵀ score) = Σ_i score(i, P(i)).
inline Assignment solve_max_trace(const Matrix& score) {
  detail::require_square_finite(score, "solve_max_trace");
  const Matrix negated = -score;
  Permutation p(detail::hungarian_min(negated));
  const double value = detail::assignment_value(score, p);
  return {std::move(p), value};
}

}  // namespace seedmatch
