//
// seedmatch - Copyright 2026 The seedmatch Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstddef>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "seedmatch/errors.hpp"
#include "seedmatch/matrix.hpp"

namespace seedmatch {

// A bijection on {0, ..., size()-1}, stored as the image of each index.
class Permutation {
 public:
  Permutation() = default;

  // Throws ParameterError unless `map` is a bijection.
  explicit Permutation(std::vector<std::size_t> map) : map_(std::move(map)) {
    std::vector<bool> seen(map_.size(), false);
    for (const std::size_t v : map_) {
      if (v >= map_.size() || seen[v]) {
        throw ParameterError("permutation: index array of length " +
                             std::to_string(map_.size()) + " is not a bijection");
      }
      seen[v] = true;
    }
  }

  static Permutation identity(std::size_t n) {
    std::vector<std::size_t> map(n);
    std::iota(map.begin(), map.end(), std::size_t{0});
    return Permutation(std::move(map), Trusted{});
  }

  std::size_t size() const noexcept { return map_.size(); }
  std::size_t operator[](std::size_t i) const { return map_[i]; }
  const std::vector<std::size_t>& map() const noexcept { return map_; }

  Permutation inverse() const {
    std::vector<std::size_t> inv(map_.size());
    for (std::size_t i = 0; i < map_.size(); ++i) inv[map_[i]] = i;
    return Permutation(std::move(inv), Trusted{});
  }

  // (this ∘ other)(i) = this[other[i]].
  Permutation after(const Permutation& other) const {
    if (other.size() != size()) throw ParameterError("permutation: composing different sizes");
    std::vector<std::size_t> out(size());
    for (std::size_t i = 0; i < size(); ++i) out[i] = map_[other[i]];
    return Permutation(std::move(out), Trusted{});
  }

  bool is_identity() const noexcept {
    for (std::size_t i = 0; i < map_.size(); ++i)
      if (map_[i] != i) return false;
    return true;
  }

  // Matrix with a one at (i, map[i]); trace(Pᵀ S) = Σ S(i, map[i]).
  Matrix matrix() const {
    Matrix m = Matrix::Zero(static_cast<Eigen::Index>(size()), static_cast<Eigen::Index>(size()));
    for (std::size_t i = 0; i < size(); ++i)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(map_[i])) = 1.0;
    return m;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  struct Trusted {};
  Permutation(std::vector<std::size_t> map, Trusted) : map_(std::move(map)) {}

  std::vector<std::size_t> map_;
};

}  // namespace seedmatch
