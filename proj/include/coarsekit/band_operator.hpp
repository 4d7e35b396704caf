// Copyright 2026 The coarsekit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "coarsekit/metric_space.hpp"

namespace coarsekit {

using Complex = std::complex<double>;

// Blocks whose entries are all at most this large in magnitude are dropped
// after every arithmetic operation.
inline constexpr double kPruneThreshold = 1e-14;

struct BlockKey {
  int row = 0;
  int col = 0;
  auto operator<=>(const BlockKey&) const = default;
};

// Sparse block matrix indexed by points of two finite spaces: block (x,y) is
// the k_row x k_col matrix coefficient T_xy. Blocks are stored sorted by
// (row, col) in one flat column-major coefficient array; every stored block is
// non-zero.
class BandOperator {
 public:
  // Accumulates blocks (repeated keys add up) and canonicalizes on build().
  class Builder {
   public:
    Builder(SpacePtr row_space, SpacePtr col_space, int k_row, int k_col);

    Builder& add_block(int x, int y, const Eigen::MatrixXcd& block);
    BandOperator build(double prune = kPruneThreshold) &&;

   private:
    SpacePtr row_space_;
    SpacePtr col_space_;
    int k_row_;
    int k_col_;
    std::vector<std::pair<BlockKey, Eigen::MatrixXcd>> pending_;
  };

  // The zero operator.
  BandOperator(SpacePtr row_space, SpacePtr col_space, int k_row, int k_col);

  static BandOperator identity(SpacePtr space, int k);

  // e_{(x,v),(y,w)}: sends delta_y (x) w to |w|^2 delta_x (x) v, i.e. the
  // single block (x,y) = v w^*.
  static BandOperator rank_one(SpacePtr row_space, int x, const Eigen::VectorXcd& v,
                               SpacePtr col_space, int y,
                               const Eigen::VectorXcd& w);

  // Splits a dense (n_row*k_row) x (n_col*k_col) matrix into blocks.
  static BandOperator from_dense(SpacePtr row_space, SpacePtr col_space,
                                 int k_row, int k_col,
                                 const Eigen::MatrixXcd& dense,
                                 double prune = kPruneThreshold);

  const SpacePtr& row_space() const { return row_space_; }
  const SpacePtr& col_space() const { return col_space_; }
  int k_row() const { return k_row_; }
  int k_col() const { return k_col_; }
  int rows() const { return row_space_->size() * k_row_; }
  int cols() const { return col_space_->size() * k_col_; }

  std::size_t block_count() const { return keys_.size(); }
  bool is_zero() const { return keys_.empty(); }
  const std::vector<BlockKey>& keys() const { return keys_; }
  Eigen::Map<const Eigen::MatrixXcd> block(std::size_t i) const {
    return {coeffs_.data() + i * block_size(), k_row_, k_col_};
  }
  std::optional<Eigen::MatrixXcd> find(int x, int y) const;

  // Set when row and column spaces coincide: max d(x,y) over stored blocks,
  // 0 for the zero operator.
  std::optional<int> cached_propagation() const { return propagation_; }

  Eigen::MatrixXcd to_dense() const;
  Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const;
  Eigen::VectorXcd apply_adjoint(const Eigen::VectorXcd& v) const;

  // Drops blocks whose entries are all at most `floor` in magnitude.
  BandOperator pruned(double floor) const;
  double max_abs() const;

 private:
  std::size_t block_size() const {
    return static_cast<std::size_t>(k_row_) * k_col_;
  }
  void finalize();

  SpacePtr row_space_;
  SpacePtr col_space_;
  int k_row_ = 1;
  int k_col_ = 1;
  std::vector<BlockKey> keys_;
  std::vector<Complex> coeffs_;
  std::optional<int> propagation_;

  friend BandOperator add(const BandOperator&, const BandOperator&);
  friend BandOperator multiply(const BandOperator&, const BandOperator&);
  friend BandOperator adjoint(const BandOperator&);
  friend BandOperator scale(const BandOperator&, Complex);
};

// prop(T) = max{ d(x,y) : T_xy != 0 }; throws ValidationError when the row
// and column spaces differ.
int propagation(const BandOperator& t);

BandOperator add(const BandOperator& a, const BandOperator& b);
BandOperator subtract(const BandOperator& a, const BandOperator& b);
BandOperator multiply(const BandOperator& a, const BandOperator& b);
BandOperator adjoint(const BandOperator& a);
BandOperator scale(const BandOperator& a, Complex factor);

inline BandOperator operator+(const BandOperator& a, const BandOperator& b) {
  return add(a, b);
}
inline BandOperator operator-(const BandOperator& a, const BandOperator& b) {
  return subtract(a, b);
}
inline BandOperator operator*(const BandOperator& a, const BandOperator& b) {
  return multiply(a, b);
}

// chi_A as a set of points of one space.
class SubsetProjection {
 public:
  SubsetProjection(SpacePtr space, std::vector<int> members);
  static SubsetProjection whole(SpacePtr space);

  const SpacePtr& space() const { return space_; }
  const std::vector<int>& members() const { return members_; }
  bool contains(int x) const { return mask_[x]; }

 private:
  SpacePtr space_;
  std::vector<int> members_;
  std::vector<bool> mask_;
};

// chi_A T chi_B: keeps exactly the blocks with row in A and column in B.
BandOperator compress(const SubsetProjection& a, const BandOperator& t,
                      const SubsetProjection& b);

struct NormOptions {
  double relative_tolerance = 1e-12;
  int max_iterations = 200000;
  // Largest admissible row or column count of the assembled matrix.
  int dense_limit = 4096;
};

// Largest singular value by power iteration on T^* T.
double operator_norm(const BandOperator& t, const NormOptions& options = {});

// Blocks at every pair with d(x,y) <= prop_bound, each kept with probability
// `density`; entries have real and imaginary parts uniform in [0,1).
BandOperator random_band(SpacePtr space, int prop_bound, double density, int k,
                         std::uint64_t seed);

// e_{(x,v),(y,w)} with v, w living in the fiber at x and y.
struct RankOneUnit {
  int x = 0;
  Eigen::VectorXcd v;
  int y = 0;
  Eigen::VectorXcd w;

  BandOperator to_operator(const SpacePtr& space) const;
};

struct OrthogonalSumProbe {
  int max_propagation = 0;
  std::optional<int> separation;  // d(A,B); nullopt = +infinity
  bool separated = false;         // d(A,B) > max_propagation
  std::vector<bool> compression_zero;
  bool passed = false;
};

// Verifies T_i T_j^* = 0 and T_i^* T_j = 0 for i != j (RejectionError naming
// the first offending pair otherwise), then checks that chi_A T_i chi_B
// vanishes for every i whenever d(A,B) exceeds the largest propagation.
OrthogonalSumProbe orthogonal_sum_probe(std::span<const BandOperator> family,
                                        const SubsetProjection& a,
                                        const SubsetProjection& b);

}  // namespace coarsekit
