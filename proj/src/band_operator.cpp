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

#include "coarsekit/band_operator.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "coarsekit/error.hpp"
#include "coarsekit/random.hpp"

namespace coarsekit {

namespace {

void require_space(const SpacePtr& space) {
  if (!space) throw ValidationError("operator needs index spaces");
}

void require_fiber(int k) {
  if (k < 1) throw ValidationError("fiber dimension must be positive");
}

double block_max_abs(const Complex* data, std::size_t count) {
  double best = 0.0;
  for (std::size_t i = 0; i < count; ++i) best = std::max(best, std::abs(data[i]));
  return best;
}

void require_compatible_shape(const BandOperator& a, const BandOperator& b,
                              const char* what) {
  if (!same_space(a.row_space(), b.row_space()) ||
      !same_space(a.col_space(), b.col_space()) || a.k_row() != b.k_row() ||
      a.k_col() != b.k_col()) {
    throw ValidationError(std::string(what) + ": operators have different shapes");
  }
}

}  // namespace

BandOperator::Builder::Builder(SpacePtr row_space, SpacePtr col_space, int k_row,
                               int k_col)
    : row_space_(std::move(row_space)),
      col_space_(std::move(col_space)),
      k_row_(k_row),
      k_col_(k_col) {
  require_space(row_space_);
  require_space(col_space_);
  require_fiber(k_row_);
  require_fiber(k_col_);
}

BandOperator::Builder& BandOperator::Builder::add_block(
    int x, int y, const Eigen::MatrixXcd& block) {
  if (!row_space_->contains(x) || !col_space_->contains(y)) {
    throw ValidationError("block index (" + std::to_string(x) + "," +
                          std::to_string(y) + ") out of range");
  }
  if (block.rows() != k_row_ || block.cols() != k_col_) {
    throw ValidationError("block has shape " + std::to_string(block.rows()) + "x" +
                          std::to_string(block.cols()) + ", expected " +
                          std::to_string(k_row_) + "x" + std::to_string(k_col_));
  }
  pending_.emplace_back(BlockKey{x, y}, block);
  return *this;
}

BandOperator BandOperator::Builder::build(double prune) && {
  BandOperator out(row_space_, col_space_, k_row_, k_col_);
  std::stable_sort(pending_.begin(), pending_.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  const std::size_t size = out.block_size();
  for (std::size_t i = 0; i < pending_.size();) {
    Eigen::MatrixXcd sum = pending_[i].second;
    std::size_t j = i + 1;
    while (j < pending_.size() && pending_[j].first == pending_[i].first) {
      sum += pending_[j].second;
      ++j;
    }
    if (block_max_abs(sum.data(), size) > prune) {
      out.keys_.push_back(pending_[i].first);
      out.coeffs_.insert(out.coeffs_.end(), sum.data(), sum.data() + size);
    }
    i = j;
  }
  out.finalize();
  return out;
}

BandOperator::BandOperator(SpacePtr row_space, SpacePtr col_space, int k_row,
                           int k_col)
    : row_space_(std::move(row_space)),
      col_space_(std::move(col_space)),
      k_row_(k_row),
      k_col_(k_col) {
  require_space(row_space_);
  require_space(col_space_);
  require_fiber(k_row_);
  require_fiber(k_col_);
  finalize();
}

void BandOperator::finalize() {
  if (same_space(row_space_, col_space_)) {
    int best = 0;
    for (const auto& key : keys_) {
      best = std::max(best, row_space_->distance(key.row, key.col));
    }
    propagation_ = best;
  } else {
    propagation_.reset();
  }
}

BandOperator BandOperator::identity(SpacePtr space, int k) {
  Builder builder(space, space, k, k);
  const Eigen::MatrixXcd one = Eigen::MatrixXcd::Identity(k, k);
  for (int x = 0; x < space->size(); ++x) builder.add_block(x, x, one);
  return std::move(builder).build();
}

BandOperator BandOperator::rank_one(SpacePtr row_space, int x,
                                    const Eigen::VectorXcd& v, SpacePtr col_space,
                                    int y, const Eigen::VectorXcd& w) {
  Builder builder(std::move(row_space), std::move(col_space),
                  static_cast<int>(v.size()), static_cast<int>(w.size()));
  builder.add_block(x, y, v * w.adjoint());
  return std::move(builder).build(0.0);
}

BandOperator BandOperator::from_dense(SpacePtr row_space, SpacePtr col_space,
                                      int k_row, int k_col,
                                      const Eigen::MatrixXcd& dense, double prune) {
  Builder builder(row_space, col_space, k_row, k_col);
  if (dense.rows() != row_space->size() * k_row ||
      dense.cols() != col_space->size() * k_col) {
    throw ValidationError("dense matrix does not match the operator shape");
  }
  for (int x = 0; x < row_space->size(); ++x) {
    for (int y = 0; y < col_space->size(); ++y) {
      auto block = dense.block(x * k_row, y * k_col, k_row, k_col);
      if (block.cwiseAbs().maxCoeff() > prune) builder.add_block(x, y, block);
    }
  }
  return std::move(builder).build(prune);
}

std::optional<Eigen::MatrixXcd> BandOperator::find(int x, int y) const {
  auto it = std::lower_bound(keys_.begin(), keys_.end(), BlockKey{x, y});
  if (it == keys_.end() || *it != BlockKey{x, y}) return std::nullopt;
  return Eigen::MatrixXcd(block(static_cast<std::size_t>(it - keys_.begin())));
}

Eigen::MatrixXcd BandOperator::to_dense() const {
  Eigen::MatrixXcd dense = Eigen::MatrixXcd::Zero(rows(), cols());
  for (std::size_t i = 0; i < keys_.size(); ++i) {
    dense.block(keys_[i].row * k_row_, keys_[i].col * k_col_, k_row_, k_col_) =
        block(i);
  }
  return dense;
}

Eigen::VectorXcd BandOperator::apply(const Eigen::VectorXcd& v) const {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(rows());
  for (std::size_t i = 0; i < keys_.size(); ++i) {
    out.segment(keys_[i].row * k_row_, k_row_) +=
        block(i) * v.segment(keys_[i].col * k_col_, k_col_);
  }
  return out;
}

Eigen::VectorXcd BandOperator::apply_adjoint(const Eigen::VectorXcd& v) const {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(cols());
  for (std::size_t i = 0; i < keys_.size(); ++i) {
    out.segment(keys_[i].col * k_col_, k_col_) +=
        block(i).adjoint() * v.segment(keys_[i].row * k_row_, k_row_);
  }
  return out;
}

BandOperator BandOperator::pruned(double floor) const {
  BandOperator out(row_space_, col_space_, k_row_, k_col_);
  const std::size_t size = block_size();
  for (std::size_t i = 0; i < keys_.size(); ++i) {
    const Complex* data = coeffs_.data() + i * size;
    if (block_max_abs(data, size) > floor) {
      out.keys_.push_back(keys_[i]);
      out.coeffs_.insert(out.coeffs_.end(), data, data + size);
    }
  }
  out.finalize();
  return out;
}

double BandOperator::max_abs() const {
  return block_max_abs(coeffs_.data(), coeffs_.size());
}

int propagation(const BandOperator& t) {
  if (!t.cached_propagation()) {
    throw ValidationError(
        "propagation needs an operator whose row and column spaces coincide");
  }
  return *t.cached_propagation();
}

BandOperator add(const BandOperator& a, const BandOperator& b) {
  require_compatible_shape(a, b, "add");
  BandOperator out(a.row_space_, a.col_space_, a.k_row_, a.k_col_);
  const std::size_t size = a.block_size();
  std::vector<Complex> sum(size);
  std::size_t i = 0;
  std::size_t j = 0;
  auto emit = [&](const BlockKey& key, const Complex* data) {
    if (block_max_abs(data, size) > kPruneThreshold) {
      out.keys_.push_back(key);
      out.coeffs_.insert(out.coeffs_.end(), data, data + size);
    }
  };
  while (i < a.keys_.size() || j < b.keys_.size()) {
    if (j == b.keys_.size() || (i < a.keys_.size() && a.keys_[i] < b.keys_[j])) {
      emit(a.keys_[i], a.coeffs_.data() + i * size);
      ++i;
    } else if (i == a.keys_.size() || b.keys_[j] < a.keys_[i]) {
      emit(b.keys_[j], b.coeffs_.data() + j * size);
      ++j;
    } else {
      for (std::size_t e = 0; e < size; ++e) {
        sum[e] = a.coeffs_[i * size + e] + b.coeffs_[j * size + e];
      }
      emit(a.keys_[i], sum.data());
      ++i;
      ++j;
    }
  }
  out.finalize();
  return out;
}

BandOperator scale(const BandOperator& a, Complex factor) {
  BandOperator out = a;
  for (auto& c : out.coeffs_) c *= factor;
  return out.pruned(kPruneThreshold);
}

BandOperator subtract(const BandOperator& a, const BandOperator& b) {
  return add(a, scale(b, -1.0));
}

BandOperator multiply(const BandOperator& a, const BandOperator& b) {
  if (!same_space(a.col_space_, b.row_space_) || a.k_col_ != b.k_row_) {
    throw ValidationError("multiply: inner spaces or fiber dimensions differ");
  }
  BandOperator out(a.row_space_, b.col_space_, a.k_row_, b.k_col_);
  const int inner = b.row_space_->size();
  std::vector<std::size_t> row_start(inner + 1, 0);
  for (const auto& key : b.keys_) ++row_start[key.row + 1];
  for (int z = 0; z < inner; ++z) row_start[z + 1] += row_start[z];

  const std::size_t out_size = out.block_size();
  std::map<int, Eigen::MatrixXcd> row_acc;
  for (std::size_t i = 0; i < a.keys_.size();) {
    const int x = a.keys_[i].row;
    row_acc.clear();
    for (; i < a.keys_.size() && a.keys_[i].row == x; ++i) {
      const int z = a.keys_[i].col;
      auto lhs = a.block(i);
      for (std::size_t j = row_start[z]; j < row_start[z + 1]; ++j) {
        auto [it, inserted] = row_acc.try_emplace(b.keys_[j].col);
        if (inserted) {
          it->second.noalias() = lhs * b.block(j);
        } else {
          it->second.noalias() += lhs * b.block(j);
        }
      }
    }
    for (const auto& [y, block] : row_acc) {
      if (block_max_abs(block.data(), out_size) > kPruneThreshold) {
        out.keys_.push_back({x, y});
        out.coeffs_.insert(out.coeffs_.end(), block.data(), block.data() + out_size);
      }
    }
  }
  out.finalize();
  return out;
}

BandOperator adjoint(const BandOperator& a) {
  BandOperator::Builder builder(a.col_space_, a.row_space_, a.k_col_, a.k_row_);
  for (std::size_t i = 0; i < a.keys_.size(); ++i) {
    builder.add_block(a.keys_[i].col, a.keys_[i].row, a.block(i).adjoint());
  }
  return std::move(builder).build(0.0);
}

SubsetProjection::SubsetProjection(SpacePtr space, std::vector<int> members)
    : space_(std::move(space)), members_(std::move(members)) {
  require_space(space_);
  mask_.assign(space_->size(), false);
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  for (int x : members_) {
    if (!space_->contains(x)) {
      throw ValidationError("subset member " + std::to_string(x) +
                            " is not a point of " + space_->label());
    }
    mask_[x] = true;
  }
}

SubsetProjection SubsetProjection::whole(SpacePtr space) {
  std::vector<int> all(space->size());
  for (int x = 0; x < space->size(); ++x) all[x] = x;
  return SubsetProjection(std::move(space), std::move(all));
}

BandOperator compress(const SubsetProjection& a, const BandOperator& t,
                      const SubsetProjection& b) {
  if (!same_space(a.space(), t.row_space()) || !same_space(b.space(), t.col_space())) {
    throw ValidationError("compress: subsets are not over the operator's spaces");
  }
  BandOperator::Builder builder(t.row_space(), t.col_space(), t.k_row(), t.k_col());
  for (std::size_t i = 0; i < t.block_count(); ++i) {
    const auto& key = t.keys()[i];
    if (a.contains(key.row) && b.contains(key.col)) {
      builder.add_block(key.row, key.col, t.block(i));
    }
  }
  return std::move(builder).build(0.0);
}

double operator_norm(const BandOperator& t, const NormOptions& options) {
  if (t.rows() > options.dense_limit || t.cols() > options.dense_limit) {
    throw RejectionError("operator dimension " + std::to_string(t.rows()) + "x" +
                         std::to_string(t.cols()) + " exceeds the dense limit " +
                         std::to_string(options.dense_limit) +
                         "; evaluate a compression instead");
  }
  if (t.is_zero()) return 0.0;
  Rng rng(0x6e6f726dULL);
  Eigen::VectorXcd x(t.cols());
  for (auto& c : x) c = rng.complex_normal();
  x.normalize();
  double previous = -1.0;
  double estimate = 0.0;
  for (int it = 0; it < options.max_iterations; ++it) {
    const Eigen::VectorXcd y = t.apply(x);
    estimate = y.squaredNorm();
    Eigen::VectorXcd z = t.apply_adjoint(y);
    const double z_norm = z.norm();
    if (z_norm == 0.0) return std::sqrt(estimate);
    x = z / z_norm;
    if (std::abs(estimate - previous) <= options.relative_tolerance * estimate) break;
    previous = estimate;
  }
  return std::sqrt(estimate);
}

BandOperator random_band(SpacePtr space, int prop_bound, double density, int k,
                         std::uint64_t seed) {
  if (prop_bound < 0) throw ValidationError("prop_bound must be non-negative");
  if (!(density > 0.0 && density <= 1.0)) {
    throw ValidationError("density must lie in (0, 1]");
  }
  Rng rng(seed);
  BandOperator::Builder builder(space, space, k, k);
  Eigen::MatrixXcd block(k, k);
  for (int x = 0; x < space->size(); ++x) {
    for (int y = 0; y < space->size(); ++y) {
      if (space->distance(x, y) > prop_bound) continue;
      if (density < 1.0 && !rng.bernoulli(density)) continue;
      for (int c = 0; c < k; ++c) {
        for (int r = 0; r < k; ++r) {
          const double re = rng.uniform();
          const double im = rng.uniform();
          block(r, c) = Complex(re, im);
        }
      }
      builder.add_block(x, y, block);
    }
  }
  return std::move(builder).build();
}

BandOperator RankOneUnit::to_operator(const SpacePtr& space) const {
  if (v.size() == 0 || w.size() == 0 || v.norm() == 0.0 || w.norm() == 0.0) {
    throw ValidationError("rank-one unit needs non-zero fiber vectors");
  }
  return BandOperator::rank_one(space, x, v, space, y, w);
}

OrthogonalSumProbe orthogonal_sum_probe(std::span<const BandOperator> family,
                                        const SubsetProjection& a,
                                        const SubsetProjection& b) {
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t j = 0; j < family.size(); ++j) {
      if (i == j) continue;
      if (!(family[i] * adjoint(family[j])).is_zero() ||
          !(adjoint(family[i]) * family[j]).is_zero()) {
        throw RejectionError("family is not mutually orthogonal: operators " +
                             std::to_string(i) + " and " + std::to_string(j));
      }
    }
  }
  OrthogonalSumProbe probe;
  for (const auto& t : family) {
    probe.max_propagation = std::max(probe.max_propagation, propagation(t));
  }
  probe.separation = set_distance(*a.space(), a.members(), b.members());
  probe.separated = !probe.separation || *probe.separation > probe.max_propagation;
  probe.passed = true;
  for (const auto& t : family) {
    const bool zero = compress(a, t, b).is_zero();
    probe.compression_zero.push_back(zero);
    if (probe.separated && !zero) probe.passed = false;
  }
  return probe;
}

}  // namespace coarsekit
