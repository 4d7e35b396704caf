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

#include "coarsekit/unitary.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "coarsekit/error.hpp"

namespace coarsekit {

FiniteUnitary::FiniteUnitary(SpacePtr domain, SpacePtr codomain, int k_dom,
                             int k_cod, Eigen::MatrixXcd matrix, double tolerance)
    : domain_(std::move(domain)),
      codomain_(std::move(codomain)),
      k_dom_(k_dom),
      k_cod_(k_cod),
      matrix_(std::move(matrix)) {
  if (!domain_ || !codomain_) throw ValidationError("unitary needs both spaces");
  if (k_dom_ < 1 || k_cod_ < 1) throw ValidationError("fiber dimensions must be positive");
  const Eigen::Index rows = static_cast<Eigen::Index>(codomain_->size()) * k_cod_;
  const Eigen::Index cols = static_cast<Eigen::Index>(domain_->size()) * k_dom_;
  if (rows != cols) {
    throw ValidationError("unitary needs equal total dimensions, got " +
                          std::to_string(rows) + " and " + std::to_string(cols));
  }
  if (matrix_.rows() != rows || matrix_.cols() != cols) {
    throw ValidationError("matrix shape does not match the spaces and fibers");
  }
  if (std::isinf(tolerance)) return;
  const double defect = unitarity_defect();
  if (!(defect <= tolerance)) {
    throw ValidationError("matrix is not unitary (defect " + std::to_string(defect) +
                          ")");
  }
}

double FiniteUnitary::unitarity_defect() const {
  const auto id = Eigen::MatrixXcd::Identity(matrix_.rows(), matrix_.cols());
  const double left = (matrix_.adjoint() * matrix_ - id).norm();
  const double right = (matrix_ * matrix_.adjoint() - id).norm();
  return std::max(left, right);
}

FiniteUnitary FiniteUnitary::identity(SpacePtr space, int k) {
  const Eigen::Index dim = static_cast<Eigen::Index>(space->size()) * k;
  return FiniteUnitary(space, space, k, k, Eigen::MatrixXcd::Identity(dim, dim));
}

FiniteUnitary FiniteUnitary::permutation(const PointMap& bijection, int k) {
  if (!bijection.is_bijective()) {
    throw ValidationError("permutation unitary needs a bijective map");
  }
  const Eigen::Index dim = static_cast<Eigen::Index>(bijection.size()) * k;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (int x = 0; x < bijection.size(); ++x) {
    for (int i = 0; i < k; ++i) {
      m(static_cast<Eigen::Index>(bijection(x)) * k + i,
        static_cast<Eigen::Index>(x) * k + i) = 1.0;
    }
  }
  return FiniteUnitary(bijection.domain(), bijection.codomain(), k, k, std::move(m));
}

FiniteUnitary FiniteUnitary::adjoint() const {
  return FiniteUnitary(codomain_, domain_, k_cod_, k_dom_, matrix_.adjoint(),
                       std::numeric_limits<double>::infinity());
}

BandOperator FiniteUnitary::as_operator(double prune) const {
  return BandOperator::from_dense(codomain_, domain_, k_cod_, k_dom_, matrix_, prune);
}

FiniteUnitary compose(const FiniteUnitary& outer, const FiniteUnitary& inner) {
  if (!same_space(inner.codomain(), outer.domain()) || inner.k_cod() != outer.k_dom()) {
    throw ValidationError("unitaries are not composable");
  }
  return FiniteUnitary(inner.domain(), outer.codomain(), inner.k_dom(), outer.k_cod(),
                       outer.matrix() * inner.matrix());
}

Eigen::MatrixXcd haar_unitary(int dim, Rng& rng) {
  Eigen::MatrixXcd gaussian(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    for (Eigen::Index r = 0; r < dim; ++r) gaussian(r, c) = rng.complex_normal();
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(gaussian);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < dim; ++j) {
    const double magnitude = std::abs(r(j, j));
    if (magnitude > 0.0) q.col(j) *= r(j, j) / magnitude;
  }
  return q;
}

Eigen::MatrixXcd nearest_unitary(const Eigen::MatrixXcd& a) {
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

FiniteUnitary random_unitary(SpacePtr domain, SpacePtr codomain, int k_dom,
                             int k_cod, std::uint64_t seed) {
  const int dim = domain->size() * k_dom;
  if (codomain->size() * k_cod != dim) {
    throw ValidationError("random unitary needs equal total dimensions");
  }
  Rng rng(seed);
  return FiniteUnitary(std::move(domain), std::move(codomain), k_dom, k_cod,
                       haar_unitary(dim, rng));
}

BandOperator conjugate(const FiniteUnitary& u, const BandOperator& t, double prune) {
  if (!same_space(t.row_space(), u.domain()) || !same_space(t.col_space(), u.domain()) ||
      t.k_row() != u.k_dom() || t.k_col() != u.k_dom()) {
    throw ValidationError("conjugate: operator does not act on the unitary's domain");
  }
  const Eigen::MatrixXcd dense = u.matrix() * t.to_dense() * u.matrix().adjoint();
  return BandOperator::from_dense(u.codomain(), u.codomain(), u.k_cod(), u.k_cod(),
                                  dense, prune);
}

}  // namespace coarsekit
