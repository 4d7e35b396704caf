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

#include <cstdint>

#include <Eigen/Dense>

#include "coarsekit/band_operator.hpp"
#include "coarsekit/coarse_maps.hpp"
#include "coarsekit/metric_space.hpp"
#include "coarsekit/random.hpp"

namespace coarsekit {

inline constexpr double kUnitaryTolerance = 1e-10;

// Dense unitary l2(X) (x) C^k_dom -> l2(Y) (x) C^k_cod. Basis vector
// delta_x (x) e_i sits at column x*k_dom + i, and delta_y (x) e_j at row
// y*k_cod + j.
class FiniteUnitary {
 public:
  // Throws ValidationError on a shape mismatch or when U^*U or UU^* differs
  // from the identity by more than `tolerance` in Frobenius norm.
  FiniteUnitary(SpacePtr domain, SpacePtr codomain, int k_dom, int k_cod,
                Eigen::MatrixXcd matrix, double tolerance = kUnitaryTolerance);

  static FiniteUnitary identity(SpacePtr space, int k = 1);
  // delta_x (x) e_i -> delta_{f(x)} (x) e_i for a bijection f.
  static FiniteUnitary permutation(const PointMap& bijection, int k = 1);

  const SpacePtr& domain() const { return domain_; }
  const SpacePtr& codomain() const { return codomain_; }
  int k_dom() const { return k_dom_; }
  int k_cod() const { return k_cod_; }
  int dim() const { return static_cast<int>(matrix_.rows()); }
  const Eigen::MatrixXcd& matrix() const { return matrix_; }

  // U(delta_x (x) e_i).
  Eigen::VectorXcd image(int x, int i = 0) const {
    return matrix_.col(static_cast<Eigen::Index>(x) * k_dom_ + i);
  }
  // Matrix coefficient U_yx as a k_cod x k_dom block.
  Eigen::MatrixXcd block(int y, int x) const {
    return matrix_.block(static_cast<Eigen::Index>(y) * k_cod_,
                         static_cast<Eigen::Index>(x) * k_dom_, k_cod_, k_dom_);
  }
  double unitarity_defect() const;

  FiniteUnitary adjoint() const;
  // U as a (rectangular) band operator from the domain to the codomain.
  BandOperator as_operator(double prune = kPruneThreshold) const;

 private:
  SpacePtr domain_;
  SpacePtr codomain_;
  int k_dom_;
  int k_cod_;
  Eigen::MatrixXcd matrix_;
};

// outer after inner; the inner codomain must be the outer domain.
FiniteUnitary compose(const FiniteUnitary& outer, const FiniteUnitary& inner);

// Orthonormalized complex Gaussian matrix with the QR phases fixed.
Eigen::MatrixXcd haar_unitary(int dim, Rng& rng);

// Polar factor W V^* of A = W S V^*, the unitary nearest to A.
Eigen::MatrixXcd nearest_unitary(const Eigen::MatrixXcd& a);

FiniteUnitary random_unitary(SpacePtr domain, SpacePtr codomain, int k_dom,
                             int k_cod, std::uint64_t seed);

// U T U^* as an operator on the codomain, pruned at `prune`.
BandOperator conjugate(const FiniteUnitary& u, const BandOperator& t,
                       double prune = kPruneThreshold);

}  // namespace coarsekit
