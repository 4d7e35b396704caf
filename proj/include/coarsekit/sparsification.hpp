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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "coarsekit/metric_space.hpp"

namespace coarsekit {

inline constexpr double kMassTolerance = 1e-12;

// A probability distribution on the points of a finite space.
class MassDistribution {
 public:
  // Throws ValidationError on negative entries, wrong length, or a total that
  // differs from 1 by more than kMassTolerance.
  MassDistribution(SpacePtr space, std::vector<double> mass);

  static MassDistribution uniform(SpacePtr space);

  const SpacePtr& space() const { return space_; }
  const std::vector<double>& mass() const { return mass_; }
  double of(std::span<const int> points) const;

 private:
  SpacePtr space_;
  std::vector<double> mass_;
};

// mu(x) = |xi(x)|^2 for a unit vector xi in l2(X) (x) C^k, laid out with the
// fiber index fastest. Throws ValidationError unless |xi| = 1 within `tol`;
// the masses are divided by |xi|^2 so they sum to one at machine precision.
MassDistribution vector_mass(SpacePtr space, int k, const Eigen::VectorXcd& xi,
                             double tol = 1e-10);

// Disjoint pieces Omega_i; Omega is their union.
struct Decomposition {
  std::vector<std::vector<int>> pieces;

  std::vector<int> omega() const;
  // Sorts each piece and the piece list.
  void canonicalize();
  bool operator==(const Decomposition&) const = default;
};

enum class SparsificationVerdict { kFeasible, kInfeasible };
std::string to_string(SparsificationVerdict verdict);

struct SparsificationResult {
  Decomposition decomposition;
  double kappa_target = 0.0;
  int separation_target = 0;
  double kappa_achieved = 0.0;
  // min over i != j of d(Omega_i, Omega_j); nullopt = +infinity (fewer than
  // two pieces).
  std::optional<int> separation_achieved;
  int D_achieved = 0;
  SparsificationVerdict verdict = SparsificationVerdict::kInfeasible;
};

// Evaluates a decomposition against (kappa, S): feasible when
// mu(Omega) >= kappa (within kMassTolerance) and every pair of pieces is more
// than S apart. Throws ValidationError on overlapping, empty, or out-of-range
// pieces.
SparsificationResult validate_decomposition(const MassDistribution& mu,
                                            Decomposition decomposition,
                                            double kappa, int separation);

struct SparsifyOptions {
  // Largest admissible piece diameter; defaults to the space diameter.
  std::optional<int> max_diameter;
  // Hard cap on the point count accepted by the exact solver.
  int point_cap = 14;
};

// Minimum-D decomposition. For each D = 0, 1, ... a branch-and-bound over
// subsets Omega decides whether some Omega with mu(Omega) >= kappa has all
// components of its "distance <= S" graph of diameter <= D; those components
// are the pieces. Among optimal subsets the lexicographically smallest sorted
// piece list is returned. RejectionError when the space exceeds the cap.
SparsificationResult sparsify_exact(const MassDistribution& mu, double kappa,
                                    int separation,
                                    const SparsifyOptions& options = {});

// Ball-growing heuristic: for radius r = 0, 1, ..., seeds are visited in
// decreasing-mass order and each seed not within S of an accepted piece
// contributes the unassigned points of its r-ball that are more than S from
// every accepted piece. Stops at the first radius that reaches kappa.
SparsificationResult sparsify_greedy(const MassDistribution& mu, double kappa,
                                     int separation,
                                     const SparsifyOptions& options = {});

}  // namespace coarsekit
