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

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "coarsekit/band_operator.hpp"
#include "coarsekit/coarse_maps.hpp"
#include "coarsekit/metric_space.hpp"
#include "coarsekit/unitary.hpp"

namespace coarsekit {

// Generator e_{(x,e_i),(y,e_j)} of the matrix algebra over l2(X) (x) C^k.
struct MatrixUnitIndex {
  int x = 0;
  int i = 0;
  int y = 0;
  int j = 0;
  auto operator<=>(const MatrixUnitIndex&) const = default;
};

// A *-homomorphism phi restricted to the matrix units of the domain, given by
// its images over the codomain. Images are produced on demand.
class IsomorphismTable {
 public:
  using ImageFn = std::function<BandOperator(const MatrixUnitIndex&)>;

  IsomorphismTable(SpacePtr domain, int k_dom, SpacePtr codomain, int k_cod,
                   ImageFn images);

  // Explicit images; throws ValidationError unless every generator is present
  // with the codomain shape.
  static IsomorphismTable from_images(
      SpacePtr domain, int k_dom, SpacePtr codomain, int k_cod,
      std::map<MatrixUnitIndex, BandOperator> images);

  // phi(e) = V e V^*.
  static IsomorphismTable conjugation(const FiniteUnitary& v);

  const SpacePtr& domain() const { return domain_; }
  const SpacePtr& codomain() const { return codomain_; }
  int k_dom() const { return k_dom_; }
  int k_cod() const { return k_cod_; }
  int generator_count() const;

  BandOperator generator(const MatrixUnitIndex& e) const;
  // Throws ValidationError on an out-of-range generator or a mis-shaped image.
  BandOperator image(const MatrixUnitIndex& e) const;

 private:
  SpacePtr domain_;
  SpacePtr codomain_;
  int k_dom_;
  int k_cod_;
  ImageFn images_;
};

struct StarCheckOptions {
  int samples = 64;
  double tolerance = 1e-10;
  std::uint64_t seed = 0;
};

// First sampled failure of phi(ab) = phi(a)phi(b) or phi(a^*) = phi(a)^*,
// described with its generators; nullopt when every sample passes.
std::optional<std::string> check_star_compatibility(
    const IsomorphismTable& phi, const StarCheckOptions& options = {});

struct RecoveryOptions {
  StarCheckOptions star;
  double rank_tolerance = 1e-8;
  double tolerance = 1e-10;
};

struct RecoveryResult {
  FiniteUnitary unitary;
  // max over generators of |U e U^* - phi(e)| (Frobenius).
  double max_generator_defect = 0.0;
  MatrixUnitIndex worst_generator;
};

// Spatial implementation of phi from the base point x0 = 0 and the first
// fiber vector. Throws RejectionError when phi(e_{(0,0),(0,0)}) is not rank
// one, on a compatibility failure, or when the result does not implement phi.
RecoveryResult recover_unitary(const IsomorphismTable& phi,
                               const RecoveryOptions& options = {});

struct CoefficientTuple {
  int x1 = 0;
  Eigen::VectorXcd v1;
  int x2 = 0;
  Eigen::VectorXcd v2;
  int y1 = 0;
  Eigen::VectorXcd w1;
  int y2 = 0;
  Eigen::VectorXcd w2;
};

struct CoefficientCheck {
  Complex lhs;
  Complex rhs;
  double defect = 0.0;
};

// Compares the matrix element of U e_{(x1,v1),(x2,v2)} U^* between
// delta_{y1} (x) w1 and delta_{y2} (x) w2, evaluated by applying operators,
// with the product <delta_{y1} (x) w1, U(delta_{x1} (x) v1)>
// <U(delta_{x2} (x) v2), delta_{y2} (x) w2>.
CoefficientCheck coefficient_formula_check(const FiniteUnitary& u,
                                           const CoefficientTuple& t);

struct ExtractionParams {
  double c = 0.5;
  int v0_index = 0;
};

enum class ExtractionVerdict { kCertified, kUncertified };
std::string to_string(ExtractionVerdict verdict);

struct ThresholdExtraction {
  PointMap map;
  // |xi_x(f(x))| per domain point.
  std::vector<double> peak_norms;
  ExtractionVerdict verdict = ExtractionVerdict::kCertified;
  int worst_point = 0;
  double worst_peak = 0.0;
};

// f(x) = argmax_y |U(delta_x (x) e_v0)(y)|, ties to the smallest y.
ThresholdExtraction extract_map_threshold(const FiniteUnitary& u,
                                          const ExtractionParams& params);

// f(x) = smallest y with |U(delta_x (x) e_v0)(y)| > eta; throws
// RejectionError naming x when there is none.
PointMap extract_map_support(const FiniteUnitary& u, double eta,
                             int v0_index = 0);

struct LocalityAuditOptions {
  double delta = 0.5;
  // Orthonormalized basis of E_x per domain point, as columns; defaults to
  // the first fiber vector.
  std::vector<Eigen::MatrixXcd> fiber_bases;
  // Largest R; defaults to the domain diameter.
  std::optional<int> r_max;
};

struct LocalityAudit {
  double delta = 0.0;
  // spread[R] = S(R, delta).
  std::vector<int> spread;
  // |S_x|: points y where U_yx restricted to E_x has norm >= delta.
  std::vector<int> support_sizes;
};

LocalityAudit locality_audit(const FiniteUnitary& u,
                             const LocalityAuditOptions& options = {});

struct LocalityFamilyAudit {
  std::vector<int> indices;
  std::vector<QuantitySeries> spread;  // one series per R
  UniformityVerdict verdict = UniformityVerdict::kBounded;
};

LocalityFamilyAudit locality_family_audit(
    const std::map<int, LocalityAudit>& audits);

inline constexpr double kSupportFloor = 1e-12;

struct CoveringCertificate {
  int bound = 0;
  // (x, y) pairs with U_yx != 0 and d(f(x), y) above the claimed bound.
  std::vector<std::pair<int, int>> witnesses;
};

// C = max d(f(x), y) over blocks with |U_yx| > floor (Frobenius).
CoveringCertificate verify_covers(const FiniteUnitary& u, const PointMap& f,
                                  std::optional<int> claimed = std::nullopt,
                                  double floor = kSupportFloor);

struct CoveringOptions {
  int fiber_cap = 16;
  int diameter_retries = 1;
  std::uint64_t seed = 0;
};

struct CoveringResult {
  FiniteUnitary unitary;
  CoveringCertificate certificate;
  std::vector<std::vector<int>> codomain_pieces;
  std::vector<std::vector<int>> domain_pieces;
  int block_diameter = 0;
};

// Unitary covering f built blockwise over a greedy partition of the codomain
// into pieces of diameter <= max_block_diameter. Fiber dimensions are fixed to
// k_dom = |Y|/g, k_cod = |X|/g with g = gcd(|X|, |Y|). Throws RejectionError
// on the cardinality obstruction or when no balanced partition is found.
CoveringResult covering_unitary(const PointMap& f, int max_block_diameter,
                                const CoveringOptions& options = {});

struct ConjugationBoundReport {
  int prop_t = 0;
  int prop_conjugate = 0;
  int bound = 0;
  bool holds = false;
};

// prop(U T U^*) <= rho(prop(T)) + 2C after pruning at kSupportFloor.
ConjugationBoundReport conjugation_propagation_bound(const FiniteUnitary& u,
                                                     const ControlFunction& rho,
                                                     int c,
                                                     const BandOperator& t);

}  // namespace coarsekit
