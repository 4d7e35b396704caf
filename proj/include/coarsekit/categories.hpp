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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coarsekit/coarse_maps.hpp"
#include "coarsekit/rigidity.hpp"
#include "coarsekit/unitary.hpp"

namespace coarsekit {

// Representatives per family index; two classes are identified when their
// representatives are within closeness_radius at every index.
struct CoarseMorphismClass {
  std::map<int, PointMap> representatives;
  int closeness_radius = 0;
};

struct UnitaryMorphismClass {
  std::map<int, FiniteUnitary> representatives;
  int closeness_prop_bound = 0;
};

struct ClosenessVerdict {
  int propagation = 0;
  int bound = 0;
  bool close = false;
};

// prop(U^* V) after pruning at kSupportFloor, compared with `bound`.
ClosenessVerdict unitaries_close(const FiniteUnitary& u, const FiniteUnitary& v,
                                 int bound);

enum class ExtractionMode { kThreshold, kSupport };

struct FunctorFOptions {
  ExtractionMode mode = ExtractionMode::kThreshold;
  ExtractionParams params;
  double support_floor = kSupportFloor;
  UniformityOptions uniformity;
};

struct FunctorFResult {
  CoarseMorphismClass forward;   // extracted from U
  CoarseMorphismClass backward;  // extracted from U^*
  std::map<int, CoarseEquivalenceCertificate> certificates;
  UniformityReport uniformity;
};

// Extracts f from each U and g from U^*. Throws RejectionError naming the
// index when a threshold extraction is UNCERTIFIED.
FunctorFResult functor_F(const UnitaryMorphismClass& cls,
                         const FunctorFOptions& options = {});

struct FunctorUResult {
  UnitaryMorphismClass cls;
  std::map<int, CoveringResult> coverings;
};

// Covering unitaries at every index with the shared block diameter D. The
// class bound is the largest domain piece diameter.
FunctorUResult functor_U(const CoarseMorphismClass& cls, int block_diameter,
                         const CoveringOptions& options = {});

struct RoundtripOptions {
  FunctorFOptions extraction;
  CoveringOptions covering;
};

struct FunctorReport {
  std::string direction;  // "F(U(f))" or "U(F(U))"
  std::vector<int> indices;
  // closeness_constant(F(U(f)), f) or prop(U^* U') per index.
  std::vector<int> bounds;
  // 2C per index for maps; the class bound for unitaries.
  std::vector<int> limits;
  bool within_limits = true;
  int uniform_bound = 0;
  UniformityVerdict verdict = UniformityVerdict::kBounded;
};

FunctorReport roundtrip_report(const CoarseMorphismClass& cls,
                               int block_diameter,
                               const RoundtripOptions& options = {});

FunctorReport roundtrip_report(const UnitaryMorphismClass& cls,
                               int block_diameter,
                               const RoundtripOptions& options = {});

}  // namespace coarsekit
