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
#include <string>
#include <vector>

#include <json.hpp>

#include "coarsekit/band_operator.hpp"
#include "coarsekit/categories.hpp"
#include "coarsekit/coarse_maps.hpp"
#include "coarsekit/corpus.hpp"
#include "coarsekit/metric_space.hpp"
#include "coarsekit/recipes.hpp"
#include "coarsekit/rigidity.hpp"
#include "coarsekit/sparsification.hpp"
#include "coarsekit/unitary.hpp"

namespace coarsekit {

using Json = nlohmann::json;

// Spaces known to a run, keyed by label. Documents refer to spaces either by
// label or by embedding the space object.
class SpaceRegistry {
 public:
  // Returns the registered instance; throws ValidationError when a different
  // space already uses the label.
  SpacePtr add(SpacePtr space);
  // Registers every space of a document's "spaces" array, if present.
  void add_document(const Json& doc);
  SpacePtr resolve(const std::string& label) const;
  // A label string or an embedded space object.
  SpacePtr resolve_ref(const Json& ref);

  std::size_t size() const { return spaces_.size(); }

 private:
  std::map<std::string, SpacePtr> spaces_;
};

// All readers throw ValidationError on malformed documents.

Json to_json(const FiniteMetricSpace& space);
SpacePtr space_from_json(const Json& j);

Json to_json(const SpaceFamily& family);
SpaceFamily family_from_json(const Json& j, SpaceRegistry& registry);

Json to_json(const PointMap& f);
PointMap map_from_json(const Json& j, SpaceRegistry& registry);

Json to_json(const MapFamily& family);
MapFamily map_family_from_json(const Json& j, SpaceRegistry& registry);

Json to_json(const BandOperator& t);
BandOperator operator_from_json(const Json& j, SpaceRegistry& registry);

Json to_json(const FiniteUnitary& u);
FiniteUnitary unitary_from_json(const Json& j, SpaceRegistry& registry,
                                double tolerance = kUnitaryTolerance);

struct SparsificationInstance {
  MassDistribution mass;
  double kappa = 0.0;
  int separation = 0;
  std::optional<int> max_diameter;
};
// "mass" is an array of point masses, the string "uniform", or a unit vector
// {"k", "re", "im"} whose squared fiber norms give the masses.
SparsificationInstance sparsification_instance_from_json(
    const Json& j, SpaceRegistry& registry);

Json to_json(const GeometryProfile& profile);
Json to_json(const ControlFunction& rho);
Json to_json(const QuantitySeries& series);
Json to_json(const UniformityReport& report);
Json to_json(const CoarseEquivalenceCertificate& certificate);
Json to_json(const Decomposition& decomposition);
Json to_json(const SparsificationResult& result);
Json to_json(const OrthogonalSumProbe& probe);
Json to_json(const ThresholdExtraction& extraction);
Json to_json(const CoveringCertificate& certificate);
Json to_json(const LocalityAudit& audit);
Json to_json(const LocalityFamilyAudit& audit);
Json to_json(const ConjugationBoundReport& report);
Json to_json(const FunctorReport& report);

}  // namespace coarsekit
