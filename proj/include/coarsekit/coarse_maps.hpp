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
#include <span>
#include <string>
#include <vector>

#include "coarsekit/metric_space.hpp"

namespace coarsekit {

// A total function between two finite spaces, stored as a table of codomain
// indices.
class PointMap {
 public:
  // Throws ValidationError unless every entry is a valid codomain index.
  PointMap(SpacePtr domain, SpacePtr codomain, std::vector<int> table);

  static PointMap identity(SpacePtr space);

  const SpacePtr& domain() const { return domain_; }
  const SpacePtr& codomain() const { return codomain_; }
  const std::vector<int>& table() const { return table_; }
  int operator()(int x) const { return table_[x]; }
  int size() const { return static_cast<int>(table_.size()); }
  bool is_bijective() const;

  bool operator==(const PointMap& other) const {
    return table_ == other.table_ && same_space(domain_, other.domain_) &&
           same_space(codomain_, other.codomain_);
  }

 private:
  SpacePtr domain_;
  SpacePtr codomain_;
  std::vector<int> table_;
};

// outer after inner.
PointMap compose(const PointMap& outer, const PointMap& inner);

// Monotone control function R -> S(R), tabulated for 0 <= R <= r_max and
// constant beyond.
struct ControlFunction {
  std::vector<int> bounds;

  int r_max() const { return static_cast<int>(bounds.size()) - 1; }
  int operator()(int radius) const;
  bool operator==(const ControlFunction&) const = default;
};

// S(R) = max{ d(f(x1), f(x2)) : d(x1, x2) <= R } for R up to the domain
// diameter, by scanning all pairs.
ControlFunction expansion_profile(const PointMap& f);

// max over x of d(f(x), g(x)); throws ValidationError on mismatched spaces.
int closeness_constant(const PointMap& f, const PointMap& g);

struct CoarseEquivalenceCertificate {
  PointMap f;  // X -> Y
  PointMap g;  // Y -> X
  ControlFunction rho_f;
  ControlFunction rho_g;
  int c_fg = 0;  // max_y d(f(g(y)), y)
  int c_gf = 0;  // max_x d(g(f(x)), x)
};

CoarseEquivalenceCertificate verify_coarse_equivalence(const PointMap& f,
                                                       const PointMap& g);

enum class UniformityVerdict { kBounded, kDivergent, kInconclusive };

std::string to_string(UniformityVerdict verdict);

// Finite stand-in for "uniformly bounded across the family". With values
// v_1..v_m listed in index order: DIVERGENT when m >= 2 and the values
// strictly increase; BOUNDED when the running maximum does not grow over the
// top half (the last ceil(m/2) indices); INCONCLUSIVE otherwise.
UniformityVerdict stabilization_verdict(std::span<const int> values);

// Overall verdict: DIVERGENT if any input is, BOUNDED if all are.
UniformityVerdict combine_verdicts(std::span<const UniformityVerdict> verdicts);

struct QuantitySeries {
  std::string name;
  std::vector<int> values;  // one per family index
  int sup = 0;
  UniformityVerdict verdict = UniformityVerdict::kBounded;
};

struct UniformityReport {
  std::vector<int> indices;
  int r_max = 0;
  // rho_f(R) and rho_g(R) across indices, one series per R in [0, r_max].
  std::vector<QuantitySeries> rho_f;
  std::vector<QuantitySeries> rho_g;
  QuantitySeries c_fg;
  QuantitySeries c_gf;
  UniformityVerdict verdict = UniformityVerdict::kBounded;
};

struct UniformityOptions {
  // When set, consecutive truncations must agree up to this displacement on
  // the smaller domain (maps compatible with the prefix embeddings).
  std::optional<int> embedding_tolerance;
  // Largest R examined; defaults to the smallest domain diameter across the
  // family for rho_f (and codomain diameter for rho_g).
  std::optional<int> r_max;
};

UniformityReport family_uniformity(
    const std::map<int, CoarseEquivalenceCertificate>& certificates,
    const UniformityOptions& options = {});

// Throws ValidationError when the maps at consecutive indices disagree by more
// than `tolerance` on the smaller domain, or when the spaces are not nested.
void check_embedding_compatibility(const std::map<int, PointMap>& maps,
                                   int tolerance);

}  // namespace coarsekit
