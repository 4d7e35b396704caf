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

#include "coarsekit/categories.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "coarsekit/error.hpp"
#include "coarsekit/parallel.hpp"

namespace coarsekit {

namespace {

std::vector<int> keys_of(const auto& m) {
  std::vector<int> keys;
  keys.reserve(m.size());
  for (const auto& entry : m) keys.push_back(entry.first);
  return keys;
}

PointMap extract(const FiniteUnitary& u, const FunctorFOptions& options,
                 int index) {
  if (options.mode == ExtractionMode::kSupport) {
    return extract_map_support(u, options.support_floor,
                               options.params.v0_index);
  }
  ThresholdExtraction t = extract_map_threshold(u, options.params);
  if (t.verdict == ExtractionVerdict::kUncertified) {
    throw RejectionError(
        "functor F: extraction UNCERTIFIED at index " + std::to_string(index) +
        " (x = " + std::to_string(t.worst_point) +
        ", peak = " + std::to_string(t.worst_peak) + ")");
  }
  return std::move(t.map);
}

void finish(FunctorReport& report) {
  report.within_limits = true;
  for (std::size_t i = 0; i < report.bounds.size(); ++i) {
    if (i < report.limits.size() && report.bounds[i] > report.limits[i]) {
      report.within_limits = false;
    }
  }
  report.uniform_bound =
      report.bounds.empty()
          ? 0
          : *std::max_element(report.bounds.begin(), report.bounds.end());
  report.verdict = stabilization_verdict(report.bounds);
}

}  // namespace

ClosenessVerdict unitaries_close(const FiniteUnitary& u, const FiniteUnitary& v,
                                 int bound) {
  if (!same_space(u.domain(), v.domain()) ||
      !same_space(u.codomain(), v.codomain()) || u.k_dom() != v.k_dom() ||
      u.k_cod() != v.k_cod()) {
    throw ValidationError("unitaries close: shapes differ");
  }
  // Exact zeros only are dropped before multiplying, so the sparse product
  // carries the same entries as the dense one.
  const BandOperator op =
      (adjoint(u.as_operator(0.0)) * v.as_operator(0.0)).pruned(kSupportFloor);
  ClosenessVerdict verdict;
  verdict.propagation = propagation(op);
  verdict.bound = bound;
  verdict.close = verdict.propagation <= bound;
  return verdict;
}

FunctorFResult functor_F(const UnitaryMorphismClass& cls,
                         const FunctorFOptions& options) {
  const std::vector<int> indices = keys_of(cls.representatives);
  std::vector<std::optional<PointMap>> forward(indices.size());
  std::vector<std::optional<PointMap>> backward(indices.size());
  std::vector<int> cover_bound(indices.size(), 0);
  parallel_for(indices.size(), [&](std::size_t i) {
    const FiniteUnitary& u = cls.representatives.at(indices[i]);
    forward[i] = extract(u, options, indices[i]);
    backward[i] = extract(u.adjoint(), options, indices[i]);
    cover_bound[i] = verify_covers(u, *forward[i]).bound;
  });
  FunctorFResult result;
  int radius = 0;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    result.forward.representatives.emplace(indices[i], *forward[i]);
    result.backward.representatives.emplace(indices[i], *backward[i]);
    result.certificates.emplace(
        indices[i], verify_coarse_equivalence(*forward[i], *backward[i]));
    radius = std::max(radius, 2 * cover_bound[i]);
  }
  result.forward.closeness_radius = radius;
  result.backward.closeness_radius = radius;
  result.uniformity = family_uniformity(result.certificates, options.uniformity);
  return result;
}

FunctorUResult functor_U(const CoarseMorphismClass& cls, int block_diameter,
                         const CoveringOptions& options) {
  const std::vector<int> indices = keys_of(cls.representatives);
  std::vector<std::optional<CoveringResult>> coverings(indices.size());
  parallel_for(indices.size(), [&](std::size_t i) {
    try {
      coverings[i] = covering_unitary(cls.representatives.at(indices[i]),
                                      block_diameter, options);
    } catch (const RejectionError& e) {
      throw RejectionError("functor U: index " + std::to_string(indices[i]) +
                           ": " + e.what());
    }
  });
  FunctorUResult result;
  int bound = 0;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    const CoveringResult& c = *coverings[i];
    for (const auto& piece : c.domain_pieces) {
      bound = std::max(bound, set_diameter(*c.unitary.domain(), piece));
    }
    result.cls.representatives.emplace(indices[i], c.unitary);
    result.coverings.emplace(indices[i], std::move(*coverings[i]));
  }
  result.cls.closeness_prop_bound = bound;
  return result;
}

FunctorReport roundtrip_report(const CoarseMorphismClass& cls,
                               int block_diameter,
                               const RoundtripOptions& options) {
  const FunctorUResult u = functor_U(cls, block_diameter, options.covering);
  const FunctorFResult f = functor_F(u.cls, options.extraction);
  FunctorReport report;
  report.direction = "F(U(f))";
  for (const auto& [index, original] : cls.representatives) {
    report.indices.push_back(index);
    report.bounds.push_back(
        closeness_constant(f.forward.representatives.at(index), original));
    report.limits.push_back(2 * u.coverings.at(index).certificate.bound);
  }
  finish(report);
  return report;
}

FunctorReport roundtrip_report(const UnitaryMorphismClass& cls,
                               int block_diameter,
                               const RoundtripOptions& options) {
  const FunctorFResult f = functor_F(cls, options.extraction);
  const FunctorUResult u =
      functor_U(f.forward, block_diameter, options.covering);
  FunctorReport report;
  report.direction = "U(F(U))";
  for (const auto& [index, original] : cls.representatives) {
    report.indices.push_back(index);
    report.bounds.push_back(
        unitaries_close(original, u.cls.representatives.at(index),
                        cls.closeness_prop_bound)
            .propagation);
    report.limits.push_back(cls.closeness_prop_bound);
  }
  finish(report);
  return report;
}

}  // namespace coarsekit
