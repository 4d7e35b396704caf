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

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace coarsekit {

// A finite, uniformly discrete metric space with integer distances. Points are
// the indices 0..size()-1. Instances are immutable and shared by pointer.
class FiniteMetricSpace {
 public:
  // Validates the matrix (row-major, n*n entries); throws ValidationError
  // listing the first violations when an axiom fails.
  static FiniteMetricSpace create(std::string label, int n,
                                  std::vector<int> dist);

  // For generators whose output is a metric by construction (graph and word
  // metrics). Only the shape is checked.
  static FiniteMetricSpace trusted(std::string label, int n,
                                   std::vector<int> dist);

  const std::string& label() const { return label_; }
  int size() const { return n_; }
  int distance(int x, int y) const {
    return dist_[static_cast<std::size_t>(x) * n_ + y];
  }
  std::span<const int> row(int x) const {
    return {dist_.data() + static_cast<std::size_t>(x) * n_,
            static_cast<std::size_t>(n_)};
  }
  const std::vector<int>& distances() const { return dist_; }
  int diameter() const { return diameter_; }
  bool contains(int x) const { return x >= 0 && x < n_; }

  bool operator==(const FiniteMetricSpace& other) const {
    return n_ == other.n_ && label_ == other.label_ && dist_ == other.dist_;
  }

 private:
  FiniteMetricSpace(std::string label, int n, std::vector<int> dist);

  std::string label_;
  int n_ = 0;
  std::vector<int> dist_;
  int diameter_ = 0;
};

using SpacePtr = std::shared_ptr<const FiniteMetricSpace>;

SpacePtr share(FiniteMetricSpace space);

// Pointer identity or equal contents.
bool same_space(const SpacePtr& a, const SpacePtr& b);

struct MetricViolation {
  enum class Kind { kShape, kNegative, kDiagonal, kDiscreteness, kSymmetry,
                    kTriangle };
  Kind kind;
  // Witness points; unused coordinates are -1. For kTriangle,
  // dist(x,z) > dist(x,y) + dist(y,z).
  int x = -1;
  int y = -1;
  int z = -1;

  std::string describe() const;
  bool operator==(const MetricViolation&) const = default;
};

// Every violated axiom with a witness. An empty result means the matrix is a
// uniformly discrete integer metric. Triangle violations are reported once per
// offending (x,z) pair with the smallest witness y.
std::vector<MetricViolation> validate_metric(int n, std::span<const int> dist);
std::vector<MetricViolation> validate_metric(const FiniteMetricSpace& space);

// counts[R] = max over x of |B(x,R)| for 0 <= R <= r_max.
struct GeometryProfile {
  std::vector<int> counts;

  int r_max() const { return static_cast<int>(counts.size()) - 1; }
  int at(int radius) const;
  bool operator==(const GeometryProfile&) const = default;
};

GeometryProfile bounded_geometry_profile(const FiniteMetricSpace& space,
                                         int r_max);

// Pointwise maximum; the result covers the longer of the two radius ranges.
GeometryProfile profile_envelope(const GeometryProfile& a,
                                 const GeometryProfile& b);

// d(A,B) = min over pairs; nullopt encodes +infinity (an empty side).
std::optional<int> set_distance(const FiniteMetricSpace& space,
                                std::span<const int> a, std::span<const int> b);

// Diameter of a subset; 0 for empty and singleton sets.
int set_diameter(const FiniteMetricSpace& space, std::span<const int> points);

// True when `small` is the leading principal submatrix of `big`, i.e. the
// first small.size() points of `big` carry exactly the metric of `small`.
bool embeds_as_prefix(const FiniteMetricSpace& small,
                      const FiniteMetricSpace& big);

}  // namespace coarsekit
