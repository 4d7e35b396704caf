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

#include "coarsekit/metric_space.hpp"

#include <algorithm>
#include <sstream>

#include "coarsekit/error.hpp"

namespace coarsekit {

namespace {

std::string summarize(const std::vector<MetricViolation>& violations) {
  std::ostringstream out;
  out << "metric validation failed (" << violations.size() << " violation"
      << (violations.size() == 1 ? "" : "s") << ")";
  const std::size_t shown = std::min<std::size_t>(violations.size(), 5);
  for (std::size_t i = 0; i < shown; ++i) {
    out << "; " << violations[i].describe();
  }
  return out.str();
}

void check_shape(int n, const std::vector<int>& dist) {
  if (n < 1) throw ValidationError("metric space needs at least one point");
  if (dist.size() != static_cast<std::size_t>(n) * n) {
    throw ValidationError("distance matrix has " + std::to_string(dist.size()) +
                          " entries, expected " + std::to_string(n) + "x" +
                          std::to_string(n));
  }
}

}  // namespace

FiniteMetricSpace::FiniteMetricSpace(std::string label, int n,
                                     std::vector<int> dist)
    : label_(std::move(label)), n_(n), dist_(std::move(dist)) {
  diameter_ = dist_.empty() ? 0 : *std::max_element(dist_.begin(), dist_.end());
}

FiniteMetricSpace FiniteMetricSpace::create(std::string label, int n,
                                            std::vector<int> dist) {
  check_shape(n, dist);
  auto violations = validate_metric(n, dist);
  if (!violations.empty()) throw ValidationError(summarize(violations));
  return FiniteMetricSpace(std::move(label), n, std::move(dist));
}

FiniteMetricSpace FiniteMetricSpace::trusted(std::string label, int n,
                                             std::vector<int> dist) {
  check_shape(n, dist);
  return FiniteMetricSpace(std::move(label), n, std::move(dist));
}

SpacePtr share(FiniteMetricSpace space) {
  return std::make_shared<const FiniteMetricSpace>(std::move(space));
}

bool same_space(const SpacePtr& a, const SpacePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

std::string MetricViolation::describe() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::kShape:
      out << "matrix is not square";
      break;
    case Kind::kNegative:
      out << "negative distance at (" << x << "," << y << ")";
      break;
    case Kind::kDiagonal:
      out << "dist(" << x << "," << x << ") != 0";
      break;
    case Kind::kDiscreteness:
      out << "dist(" << x << "," << y << ") < 1 for distinct points";
      break;
    case Kind::kSymmetry:
      out << "dist(" << x << "," << y << ") != dist(" << y << "," << x << ")";
      break;
    case Kind::kTriangle:
      out << "triangle inequality fails for (" << x << "," << y << "," << z
          << ")";
      break;
  }
  return out.str();
}

std::vector<MetricViolation> validate_metric(int n, std::span<const int> dist) {
  using Kind = MetricViolation::Kind;
  std::vector<MetricViolation> out;
  if (n < 0 || dist.size() != static_cast<std::size_t>(n) * n) {
    out.push_back({Kind::kShape});
    return out;
  }
  auto d = [&](int a, int b) { return dist[static_cast<std::size_t>(a) * n + b]; };
  for (int x = 0; x < n; ++x) {
    if (d(x, x) != 0) out.push_back({Kind::kDiagonal, x, x});
    for (int y = 0; y < n; ++y) {
      if (x == y) continue;
      if (d(x, y) < 0) {
        out.push_back({Kind::kNegative, x, y});
      } else if (d(x, y) < 1 && x < y) {
        out.push_back({Kind::kDiscreteness, x, y});
      }
      if (x < y && d(x, y) != d(y, x)) out.push_back({Kind::kSymmetry, x, y});
    }
  }
  // Column-major copy so that d(., z) is contiguous; a vectorizable minimum
  // over all y screens each (x,z) before the exact witness search.
  const bool small = std::all_of(dist.begin(), dist.end(), [](int v) {
    return v >= 0 && v < (1 << 29);
  });
  std::vector<int> by_column;
  if (small) {
    by_column.resize(dist.size());
    for (int y = 0; y < n; ++y) {
      for (int z = 0; z < n; ++z) {
        by_column[static_cast<std::size_t>(z) * n + y] = d(y, z);
      }
    }
  }
  for (int x = 0; x < n; ++x) {
    for (int z = 0; z < n; ++z) {
      if (x == z) continue;
      const long long direct = d(x, z);
      if (small) {
        const int* row = dist.data() + static_cast<std::size_t>(x) * n;
        const int* col = by_column.data() + static_cast<std::size_t>(z) * n;
        int best = direct;
        for (int y = 0; y < n; ++y) best = std::min(best, row[y] + col[y]);
        if (best >= direct) continue;
      }
      for (int y = 0; y < n; ++y) {
        if (y == x || y == z) continue;
        if (direct > static_cast<long long>(d(x, y)) + d(y, z)) {
          out.push_back({Kind::kTriangle, x, y, z});
          break;
        }
      }
    }
  }
  return out;
}

std::vector<MetricViolation> validate_metric(const FiniteMetricSpace& space) {
  return validate_metric(space.size(), space.distances());
}

int GeometryProfile::at(int radius) const {
  if (counts.empty()) return 0;
  if (radius < 0) return 0;
  return counts[std::min<std::size_t>(radius, counts.size() - 1)];
}

GeometryProfile bounded_geometry_profile(const FiniteMetricSpace& space,
                                         int r_max) {
  if (r_max < 0) throw ValidationError("r_max must be non-negative");
  GeometryProfile profile;
  profile.counts.assign(r_max + 1, 0);
  std::vector<int> histogram(r_max + 1);
  for (int x = 0; x < space.size(); ++x) {
    std::fill(histogram.begin(), histogram.end(), 0);
    for (int d : space.row(x)) {
      if (d <= r_max) ++histogram[d];
    }
    int running = 0;
    for (int r = 0; r <= r_max; ++r) {
      running += histogram[r];
      profile.counts[r] = std::max(profile.counts[r], running);
    }
  }
  return profile;
}

GeometryProfile profile_envelope(const GeometryProfile& a,
                                 const GeometryProfile& b) {
  const int r_max = std::max(a.r_max(), b.r_max());
  GeometryProfile out;
  out.counts.resize(r_max + 1);
  for (int r = 0; r <= r_max; ++r) out.counts[r] = std::max(a.at(r), b.at(r));
  return out;
}

std::optional<int> set_distance(const FiniteMetricSpace& space,
                                std::span<const int> a, std::span<const int> b) {
  std::optional<int> best;
  for (int x : a) {
    for (int y : b) {
      const int d = space.distance(x, y);
      if (!best || d < *best) best = d;
    }
  }
  return best;
}

int set_diameter(const FiniteMetricSpace& space, std::span<const int> points) {
  int best = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      best = std::max(best, space.distance(points[i], points[j]));
    }
  }
  return best;
}

bool embeds_as_prefix(const FiniteMetricSpace& small,
                      const FiniteMetricSpace& big) {
  if (small.size() > big.size()) return false;
  for (int x = 0; x < small.size(); ++x) {
    for (int y = 0; y < small.size(); ++y) {
      if (small.distance(x, y) != big.distance(x, y)) return false;
    }
  }
  return true;
}

}  // namespace coarsekit
