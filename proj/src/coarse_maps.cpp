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

#include "coarsekit/coarse_maps.hpp"

#include <algorithm>

#include "coarsekit/error.hpp"

namespace coarsekit {

PointMap::PointMap(SpacePtr domain, SpacePtr codomain, std::vector<int> table)
    : domain_(std::move(domain)),
      codomain_(std::move(codomain)),
      table_(std::move(table)) {
  if (!domain_ || !codomain_) throw ValidationError("map needs both spaces");
  if (static_cast<int>(table_.size()) != domain_->size()) {
    throw ValidationError("map table has " + std::to_string(table_.size()) +
                          " entries but the domain has " +
                          std::to_string(domain_->size()) + " points");
  }
  for (std::size_t x = 0; x < table_.size(); ++x) {
    if (!codomain_->contains(table_[x])) {
      throw ValidationError("map sends point " + std::to_string(x) +
                            " outside the codomain");
    }
  }
}

PointMap PointMap::identity(SpacePtr space) {
  std::vector<int> table(space->size());
  for (int x = 0; x < space->size(); ++x) table[x] = x;
  return PointMap(space, space, std::move(table));
}

bool PointMap::is_bijective() const {
  if (domain_->size() != codomain_->size()) return false;
  std::vector<bool> hit(codomain_->size(), false);
  for (int y : table_) {
    if (hit[y]) return false;
    hit[y] = true;
  }
  return true;
}

PointMap compose(const PointMap& outer, const PointMap& inner) {
  if (!same_space(inner.codomain(), outer.domain())) {
    throw ValidationError("maps are not composable");
  }
  std::vector<int> table(inner.size());
  for (int x = 0; x < inner.size(); ++x) table[x] = outer(inner(x));
  return PointMap(inner.domain(), outer.codomain(), std::move(table));
}

int ControlFunction::operator()(int radius) const {
  if (bounds.empty() || radius < 0) return 0;
  return bounds[std::min<std::size_t>(radius, bounds.size() - 1)];
}

ControlFunction expansion_profile(const PointMap& f) {
  const FiniteMetricSpace& x_space = *f.domain();
  const FiniteMetricSpace& y_space = *f.codomain();
  ControlFunction rho;
  rho.bounds.assign(x_space.diameter() + 1, 0);
  for (int a = 0; a < x_space.size(); ++a) {
    for (int b = a + 1; b < x_space.size(); ++b) {
      int& slot = rho.bounds[x_space.distance(a, b)];
      slot = std::max(slot, y_space.distance(f(a), f(b)));
    }
  }
  for (std::size_t r = 1; r < rho.bounds.size(); ++r) {
    rho.bounds[r] = std::max(rho.bounds[r], rho.bounds[r - 1]);
  }
  return rho;
}

int closeness_constant(const PointMap& f, const PointMap& g) {
  if (!same_space(f.domain(), g.domain()) ||
      !same_space(f.codomain(), g.codomain())) {
    throw ValidationError("closeness needs maps with the same domain and codomain");
  }
  int best = 0;
  for (int x = 0; x < f.size(); ++x) {
    best = std::max(best, f.codomain()->distance(f(x), g(x)));
  }
  return best;
}

CoarseEquivalenceCertificate verify_coarse_equivalence(const PointMap& f,
                                                       const PointMap& g) {
  if (!same_space(f.domain(), g.codomain()) ||
      !same_space(f.codomain(), g.domain())) {
    throw ValidationError("coarse equivalence needs f: X -> Y and g: Y -> X");
  }
  CoarseEquivalenceCertificate cert{f, g, expansion_profile(f),
                                    expansion_profile(g), 0, 0};
  const auto& x_space = *f.domain();
  const auto& y_space = *f.codomain();
  for (int y = 0; y < y_space.size(); ++y) {
    cert.c_fg = std::max(cert.c_fg, y_space.distance(f(g(y)), y));
  }
  for (int x = 0; x < x_space.size(); ++x) {
    cert.c_gf = std::max(cert.c_gf, x_space.distance(g(f(x)), x));
  }
  return cert;
}

std::string to_string(UniformityVerdict verdict) {
  switch (verdict) {
    case UniformityVerdict::kBounded:
      return "BOUNDED";
    case UniformityVerdict::kDivergent:
      return "DIVERGENT";
    case UniformityVerdict::kInconclusive:
      return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

UniformityVerdict stabilization_verdict(std::span<const int> values) {
  const std::size_t m = values.size();
  if (m == 0) return UniformityVerdict::kBounded;
  bool increasing = m >= 2;
  for (std::size_t i = 1; i < m && increasing; ++i) {
    increasing = values[i] > values[i - 1];
  }
  if (increasing) return UniformityVerdict::kDivergent;
  const std::size_t top = (m + 1) / 2;
  const std::size_t first_top = m - top;
  const int before = *std::max_element(values.begin(), values.begin() + first_top + 1);
  const int overall = *std::max_element(values.begin(), values.end());
  return overall == before ? UniformityVerdict::kBounded
                           : UniformityVerdict::kInconclusive;
}

UniformityVerdict combine_verdicts(std::span<const UniformityVerdict> verdicts) {
  bool all_bounded = true;
  for (auto v : verdicts) {
    if (v == UniformityVerdict::kDivergent) return UniformityVerdict::kDivergent;
    all_bounded = all_bounded && v == UniformityVerdict::kBounded;
  }
  return all_bounded ? UniformityVerdict::kBounded : UniformityVerdict::kInconclusive;
}

namespace {

QuantitySeries make_series(std::string name, std::vector<int> values) {
  QuantitySeries s{std::move(name), std::move(values), 0,
                   UniformityVerdict::kBounded};
  if (!s.values.empty()) s.sup = *std::max_element(s.values.begin(), s.values.end());
  s.verdict = stabilization_verdict(s.values);
  return s;
}

}  // namespace

void check_embedding_compatibility(const std::map<int, PointMap>& maps,
                                   int tolerance) {
  const PointMap* previous = nullptr;
  int previous_index = 0;
  for (const auto& [index, map] : maps) {
    if (previous) {
      const auto& small = *previous;
      if (!embeds_as_prefix(*small.domain(), *map.domain()) ||
          !embeds_as_prefix(*small.codomain(), *map.codomain())) {
        throw ValidationError("truncations " + std::to_string(previous_index) +
                              " and " + std::to_string(index) +
                              " are not nested as prefixes");
      }
      for (int x = 0; x < small.size(); ++x) {
        const int shift = map.codomain()->distance(map(x), small(x));
        if (shift > tolerance) {
          throw ValidationError(
              "maps at indices " + std::to_string(previous_index) + " and " +
              std::to_string(index) + " disagree at point " + std::to_string(x) +
              " by " + std::to_string(shift) + " > tolerance " +
              std::to_string(tolerance));
        }
      }
    }
    previous = &map;
    previous_index = index;
  }
}

UniformityReport family_uniformity(
    const std::map<int, CoarseEquivalenceCertificate>& certificates,
    const UniformityOptions& options) {
  if (certificates.empty()) throw ValidationError("no certificates supplied");
  if (options.embedding_tolerance) {
    std::map<int, PointMap> fs;
    std::map<int, PointMap> gs;
    for (const auto& [index, cert] : certificates) {
      fs.emplace(index, cert.f);
      gs.emplace(index, cert.g);
    }
    check_embedding_compatibility(fs, *options.embedding_tolerance);
    check_embedding_compatibility(gs, *options.embedding_tolerance);
  }
  UniformityReport report;
  int r_max_f = -1;
  int r_max_g = -1;
  for (const auto& [index, cert] : certificates) {
    report.indices.push_back(index);
    const int df = cert.f.domain()->diameter();
    const int dg = cert.g.domain()->diameter();
    r_max_f = r_max_f < 0 ? df : std::min(r_max_f, df);
    r_max_g = r_max_g < 0 ? dg : std::min(r_max_g, dg);
  }
  if (options.r_max) {
    r_max_f = *options.r_max;
    r_max_g = *options.r_max;
  }
  report.r_max = std::max(r_max_f, r_max_g);
  std::vector<UniformityVerdict> verdicts;
  auto collect = [&](int r, bool use_f) {
    std::vector<int> values;
    for (const auto& [index, cert] : certificates) {
      values.push_back(use_f ? cert.rho_f(r) : cert.rho_g(r));
    }
    auto s = make_series((use_f ? "rho_f(" : "rho_g(") + std::to_string(r) + ")",
                         std::move(values));
    verdicts.push_back(s.verdict);
    return s;
  };
  for (int r = 0; r <= r_max_f; ++r) report.rho_f.push_back(collect(r, true));
  for (int r = 0; r <= r_max_g; ++r) report.rho_g.push_back(collect(r, false));
  std::vector<int> fg;
  std::vector<int> gf;
  for (const auto& [index, cert] : certificates) {
    fg.push_back(cert.c_fg);
    gf.push_back(cert.c_gf);
  }
  report.c_fg = make_series("c_fg", std::move(fg));
  report.c_gf = make_series("c_gf", std::move(gf));
  verdicts.push_back(report.c_fg.verdict);
  verdicts.push_back(report.c_gf.verdict);
  report.verdict = combine_verdicts(verdicts);
  return report;
}

}  // namespace coarsekit
