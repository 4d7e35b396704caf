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

#include <algorithm>
#include <map>
#include <vector>

#include <gtest/gtest.h>

#include "coarsekit/coarse_maps.hpp"
#include "coarsekit/corpus.hpp"
#include "coarsekit/error.hpp"
#include "coarsekit/random.hpp"
#include "coarsekit/recipes.hpp"

namespace coarsekit {
namespace {

SpacePtr path(int n) { return build_space(PathRecipe{}, n); }

PointMap table_map(const SpacePtr& x, const SpacePtr& y,
                   int (*rule)(int, int)) {
  std::vector<int> table(x->size());
  for (int i = 0; i < x->size(); ++i) table[i] = rule(i, y->size());
  return PointMap(x, y, table);
}

// S(R) by the defining double loop, kept independent of the library scan.
std::vector<int> pair_scan(const PointMap& f) {
  const auto& x = *f.domain();
  const auto& y = *f.codomain();
  std::vector<int> s(x.diameter() + 1, 0);
  for (int r = 0; r <= x.diameter(); ++r) {
    for (int a = 0; a < x.size(); ++a) {
      for (int b = 0; b < x.size(); ++b) {
        if (x.distance(a, b) <= r) s[r] = std::max(s[r], y.distance(f(a), f(b)));
      }
    }
  }
  return s;
}

PointMap random_map(const SpacePtr& x, const SpacePtr& y, Rng& rng) {
  std::vector<int> table(x->size());
  for (auto& v : table) v = rng.index(y->size());
  return PointMap(x, y, table);
}

TEST(PointMap, ValidatesTotality) {
  EXPECT_THROW(PointMap(path(3), path(2), {0, 1, 2}), ValidationError);
  EXPECT_THROW(PointMap(path(3), path(2), {0, 1}), ValidationError);
  EXPECT_THROW(PointMap(path(2), path(2), {0, -1}), ValidationError);
  EXPECT_TRUE(PointMap::identity(path(4)).is_bijective());
  EXPECT_FALSE(PointMap(path(2), path(2), {1, 1}).is_bijective());
}

TEST(PointMap, Compose) {
  auto x = path(4);
  PointMap f(x, x, {1, 2, 3, 3});
  PointMap g(x, x, {0, 0, 1, 2});
  EXPECT_EQ(compose(g, f).table(), (std::vector<int>{0, 1, 2, 2}));
  EXPECT_THROW(compose(f, PointMap::identity(path(5))), ValidationError);
}

TEST(ExpansionProfile, Examples) {
  auto p6 = path(6);
  auto id = expansion_profile(PointMap::identity(p6));
  for (int r = 0; r <= 5; ++r) EXPECT_EQ(id(r), r);
  EXPECT_EQ(id(40), 5);
  PointMap constant(p6, p6, std::vector<int>(6, 2));
  for (int r = 0; r <= 5; ++r) EXPECT_EQ(expansion_profile(constant)(r), 0);

  PointMap doubling = table_map(path(5), path(10), [](int i, int) { return 2 * i; });
  const auto oracle = pair_scan(doubling);
  EXPECT_EQ(expansion_profile(doubling).bounds, oracle);
  for (int r = 0; r <= 4; ++r) EXPECT_EQ(oracle[r], 2 * r);
}

TEST(Closeness, Examples) {
  auto p10 = path(10);
  auto id = PointMap::identity(p10);
  EXPECT_EQ(closeness_constant(id, id), 0);
  auto shift = table_map(p10, p10, [](int i, int n) { return std::min(i + 1, n - 1); });
  EXPECT_EQ(closeness_constant(id, shift), 1);
  auto reversal = table_map(p10, p10, [](int i, int n) { return n - 1 - i; });
  EXPECT_EQ(closeness_constant(id, reversal), 9);
  EXPECT_THROW(closeness_constant(id, PointMap::identity(path(9))),
               ValidationError);
}

TEST(CoarseEquivalence, Examples) {
  auto p8 = path(8);
  auto c = verify_coarse_equivalence(PointMap::identity(p8), PointMap::identity(p8));
  EXPECT_EQ(c.c_fg, 0);
  EXPECT_EQ(c.c_gf, 0);
  for (int r = 0; r <= 7; ++r) EXPECT_EQ(c.rho_f(r), r);

  auto p5 = path(5);
  auto p10 = path(10);
  auto f = table_map(p5, p10, [](int i, int) { return 2 * i; });
  auto g = table_map(p10, p5, [](int j, int) { return j / 2; });
  c = verify_coarse_equivalence(f, g);
  EXPECT_EQ(c.c_fg, 1);
  EXPECT_EQ(c.c_gf, 0);
  EXPECT_LE(c.c_fg, p10->diameter());
  EXPECT_THROW(verify_coarse_equivalence(f, f), ValidationError);
}

TEST(StabilizationVerdict, Cases) {
  auto verdict = [](std::vector<int> v) { return stabilization_verdict(v); };
  EXPECT_EQ(verdict({1, 1, 1, 1}), UniformityVerdict::kBounded);
  EXPECT_EQ(verdict({3, 1, 2, 3}), UniformityVerdict::kBounded);
  EXPECT_EQ(verdict({7, 15, 31, 63}), UniformityVerdict::kDivergent);
  EXPECT_EQ(verdict({1, 1, 2, 2}), UniformityVerdict::kBounded);
  EXPECT_EQ(verdict({1, 1, 1, 2}), UniformityVerdict::kInconclusive);
  EXPECT_EQ(verdict({5}), UniformityVerdict::kBounded);
  EXPECT_EQ(verdict({}), UniformityVerdict::kBounded);
  const std::vector<UniformityVerdict> mixed = {UniformityVerdict::kBounded,
                                                UniformityVerdict::kDivergent};
  EXPECT_EQ(combine_verdicts(mixed), UniformityVerdict::kDivergent);
}

TEST(FamilyUniformity, IdentityPathFamilyIsBounded) {
  std::map<int, CoarseEquivalenceCertificate> certs;
  for (int n : {8, 16, 32, 64}) {
    auto id = PointMap::identity(path(n));
    certs.emplace(n, verify_coarse_equivalence(id, id));
  }
  auto report = family_uniformity(certs, {0, std::nullopt});
  EXPECT_EQ(report.verdict, UniformityVerdict::kBounded);
  EXPECT_EQ(report.r_max, 7);
  for (int r = 0; r <= 7; ++r) EXPECT_EQ(report.rho_f[r].sup, r);
}

TEST(FamilyUniformity, ReversalDivergesFromIdentity) {
  std::vector<int> constants;
  for (int n : {8, 16, 32, 64}) {
    auto p = path(n);
    auto reversal = table_map(p, p, [](int i, int m) { return m - 1 - i; });
    constants.push_back(closeness_constant(reversal, PointMap::identity(p)));
  }
  EXPECT_EQ(constants, (std::vector<int>{7, 15, 31, 63}));
  EXPECT_EQ(stabilization_verdict(constants), UniformityVerdict::kDivergent);
  // Reversals are not compatible with the prefix embeddings.
  std::map<int, PointMap> maps;
  for (int n : {8, 16}) {
    auto p = path(n);
    maps.emplace(n, table_map(p, p, [](int i, int m) { return m - 1 - i; }));
  }
  EXPECT_THROW(check_embedding_compatibility(maps, 0), ValidationError);
}

TEST(FamilyUniformity, DiagonalGridAgainstL1Grid) {
  auto family = corpus_map_family("diagonal", "grid2", {3, 4, 6, 8});
  std::map<int, CoarseEquivalenceCertificate> certs;
  for (const auto& [index, f] : family.cls.representatives) {
    auto g = PointMap(f.codomain(), f.domain(), f.table());
    certs.emplace(index, verify_coarse_equivalence(f, g));
  }
  auto report = family_uniformity(certs, {0, std::nullopt});
  EXPECT_EQ(report.verdict, UniformityVerdict::kBounded);
  ASSERT_EQ(report.rho_f.size(), 3u);
  for (int r = 0; r < 3; ++r) EXPECT_EQ(report.rho_f[r].sup, 2 * r);
  EXPECT_EQ(report.c_fg.sup, 0);
}

TEST(FamilyUniformity, DoublingAndHalving) {
  auto doubling = corpus_map_family("doubling", "path", {8, 16, 32, 64});
  auto halving = corpus_map_family("halving", "path", {8, 16, 32, 64});
  std::map<int, CoarseEquivalenceCertificate> certs;
  for (int n : doubling.domain.indices) {
    certs.emplace(n, verify_coarse_equivalence(
                         doubling.cls.representatives.at(n),
                         halving.cls.representatives.at(n)));
  }
  auto report = family_uniformity(certs, {0, std::nullopt});
  EXPECT_EQ(report.verdict, UniformityVerdict::kBounded);
  EXPECT_EQ(report.c_fg.sup, 1);
  EXPECT_EQ(report.c_gf.sup, 0);
}

// Property: rho_{f o g}(R) <= rho_f(rho_g(R)).
TEST(Properties, ProfileOfComposition) {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    auto x = build_space(GridRecipe{2, trial % 2 == 0}, 2 + rng.index(3));
    auto y = path(1 + rng.index(12));
    auto z = build_space(TreeRecipe{2}, 1 + rng.index(15));
    auto g = random_map(x, y, rng);
    auto f = random_map(y, z, rng);
    auto rho_fg = expansion_profile(compose(f, g));
    auto rho_f = expansion_profile(f);
    auto rho_g = expansion_profile(g);
    EXPECT_EQ(expansion_profile(g).bounds, pair_scan(g));
    for (int r = 0; r <= x->diameter(); ++r) {
      EXPECT_LE(rho_fg(r), rho_f(rho_g(r)));
    }
  }
}

// Property: closeness is a pseudometric and moves profiles by at most 2C.
TEST(Properties, ClosenessPseudometric) {
  Rng rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    auto x = path(1 + rng.index(10));
    auto y = build_space(GridRecipe{2, false}, 1 + rng.index(4));
    auto f = random_map(x, y, rng);
    auto g = random_map(x, y, rng);
    auto h = random_map(x, y, rng);
    EXPECT_EQ(closeness_constant(f, f), 0);
    EXPECT_EQ(closeness_constant(f, g), closeness_constant(g, f));
    EXPECT_LE(closeness_constant(f, h),
              closeness_constant(f, g) + closeness_constant(g, h));
    const int c = closeness_constant(f, g);
    auto rf = expansion_profile(f);
    auto rg = expansion_profile(g);
    for (int r = 0; r <= x->diameter(); ++r) EXPECT_LE(rf(r), rg(r) + 2 * c);
  }
}

}  // namespace
}  // namespace coarsekit
