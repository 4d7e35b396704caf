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
#include <array>
#include <map>
#include <queue>
#include <set>
#include <tuple>
#include <vector>

#include <gtest/gtest.h>

#include "coarsekit/error.hpp"
#include "coarsekit/metric_space.hpp"
#include "coarsekit/recipes.hpp"
#include "test_util.hpp"

namespace coarsekit {
namespace {

using Kind = MetricViolation::Kind;
using testing::space_from_rows;

// Points of {0..side-1}^2 in the documented order: by max coordinate, then
// lexicographically.
std::vector<std::array<int, 2>> ordered_grid(int side) {
  std::vector<std::array<int, 2>> pts;
  for (int a = 0; a < side; ++a) {
    for (int b = 0; b < side; ++b) pts.push_back({a, b});
  }
  std::sort(pts.begin(), pts.end(), [](const auto& p, const auto& q) {
    return std::make_tuple(std::max(p[0], p[1]), p) <
           std::make_tuple(std::max(q[0], q[1]), q);
  });
  return pts;
}

// Breadth-first distances on the grid graph with unit steps along the axes,
// plus diagonal steps when `king` is set.
std::map<std::pair<std::array<int, 2>, std::array<int, 2>>, int> grid_bfs(
    int side, bool king) {
  std::map<std::pair<std::array<int, 2>, std::array<int, 2>>, int> out;
  std::vector<std::array<int, 2>> moves = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  if (king) {
    moves.insert(moves.end(), {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}});
  }
  for (const auto& src : ordered_grid(side)) {
    std::map<std::array<int, 2>, int> seen{{src, 0}};
    std::queue<std::array<int, 2>> queue;
    queue.push(src);
    while (!queue.empty()) {
      auto p = queue.front();
      queue.pop();
      for (const auto& m : moves) {
        std::array<int, 2> q{p[0] + m[0], p[1] + m[1]};
        if (q[0] < 0 || q[1] < 0 || q[0] >= side || q[1] >= side) continue;
        if (seen.emplace(q, seen[p] + 1).second) queue.push(q);
      }
    }
    for (const auto& [q, d] : seen) out[{src, q}] = d;
  }
  return out;
}

TEST(BuildSpace, PathDistances) {
  auto s = build_space(PathRecipe{}, 4);
  EXPECT_EQ(s->size(), 4);
  EXPECT_EQ(s->distance(0, 3), 3);
  EXPECT_EQ(s->label(), "path-4");
  EXPECT_TRUE(validate_metric(*s).empty());
}

TEST(BuildSpace, GridMatchesBfsOracle) {
  for (bool king : {false, true}) {
    for (int side : {1, 2, 3, 5}) {
      auto s = build_space(GridRecipe{2, king}, side);
      const auto pts = ordered_grid(side);
      const auto oracle = grid_bfs(side, king);
      ASSERT_EQ(s->size(), side * side);
      for (int x = 0; x < s->size(); ++x) {
        for (int y = 0; y < s->size(); ++y) {
          EXPECT_EQ(s->distance(x, y), oracle.at({pts[x], pts[y]}))
              << "side " << side << " king " << king;
        }
      }
    }
  }
  auto g3 = build_space(GridRecipe{2, false}, 3);
  EXPECT_EQ(g3->size(), 9);
  EXPECT_EQ(g3->distance(0, 8), 4);  // (0,0) to (2,2)
}

TEST(BuildSpace, CayleyZ2BallCountsLatticePoints) {
  for (int r : {1, 2, 3}) {
    std::vector<std::array<int, 2>> lattice;
    for (int a = -r; a <= r; ++a) {
      for (int b = -r; b <= r; ++b) {
        if (std::abs(a) + std::abs(b) <= r) lattice.push_back({a, b});
      }
    }
    auto s = build_space(parse_recipe("cayley-z2"), r);
    ASSERT_EQ(s->size(), static_cast<int>(lattice.size()));
    // Same multiset of pairwise l1 distances.
    std::multiset<int> expected;
    std::multiset<int> actual;
    for (const auto& p : lattice) {
      for (const auto& q : lattice) {
        expected.insert(std::abs(p[0] - q[0]) + std::abs(p[1] - q[1]));
      }
    }
    for (int d : s->distances()) actual.insert(d);
    EXPECT_EQ(actual, expected);
  }
  EXPECT_EQ(build_space(parse_recipe("cayley-z2"), 2)->size(), 13);
}

TEST(BuildSpace, CayleyFreeGroupCountsReducedWords) {
  for (int r : {1, 2, 3, 4}) {
    // Reduced words over {a, A, b, B} of length <= r.
    int count = 1;
    int sphere = 4;
    for (int len = 1; len <= r; ++len) {
      count += sphere;
      sphere *= 3;
    }
    EXPECT_EQ(build_space(parse_recipe("cayley-f2"), r)->size(), count);
  }
}

TEST(BuildSpace, CayleyHeisenbergMatchesTripleLawBfs) {
  // (a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab'); generators x = (+-1,0,0),
  // y = (0,+-1,0); ball of radius r.
  using Triple = std::array<long, 3>;
  auto mul = [](const Triple& p, const Triple& q) {
    return Triple{p[0] + q[0], p[1] + q[1], p[2] + q[2] + p[0] * q[1]};
  };
  const std::vector<Triple> gens = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}};
  for (int r : {1, 2, 3}) {
    std::map<Triple, int> seen{{{0, 0, 0}, 0}};
    std::queue<Triple> queue;
    queue.push({0, 0, 0});
    while (!queue.empty()) {
      auto p = queue.front();
      queue.pop();
      if (seen[p] == r) continue;
      for (const auto& g : gens) {
        auto q = mul(p, g);
        if (seen.emplace(q, seen[p] + 1).second) queue.push(q);
      }
    }
    auto s = build_space(parse_recipe("cayley-heisenberg"), r);
    EXPECT_EQ(s->size(), static_cast<int>(seen.size())) << "radius " << r;
    EXPECT_TRUE(validate_metric(*s).empty());
  }
}

TEST(BuildSpace, TreeDistances) {
  auto t = build_space(TreeRecipe{2}, 7);
  EXPECT_EQ(t->distance(0, 6), 2);
  EXPECT_EQ(t->distance(3, 4), 2);
  EXPECT_EQ(t->distance(3, 6), 4);
  EXPECT_TRUE(validate_metric(*t).empty());
}

TEST(BuildSpace, RejectsBadInput) {
  EXPECT_THROW(parse_recipe("bogus"), ValidationError);
  EXPECT_THROW(parse_recipe("grid0"), ValidationError);
  EXPECT_THROW(parse_recipe("cayley-sl3"), ValidationError);
  EXPECT_THROW(build_space(PathRecipe{}, 0), ValidationError);
  CayleyRecipe with_identity;
  with_identity.generators = {IntMatrix::identity(2)};
  EXPECT_THROW(build_space(with_identity, 1), ValidationError);
  CayleyRecipe not_symmetric;
  not_symmetric.generators = {IntMatrix{2, {1, 1, 0, 1}}};
  EXPECT_THROW(build_space(not_symmetric, 1), ValidationError);
  CayleyRecipe not_unimodular;
  not_unimodular.generators = {IntMatrix{2, {2, 0, 0, 1}}};
  EXPECT_THROW(validate_generating_set(not_unimodular.generators),
               ValidationError);
}

TEST(BuildSpace, PermutationGenerators) {
  CayleyRecipe sym3;
  sym3.generators = {permutation_matrix({1, 0, 2}), permutation_matrix({0, 2, 1})};
  auto s = build_space(sym3, 3);
  EXPECT_EQ(s->size(), 6);
  EXPECT_EQ(s->diameter(), 3);
}

TEST(GeometryProfile, Examples) {
  EXPECT_EQ(bounded_geometry_profile(*build_space(PathRecipe{}, 5), 1).counts,
            (std::vector<int>{1, 3}));
  // l1 balls of radius 1 in the 5x5 grid, by enumeration.
  int best = 0;
  for (int a = 0; a < 5; ++a) {
    for (int b = 0; b < 5; ++b) {
      int count = 0;
      for (int c = 0; c < 5; ++c) {
        for (int d = 0; d < 5; ++d) {
          if (std::abs(a - c) + std::abs(b - d) <= 1) ++count;
        }
      }
      best = std::max(best, count);
    }
  }
  auto g = build_space(GridRecipe{2, false}, 5);
  EXPECT_EQ(bounded_geometry_profile(*g, 1).at(1), best);
  EXPECT_EQ(best, 5);
  auto t = build_space(TreeRecipe{3}, 20);
  auto p = bounded_geometry_profile(*t, t->diameter() + 2);
  EXPECT_EQ(p.at(t->diameter()), 20);
  EXPECT_EQ(p.at(t->diameter() + 2), 20);
  EXPECT_THROW(bounded_geometry_profile(*t, -1), ValidationError);
}

TEST(GeometryProfile, Envelope) {
  GeometryProfile a{{1, 3}};
  GeometryProfile b{{1, 2, 5}};
  EXPECT_EQ(profile_envelope(a, b).counts, (std::vector<int>{1, 3, 5}));
}

TEST(ValidateMetric, Examples) {
  EXPECT_TRUE(validate_metric(*build_space(PathRecipe{}, 3)).empty());
  const std::vector<int> triangle = {0, 1, 5, 1, 0, 1, 5, 1, 0};
  auto v = validate_metric(3, triangle);
  ASSERT_FALSE(v.empty());
  EXPECT_EQ(v.front(), (MetricViolation{Kind::kTriangle, 0, 1, 2}));
  const std::vector<int> collapsed = {0, 0, 0, 0};
  v = validate_metric(2, collapsed);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v.front().kind, Kind::kDiscreteness);
}

TEST(ValidateMetric, ReportsEveryAxiom) {
  const std::vector<int> bad = {1, 2, -1, 0};
  auto v = validate_metric(2, bad);
  std::set<Kind> kinds;
  for (const auto& e : v) kinds.insert(e.kind);
  EXPECT_TRUE(kinds.count(Kind::kDiagonal));
  EXPECT_TRUE(kinds.count(Kind::kNegative));
  EXPECT_TRUE(kinds.count(Kind::kSymmetry));
  EXPECT_EQ(validate_metric(3, bad).front().kind, Kind::kShape);
  EXPECT_THROW(space_from_rows({{0, 1}, {2, 0}}), ValidationError);
}

TEST(SetOperations, DistanceAndDiameter) {
  auto p = build_space(PathRecipe{}, 10);
  const std::vector<int> a = {0, 1, 2};
  const std::vector<int> b = {5, 9};
  EXPECT_EQ(set_distance(*p, a, b), 3);
  EXPECT_EQ(set_distance(*p, a, {}), std::nullopt);
  EXPECT_EQ(set_diameter(*p, b), 4);
  EXPECT_EQ(set_diameter(*p, {}), 0);
}

TEST(Families, BuildAndNesting) {
  auto f = build_family(PathRecipe{}, {8, 16, 32});
  EXPECT_TRUE(check_nested(f).empty());
  EXPECT_EQ(f.at(16)->size(), 16);
  EXPECT_THROW(f.at(5), ValidationError);
  EXPECT_THROW(build_family(PathRecipe{}, {16, 8}), ValidationError);
}

// Property: every recipe produces prefix-nested truncations.
TEST(Properties, RecipesNestAsPrefixes) {
  const std::vector<std::pair<const char*, std::vector<int>>> cases = {
      {"path", {1, 2, 7, 20}},
      {"grid1", {1, 4, 9}},
      {"grid2", {1, 2, 3, 6}},
      {"grid2-diag", {1, 3, 5}},
      {"grid3", {1, 2, 4}},
      {"tree2", {1, 5, 30}},
      {"tree3", {4, 13, 40}},
      {"cayley-z1", {1, 3}},
      {"cayley-z2", {1, 2, 3}},
      {"cayley-z3", {1, 2}},
      {"cayley-f2", {1, 2, 3}},
      {"cayley-heisenberg", {1, 2, 3}},
  };
  for (const auto& [name, sizes] : cases) {
    const Recipe r = parse_recipe(name);
    for (std::size_t i = 1; i < sizes.size(); ++i) {
      auto small = build_space(r, sizes[i - 1]);
      auto big = build_space(r, sizes[i]);
      EXPECT_TRUE(embeds_as_prefix(*small, *big))
          << name << " " << sizes[i - 1] << " -> " << sizes[i];
      EXPECT_TRUE(validate_metric(*big).empty()) << name;
    }
  }
}

// Property: profiles are monotone, start at 1, stabilize at n, and grids obey
// N_R <= (2R+1)^d.
TEST(Properties, ProfileShape) {
  for (const char* name : {"path", "grid1", "grid2", "grid3", "grid2-diag",
                           "tree2", "cayley-f2"}) {
    const Recipe r = parse_recipe(name);
    for (int size : {1, 3, 4}) {
      auto s = build_space(r, size);
      auto p = bounded_geometry_profile(*s, s->diameter() + 3);
      EXPECT_EQ(p.at(0), 1);
      EXPECT_TRUE(std::is_sorted(p.counts.begin(), p.counts.end())) << name;
      EXPECT_EQ(p.at(s->diameter()), s->size());
      if (const auto* g = std::get_if<GridRecipe>(&r)) {
        for (int radius = 0; radius <= p.r_max(); ++radius) {
          long bound = 1;
          for (int i = 0; i < g->dim; ++i) bound *= 2 * radius + 1;
          EXPECT_LE(p.at(radius), bound) << name << " R=" << radius;
        }
      }
    }
  }
}

// Property: the family envelope dominates every member's profile.
TEST(Properties, FamilyEnvelopeBoundsMembers) {
  auto family = build_family(parse_recipe("grid2"), {2, 4, 8});
  GeometryProfile envelope;
  std::vector<GeometryProfile> profiles;
  for (int i : family.indices) {
    profiles.push_back(bounded_geometry_profile(*family.at(i), 6));
    envelope = profile_envelope(envelope, profiles.back());
  }
  for (const auto& p : profiles) {
    for (int r = 0; r <= 6; ++r) EXPECT_LE(p.at(r), envelope.at(r));
  }
}

}  // namespace
}  // namespace coarsekit
