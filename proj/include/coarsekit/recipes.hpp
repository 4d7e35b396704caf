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
#include <string_view>
#include <variant>
#include <vector>

#include "coarsekit/metric_space.hpp"

namespace coarsekit {

// Square integer matrix, row-major.
struct IntMatrix {
  int dim = 0;
  std::vector<long long> entries;

  static IntMatrix identity(int dim);
  long long at(int r, int c) const { return entries[r * dim + c]; }
  IntMatrix operator*(const IntMatrix& other) const;
  auto operator<=>(const IntMatrix&) const = default;
};

IntMatrix permutation_matrix(const std::vector<int>& perm);

struct PathRecipe {
  bool operator==(const PathRecipe&) const = default;
};

// Grid {0..s-1}^dim with the l1 metric, or the l-infinity metric when
// `diagonals` is set (king moves). Points are ordered by maximum coordinate
// and then lexicographically, so every grid is a prefix of the next larger one.
struct GridRecipe {
  int dim = 2;
  bool diagonals = false;
  bool operator==(const GridRecipe&) const = default;
};

// Breadth-first prefix of the rooted infinite tree with the given branching.
struct TreeRecipe {
  int branching = 2;
  bool operator==(const TreeRecipe&) const = default;
};

// Ball in the Cayley graph of a finitely generated matrix group. The
// generating set must be symmetric and must not contain the identity.
struct CayleyRecipe {
  std::string preset;
  std::vector<IntMatrix> generators;
  bool operator==(const CayleyRecipe&) const = default;
};

using Recipe = std::variant<PathRecipe, GridRecipe, TreeRecipe, CayleyRecipe>;

// Preset generating sets: "z1", "z2", "z3", "f2" (free group of rank 2 as the
// Sanov subgroup of SL(2,Z)), "heisenberg".
CayleyRecipe cayley_preset(std::string_view name);

// Throws ValidationError when the set is empty, has mismatched dimensions,
// contains the identity, contains a non-unimodular matrix, or is not closed
// under inverses.
void validate_generating_set(const std::vector<IntMatrix>& generators);

// Names accepted on the command line: path, grid<d>, grid<d>-diag, tree<b>,
// cayley-<preset>.
Recipe parse_recipe(std::string_view name);
std::string recipe_name(const Recipe& recipe);

// Size semantics: path -> point count; grid -> side length; tree -> point
// count; cayley -> ball radius.
SpacePtr build_space(const Recipe& recipe, int size);

// Upper limit on the number of group elements explored for a Cayley ball.
inline constexpr int kCayleyElementCap = 250000;

struct SpaceFamily {
  Recipe generator;
  std::vector<int> indices;
  std::map<int, SpacePtr> spaces;

  const SpacePtr& at(int index) const;
};

SpaceFamily build_family(const Recipe& recipe, std::vector<int> indices);

// Indices must be strictly increasing and consecutive truncations nested as
// prefixes. Returns a human-readable description of each failure.
std::vector<std::string> check_nested(const SpaceFamily& family);

}  // namespace coarsekit
