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

#include "coarsekit/corpus.hpp"

#include <algorithm>
#include <string>
#include <variant>

#include "coarsekit/error.hpp"

namespace coarsekit {

namespace {

SpaceFamily family_of(const Recipe& recipe, const std::vector<int>& indices,
                      int size_factor) {
  SpaceFamily family;
  family.generator = recipe;
  family.indices = indices;
  for (int index : indices) {
    family.spaces[index] = build_space(recipe, index * size_factor);
  }
  return family;
}

}  // namespace

std::vector<std::string> map_kinds() {
  return {"identity", "swap-pairs", "doubling", "halving", "diagonal"};
}

MapFamily corpus_map_family(std::string_view kind, std::string_view recipe,
                            const std::vector<int>& indices) {
  if (indices.empty()) throw ValidationError("map family: no indices");
  if (!std::is_sorted(indices.begin(), indices.end()) ||
      std::adjacent_find(indices.begin(), indices.end()) != indices.end()) {
    throw ValidationError("map family: indices must strictly increase");
  }
  const Recipe base = parse_recipe(recipe);
  const bool is_path = std::holds_alternative<PathRecipe>(base);
  Recipe domain_recipe = base;
  int domain_factor = 1;
  int codomain_factor = 1;
  if (kind == "doubling" || kind == "halving") {
    if (!is_path) {
      throw ValidationError("map family: " + std::string(kind) +
                            " is defined on path spaces only");
    }
    (kind == "doubling" ? codomain_factor : domain_factor) = 2;
  } else if (kind == "diagonal") {
    const auto* grid = std::get_if<GridRecipe>(&base);
    if (grid == nullptr || grid->diagonals) {
      throw ValidationError("map family: diagonal needs a plain grid recipe");
    }
    domain_recipe = GridRecipe{grid->dim, true};
  } else if (kind != "identity" && kind != "swap-pairs") {
    throw ValidationError("unknown map kind '" + std::string(kind) + "'");
  }

  MapFamily family{family_of(domain_recipe, indices, domain_factor),
                   family_of(base, indices, codomain_factor),
                   {}};
  for (int index : indices) {
    const SpacePtr& domain = family.domain.at(index);
    const SpacePtr& codomain = family.codomain.at(index);
    const int n = domain->size();
    std::vector<int> table(n);
    for (int x = 0; x < n; ++x) {
      if (kind == "swap-pairs") {
        table[x] = (x ^ 1) < n ? (x ^ 1) : x;
      } else if (kind == "doubling") {
        table[x] = 2 * x;
      } else if (kind == "halving") {
        table[x] = x / 2;
      } else {
        table[x] = x;
      }
    }
    family.cls.representatives.emplace(index,
                                       PointMap(domain, codomain, table));
  }
  return family;
}

}  // namespace coarsekit
