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

#include <string>
#include <string_view>
#include <vector>

#include "coarsekit/categories.hpp"
#include "coarsekit/coarse_maps.hpp"
#include "coarsekit/recipes.hpp"

namespace coarsekit {

// A coarse map class between two space families sharing their indices.
struct MapFamily {
  SpaceFamily domain;
  SpaceFamily codomain;
  CoarseMorphismClass cls;
};

// Built-in coarse equivalences, by name:
//   identity    X -> X
//   swap-pairs  X -> X exchanging 2i and 2i+1
//   doubling    path(n) -> path(2n), x -> 2x
//   halving     path(2n) -> path(n), x -> floor(x/2)
//   diagonal    grid<d>-diag(s) -> grid<d>(s), identity on points
std::vector<std::string> map_kinds();

// The maps of the given kind over `indices`. For doubling and halving
// `recipe` must be "path"; for diagonal it must be a grid without diagonals.
MapFamily corpus_map_family(std::string_view kind, std::string_view recipe,
                            const std::vector<int>& indices);

}  // namespace coarsekit
