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

#include "coarsekit/recipes.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <set>

#include "coarsekit/error.hpp"

namespace coarsekit {

namespace {

int parse_positive(std::string_view text, std::string_view what) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || value < 1) {
    throw ValidationError("invalid " + std::string(what) + " in recipe: '" +
                          std::string(text) + "'");
  }
  return value;
}

SpacePtr build_path(int size) {
  std::vector<int> dist(static_cast<std::size_t>(size) * size);
  for (int x = 0; x < size; ++x) {
    for (int y = 0; y < size; ++y) dist[x * size + y] = std::abs(x - y);
  }
  return share(FiniteMetricSpace::trusted("path-" + std::to_string(size), size,
                                          std::move(dist)));
}

std::vector<std::vector<int>> grid_points(int dim, int side) {
  std::vector<std::vector<int>> points;
  std::vector<int> current(dim, 0);
  while (true) {
    points.push_back(current);
    int axis = dim - 1;
    while (axis >= 0 && ++current[axis] == side) current[axis--] = 0;
    if (axis < 0) break;
  }
  std::stable_sort(points.begin(), points.end(),
                   [](const std::vector<int>& a, const std::vector<int>& b) {
                     const int ma = *std::max_element(a.begin(), a.end());
                     const int mb = *std::max_element(b.begin(), b.end());
                     if (ma != mb) return ma < mb;
                     return a < b;
                   });
  return points;
}

SpacePtr build_grid(const GridRecipe& recipe, int side) {
  if (recipe.dim < 1) throw ValidationError("grid dimension must be positive");
  long long count = 1;
  for (int i = 0; i < recipe.dim; ++i) {
    count *= side;
    if (count > 1 << 16) throw ValidationError("grid too large");
  }
  const auto points = grid_points(recipe.dim, side);
  const int n = static_cast<int>(points.size());
  std::vector<int> dist(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      int l1 = 0;
      int linf = 0;
      for (int a = 0; a < recipe.dim; ++a) {
        const int delta = std::abs(points[x][a] - points[y][a]);
        l1 += delta;
        linf = std::max(linf, delta);
      }
      dist[static_cast<std::size_t>(x) * n + y] = recipe.diagonals ? linf : l1;
    }
  }
  std::string label = "grid" + std::to_string(recipe.dim) +
                      (recipe.diagonals ? "diag-" : "-") + std::to_string(side);
  return share(FiniteMetricSpace::trusted(std::move(label), n, std::move(dist)));
}

SpacePtr build_tree(const TreeRecipe& recipe, int size) {
  if (recipe.branching < 1) throw ValidationError("tree branching must be positive");
  const int b = recipe.branching;
  std::vector<int> depth(size, 0);
  for (int i = 1; i < size; ++i) depth[i] = depth[(i - 1) / b] + 1;
  std::vector<int> dist(static_cast<std::size_t>(size) * size);
  for (int x = 0; x < size; ++x) {
    for (int y = x; y < size; ++y) {
      int u = x;
      int v = y;
      int steps = 0;
      while (u != v) {
        if (depth[u] >= depth[v]) {
          u = (u - 1) / b;
        } else {
          v = (v - 1) / b;
        }
        ++steps;
      }
      dist[static_cast<std::size_t>(x) * size + y] = steps;
      dist[static_cast<std::size_t>(y) * size + x] = steps;
    }
  }
  return share(FiniteMetricSpace::trusted(
      "tree" + std::to_string(b) + "-" + std::to_string(size), size,
      std::move(dist)));
}

// Word metric on the ball of radius `radius`, computed inside the ball of
// radius 2*radius (which contains a geodesic between any two points of the
// smaller ball) and restricted.
SpacePtr build_cayley(const CayleyRecipe& recipe, int radius) {
  validate_generating_set(recipe.generators);
  const int dim = recipe.generators.front().dim;
  const int outer = 2 * radius;
  std::map<IntMatrix, int> index;
  std::vector<IntMatrix> elements;
  std::vector<int> level;
  elements.push_back(IntMatrix::identity(dim));
  level.push_back(0);
  index.emplace(elements.front(), 0);
  for (std::size_t head = 0; head < elements.size(); ++head) {
    if (level[head] == outer) continue;
    for (const auto& g : recipe.generators) {
      IntMatrix next = elements[head] * g;
      if (index.count(next)) continue;
      if (static_cast<int>(elements.size()) >= kCayleyElementCap) {
        throw ValidationError("Cayley ball exceeds element cap");
      }
      index.emplace(next, static_cast<int>(elements.size()));
      elements.push_back(std::move(next));
      level.push_back(level[head] + 1);
    }
  }
  const int total = static_cast<int>(elements.size());
  std::vector<std::vector<int>> adjacency(total);
  for (int u = 0; u < total; ++u) {
    for (const auto& g : recipe.generators) {
      auto it = index.find(elements[u] * g);
      if (it != index.end()) adjacency[u].push_back(it->second);
    }
  }
  const int n = static_cast<int>(
      std::count_if(level.begin(), level.end(), [&](int l) { return l <= radius; }));
  std::vector<int> dist(static_cast<std::size_t>(n) * n, -1);
  std::vector<int> row(total);
  std::vector<int> queue(total);
  for (int source = 0; source < n; ++source) {
    std::fill(row.begin(), row.end(), -1);
    int head = 0;
    int tail = 0;
    row[source] = 0;
    queue[tail++] = source;
    while (head < tail) {
      const int u = queue[head++];
      for (int v : adjacency[u]) {
        if (row[v] < 0) {
          row[v] = row[u] + 1;
          queue[tail++] = v;
        }
      }
    }
    std::copy(row.begin(), row.begin() + n,
              dist.begin() + static_cast<std::size_t>(source) * n);
  }
  std::string label = "cayley-" + (recipe.preset.empty() ? "custom" : recipe.preset) +
                      "-" + std::to_string(radius);
  return share(FiniteMetricSpace::trusted(std::move(label), n, std::move(dist)));
}

IntMatrix translation(int dim, int axis, int sign) {
  IntMatrix m = IntMatrix::identity(dim + 1);
  m.entries[axis * (dim + 1) + dim] = sign;
  return m;
}

IntMatrix matrix(int dim, std::vector<long long> entries) {
  return IntMatrix{dim, std::move(entries)};
}

long long determinant(const IntMatrix& m) {
  // Bareiss fraction-free elimination.
  const int n = m.dim;
  std::vector<long long> a = m.entries;
  long long sign = 1;
  long long previous = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a[k * n + k] == 0) {
      int swap = -1;
      for (int r = k + 1; r < n; ++r) {
        if (a[r * n + k] != 0) {
          swap = r;
          break;
        }
      }
      if (swap < 0) return 0;
      for (int c = 0; c < n; ++c) std::swap(a[k * n + c], a[swap * n + c]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        a[i * n + j] = (a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j]) /
                       previous;
      }
    }
    previous = a[k * n + k];
  }
  return sign * a[(n - 1) * n + (n - 1)];
}

}  // namespace

IntMatrix IntMatrix::identity(int dim) {
  IntMatrix m{dim, std::vector<long long>(static_cast<std::size_t>(dim) * dim, 0)};
  for (int i = 0; i < dim; ++i) m.entries[i * dim + i] = 1;
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& other) const {
  IntMatrix out{dim, std::vector<long long>(entries.size(), 0)};
  for (int r = 0; r < dim; ++r) {
    for (int k = 0; k < dim; ++k) {
      const long long a = entries[r * dim + k];
      if (a == 0) continue;
      for (int c = 0; c < dim; ++c) {
        out.entries[r * dim + c] += a * other.entries[k * dim + c];
      }
    }
  }
  return out;
}

IntMatrix permutation_matrix(const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size());
  IntMatrix m{n, std::vector<long long>(static_cast<std::size_t>(n) * n, 0)};
  for (int i = 0; i < n; ++i) {
    if (perm[i] < 0 || perm[i] >= n) throw ValidationError("invalid permutation");
    m.entries[perm[i] * n + i] = 1;
  }
  return m;
}

CayleyRecipe cayley_preset(std::string_view name) {
  CayleyRecipe recipe;
  recipe.preset = std::string(name);
  if (name == "z1" || name == "z2" || name == "z3") {
    const int dim = name[1] - '0';
    for (int axis = 0; axis < dim; ++axis) {
      recipe.generators.push_back(translation(dim, axis, 1));
      recipe.generators.push_back(translation(dim, axis, -1));
    }
  } else if (name == "f2") {
    recipe.generators = {matrix(2, {1, 2, 0, 1}), matrix(2, {1, -2, 0, 1}),
                         matrix(2, {1, 0, 2, 1}), matrix(2, {1, 0, -2, 1})};
  } else if (name == "heisenberg") {
    recipe.generators = {matrix(3, {1, 1, 0, 0, 1, 0, 0, 0, 1}),
                         matrix(3, {1, -1, 0, 0, 1, 0, 0, 0, 1}),
                         matrix(3, {1, 0, 0, 0, 1, 1, 0, 0, 1}),
                         matrix(3, {1, 0, 0, 0, 1, -1, 0, 0, 1})};
  } else {
    throw ValidationError("unknown Cayley preset '" + std::string(name) +
                          "' (expected z1, z2, z3, f2, heisenberg)");
  }
  return recipe;
}

void validate_generating_set(const std::vector<IntMatrix>& generators) {
  if (generators.empty()) throw ValidationError("generating set is empty");
  const int dim = generators.front().dim;
  if (dim < 1) throw ValidationError("generator dimension must be positive");
  std::set<IntMatrix> members;
  for (const auto& g : generators) {
    if (g.dim != dim || g.entries.size() != static_cast<std::size_t>(dim) * dim) {
      throw ValidationError("generators have mismatched dimensions");
    }
    const long long det = determinant(g);
    if (det != 1 && det != -1) {
      throw ValidationError("generator is not invertible over the integers");
    }
    members.insert(g);
  }
  const IntMatrix id = IntMatrix::identity(dim);
  if (members.count(id)) {
    throw ValidationError("generating set contains the identity");
  }
  for (const auto& g : generators) {
    bool has_inverse = false;
    for (const auto& h : generators) {
      if (g * h == id) {
        has_inverse = true;
        break;
      }
    }
    if (!has_inverse) {
      throw ValidationError("generating set is not symmetric (missing inverse)");
    }
  }
}

Recipe parse_recipe(std::string_view name) {
  if (name == "path") return PathRecipe{};
  if (name.starts_with("cayley-")) return cayley_preset(name.substr(7));
  if (name.starts_with("grid")) {
    std::string_view rest = name.substr(4);
    GridRecipe recipe;
    if (rest.ends_with("-diag")) {
      recipe.diagonals = true;
      rest.remove_suffix(5);
    }
    recipe.dim = parse_positive(rest, "grid dimension");
    return recipe;
  }
  if (name.starts_with("tree")) {
    return TreeRecipe{parse_positive(name.substr(4), "tree branching")};
  }
  throw ValidationError("unknown recipe '" + std::string(name) +
                        "' (expected path, grid<d>, grid<d>-diag, tree<b>, "
                        "cayley-<preset>)");
}

std::string recipe_name(const Recipe& recipe) {
  struct Visitor {
    std::string operator()(const PathRecipe&) const { return "path"; }
    std::string operator()(const GridRecipe& r) const {
      return "grid" + std::to_string(r.dim) + (r.diagonals ? "-diag" : "");
    }
    std::string operator()(const TreeRecipe& r) const {
      return "tree" + std::to_string(r.branching);
    }
    std::string operator()(const CayleyRecipe& r) const {
      return "cayley-" + (r.preset.empty() ? std::string("custom") : r.preset);
    }
  };
  return std::visit(Visitor{}, recipe);
}

SpacePtr build_space(const Recipe& recipe, int size) {
  if (size < 1) throw ValidationError("size must be at least 1");
  struct Visitor {
    int size;
    SpacePtr operator()(const PathRecipe&) const { return build_path(size); }
    SpacePtr operator()(const GridRecipe& r) const { return build_grid(r, size); }
    SpacePtr operator()(const TreeRecipe& r) const { return build_tree(r, size); }
    SpacePtr operator()(const CayleyRecipe& r) const { return build_cayley(r, size); }
  };
  return std::visit(Visitor{size}, recipe);
}

const SpacePtr& SpaceFamily::at(int index) const {
  auto it = spaces.find(index);
  if (it == spaces.end()) {
    throw ValidationError("family has no truncation with index " +
                          std::to_string(index));
  }
  return it->second;
}

SpaceFamily build_family(const Recipe& recipe, std::vector<int> indices) {
  if (indices.empty()) throw ValidationError("family needs at least one index");
  SpaceFamily family{recipe, std::move(indices), {}};
  for (int index : family.indices) {
    family.spaces.emplace(index, build_space(recipe, index));
  }
  auto issues = check_nested(family);
  if (!issues.empty()) throw ValidationError(issues.front());
  return family;
}

std::vector<std::string> check_nested(const SpaceFamily& family) {
  std::vector<std::string> issues;
  for (std::size_t i = 0; i < family.indices.size(); ++i) {
    const int index = family.indices[i];
    if (!family.spaces.count(index)) {
      issues.push_back("index " + std::to_string(index) + " has no space");
      continue;
    }
    if (i == 0) continue;
    const int previous = family.indices[i - 1];
    if (index <= previous) {
      issues.push_back("indices must be strictly increasing");
      continue;
    }
    if (!family.spaces.count(previous)) continue;
    if (!embeds_as_prefix(*family.spaces.at(previous), *family.spaces.at(index))) {
      issues.push_back("truncation " + std::to_string(previous) +
                       " does not embed isometrically as a prefix of " +
                       std::to_string(index));
    }
  }
  return issues;
}

}  // namespace coarsekit
