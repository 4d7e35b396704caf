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

#include "coarsekit/sparsification.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

#include "coarsekit/error.hpp"

namespace coarsekit {

MassDistribution::MassDistribution(SpacePtr space, std::vector<double> mass)
    : space_(std::move(space)), mass_(std::move(mass)) {
  if (!space_) throw ValidationError("mass distribution needs a space");
  if (static_cast<int>(mass_.size()) != space_->size()) {
    throw ValidationError("mass vector has " + std::to_string(mass_.size()) +
                          " entries, space has " + std::to_string(space_->size()));
  }
  double total = 0.0;
  for (double m : mass_) {
    if (!(m >= 0.0) || !std::isfinite(m)) {
      throw ValidationError("masses must be finite and non-negative");
    }
    total += m;
  }
  if (std::abs(total - 1.0) > kMassTolerance) {
    throw ValidationError("masses sum to " + std::to_string(total) + ", not 1");
  }
}

MassDistribution MassDistribution::uniform(SpacePtr space) {
  const int n = space->size();
  return MassDistribution(std::move(space), std::vector<double>(n, 1.0 / n));
}

double MassDistribution::of(std::span<const int> points) const {
  double total = 0.0;
  for (int x : points) total += mass_[x];
  return total;
}

MassDistribution vector_mass(SpacePtr space, int k, const Eigen::VectorXcd& xi,
                             double tol) {
  if (k < 1 || xi.size() != static_cast<Eigen::Index>(space->size()) * k) {
    throw ValidationError("vector length does not match the space and fiber");
  }
  const double norm_sq = xi.squaredNorm();
  if (std::abs(std::sqrt(norm_sq) - 1.0) > tol) {
    throw ValidationError("vector is not a unit vector (norm " +
                          std::to_string(std::sqrt(norm_sq)) + ")");
  }
  std::vector<double> mass(space->size());
  for (int x = 0; x < space->size(); ++x) {
    mass[x] = xi.segment(static_cast<Eigen::Index>(x) * k, k).squaredNorm() / norm_sq;
  }
  return MassDistribution(std::move(space), std::move(mass));
}

std::vector<int> Decomposition::omega() const {
  std::vector<int> all;
  for (const auto& piece : pieces) all.insert(all.end(), piece.begin(), piece.end());
  std::sort(all.begin(), all.end());
  return all;
}

void Decomposition::canonicalize() {
  for (auto& piece : pieces) std::sort(piece.begin(), piece.end());
  std::sort(pieces.begin(), pieces.end());
}

std::string to_string(SparsificationVerdict verdict) {
  return verdict == SparsificationVerdict::kFeasible ? "FEASIBLE" : "INFEASIBLE";
}

SparsificationResult validate_decomposition(const MassDistribution& mu,
                                            Decomposition decomposition,
                                            double kappa, int separation) {
  const auto& space = *mu.space();
  std::vector<bool> used(space.size(), false);
  for (const auto& piece : decomposition.pieces) {
    if (piece.empty()) throw ValidationError("decomposition has an empty piece");
    for (int x : piece) {
      if (!space.contains(x)) {
        throw ValidationError("piece point " + std::to_string(x) + " out of range");
      }
      if (used[x]) {
        throw ValidationError("pieces overlap at point " + std::to_string(x));
      }
      used[x] = true;
    }
  }
  decomposition.canonicalize();
  SparsificationResult result;
  result.kappa_target = kappa;
  result.separation_target = separation;
  result.kappa_achieved = mu.of(decomposition.omega());
  for (std::size_t i = 0; i < decomposition.pieces.size(); ++i) {
    result.D_achieved =
        std::max(result.D_achieved, set_diameter(space, decomposition.pieces[i]));
    for (std::size_t j = i + 1; j < decomposition.pieces.size(); ++j) {
      const int d = *set_distance(space, decomposition.pieces[i],
                                  decomposition.pieces[j]);
      if (!result.separation_achieved || d < *result.separation_achieved) {
        result.separation_achieved = d;
      }
    }
  }
  const bool mass_ok = result.kappa_achieved >= kappa - kMassTolerance;
  const bool separated =
      !result.separation_achieved || *result.separation_achieved > separation;
  result.verdict = mass_ok && separated ? SparsificationVerdict::kFeasible
                                        : SparsificationVerdict::kInfeasible;
  result.decomposition = std::move(decomposition);
  return result;
}

namespace {

using Mask = std::uint32_t;

// Branch-and-bound over subsets for one diameter bound D. Points are decided
// in index order; including a point merges it with every included point
// within S, and a merged component wider than D prunes the branch.
class SubsetSearch {
 public:
  SubsetSearch(const MassDistribution& mu, double kappa, int separation, int bound)
      : space_(*mu.space()),
        mass_(mu.mass()),
        kappa_(kappa),
        separation_(separation),
        bound_(bound),
        n_(space_.size()),
        suffix_(n_ + 1, 0.0) {
    for (int p = n_ - 1; p >= 0; --p) suffix_[p] = suffix_[p + 1] + mass_[p];
  }

  std::optional<std::vector<std::vector<int>>> run() {
    components_.clear();
    search(0, 0.0);
    return best_;
  }

 private:
  int mask_diameter(Mask mask) const {
    int best = 0;
    for (int a = 0; a < n_; ++a) {
      if (!(mask >> a & 1)) continue;
      for (int b = a + 1; b < n_; ++b) {
        if (mask >> b & 1) best = std::max(best, space_.distance(a, b));
      }
    }
    return best;
  }

  void record() {
    std::vector<std::vector<int>> pieces;
    for (Mask mask : components_) {
      if (mask == 0) continue;
      std::vector<int> piece;
      for (int p = 0; p < n_; ++p) {
        if (mask >> p & 1) piece.push_back(p);
      }
      pieces.push_back(std::move(piece));
    }
    std::sort(pieces.begin(), pieces.end());
    if (!best_ || pieces < *best_) best_ = std::move(pieces);
  }

  void search(int p, double mass) {
    if (mass + suffix_[p] < kappa_ - kMassTolerance) return;
    if (p == n_) {
      record();
      return;
    }
    // Include p.
    Mask merged = Mask{1} << p;
    std::vector<std::size_t> absorbed;
    for (std::size_t c = 0; c < components_.size(); ++c) {
      const Mask mask = components_[c];
      if (mask == 0) continue;
      for (int q = 0; q < p; ++q) {
        if ((mask >> q & 1) && space_.distance(p, q) <= separation_) {
          absorbed.push_back(c);
          merged |= mask;
          break;
        }
      }
    }
    if (mask_diameter(merged) <= bound_) {
      std::vector<Mask> saved;
      for (std::size_t c : absorbed) {
        saved.push_back(components_[c]);
        components_[c] = 0;
      }
      components_.push_back(merged);
      search(p + 1, mass + mass_[p]);
      components_.pop_back();
      for (std::size_t i = 0; i < absorbed.size(); ++i) {
        components_[absorbed[i]] = saved[i];
      }
    }
    // Exclude p.
    search(p + 1, mass);
  }

  const FiniteMetricSpace& space_;
  const std::vector<double>& mass_;
  double kappa_;
  int separation_;
  int bound_;
  int n_;
  std::vector<double> suffix_;
  std::vector<Mask> components_;
  std::optional<std::vector<std::vector<int>>> best_;
};

}  // namespace

SparsificationResult sparsify_exact(const MassDistribution& mu, double kappa,
                                    int separation,
                                    const SparsifyOptions& options) {
  const auto& space = *mu.space();
  if (space.size() > options.point_cap || space.size() > 31) {
    throw RejectionError("exact sparsification is capped at " +
                         std::to_string(options.point_cap) + " points; space has " +
                         std::to_string(space.size()));
  }
  if (separation < 0) throw ValidationError("separation S must be non-negative");
  const int limit = options.max_diameter.value_or(space.diameter());
  for (int bound = 0; bound <= limit; ++bound) {
    SubsetSearch search(mu, kappa, separation, bound);
    if (auto pieces = search.run()) {
      return validate_decomposition(mu, Decomposition{std::move(*pieces)}, kappa,
                                    separation);
    }
  }
  SparsificationResult result =
      validate_decomposition(mu, Decomposition{}, kappa, separation);
  result.verdict = SparsificationVerdict::kInfeasible;
  return result;
}

SparsificationResult sparsify_greedy(const MassDistribution& mu, double kappa,
                                     int separation,
                                     const SparsifyOptions& options) {
  const auto& space = *mu.space();
  if (separation < 0) throw ValidationError("separation S must be non-negative");
  const int n = space.size();
  const int limit = options.max_diameter.value_or(space.diameter());
  if (kappa <= 0.0) return validate_decomposition(mu, Decomposition{}, kappa, separation);

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return mu.mass()[a] > mu.mass()[b]; });

  SparsificationResult last;
  for (int radius = 0; radius <= space.diameter(); ++radius) {
    Decomposition decomposition;
    std::vector<bool> assigned(n, false);
    // blocked[x]: x lies within S of an accepted piece.
    std::vector<bool> blocked(n, false);
    for (int seed : order) {
      if (mu.mass()[seed] <= 0.0 || assigned[seed] || blocked[seed]) continue;
      std::vector<int> piece;
      for (int q = 0; q < n; ++q) {
        if (!assigned[q] && !blocked[q] && space.distance(seed, q) <= radius) {
          piece.push_back(q);
        }
      }
      for (int q : piece) assigned[q] = true;
      for (int q = 0; q < n; ++q) {
        if (blocked[q]) continue;
        for (int p : piece) {
          if (space.distance(p, q) <= separation) {
            blocked[q] = true;
            break;
          }
        }
      }
      decomposition.pieces.push_back(std::move(piece));
    }
    last = validate_decomposition(mu, std::move(decomposition), kappa, separation);
    if (last.verdict == SparsificationVerdict::kFeasible && last.D_achieved <= limit) {
      return last;
    }
  }
  last.verdict = SparsificationVerdict::kInfeasible;
  return last;
}

}  // namespace coarsekit
