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

#include "coarsekit/rigidity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>

#include "coarsekit/error.hpp"
#include "coarsekit/parallel.hpp"
#include "coarsekit/random.hpp"

namespace coarsekit {

namespace {

std::string describe(const MatrixUnitIndex& e) {
  std::ostringstream out;
  out << "e_{(" << e.x << "," << e.i << "),(" << e.y << "," << e.j << ")}";
  return out.str();
}

Eigen::VectorXcd unit_vector(int dim, int i) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
  v(i) = 1.0;
  return v;
}

double segment_norm(const Eigen::VectorXcd& v, int point, int k) {
  return v.segment(static_cast<Eigen::Index>(point) * k, k).norm();
}

}  // namespace

IsomorphismTable::IsomorphismTable(SpacePtr domain, int k_dom,
                                   SpacePtr codomain, int k_cod,
                                   ImageFn images)
    : domain_(std::move(domain)),
      codomain_(std::move(codomain)),
      k_dom_(k_dom),
      k_cod_(k_cod),
      images_(std::move(images)) {
  if (!domain_ || !codomain_) throw ValidationError("table: null space");
  if (k_dom_ < 1 || k_cod_ < 1) {
    throw ValidationError("table: fiber dimensions must be positive");
  }
  if (!images_) throw ValidationError("table: missing image provider");
}

IsomorphismTable IsomorphismTable::from_images(
    SpacePtr domain, int k_dom, SpacePtr codomain, int k_cod,
    std::map<MatrixUnitIndex, BandOperator> images) {
  const int n = domain->size();
  const std::size_t expected =
      static_cast<std::size_t>(n) * n * k_dom * k_dom;
  if (images.size() != expected) {
    throw ValidationError("table: expected " + std::to_string(expected) +
                          " generator images, got " +
                          std::to_string(images.size()));
  }
  for (const auto& [e, op] : images) {
    if (e.x < 0 || e.x >= n || e.y < 0 || e.y >= n || e.i < 0 ||
        e.i >= k_dom || e.j < 0 || e.j >= k_dom) {
      throw ValidationError("table: generator " + describe(e) +
                            " out of range");
    }
    if (!same_space(op.row_space(), codomain) ||
        !same_space(op.col_space(), codomain) || op.k_row() != k_cod ||
        op.k_col() != k_cod) {
      throw ValidationError("table: image of " + describe(e) +
                            " is not an operator on the codomain");
    }
  }
  auto shared =
      std::make_shared<const std::map<MatrixUnitIndex, BandOperator>>(
          std::move(images));
  return IsomorphismTable(std::move(domain), k_dom, std::move(codomain),
                          k_cod, [shared](const MatrixUnitIndex& e) {
                            return shared->at(e);
                          });
}

IsomorphismTable IsomorphismTable::conjugation(const FiniteUnitary& v) {
  auto matrix = std::make_shared<const Eigen::MatrixXcd>(v.matrix());
  const int k_dom = v.k_dom();
  const int k_cod = v.k_cod();
  SpacePtr codomain = v.codomain();
  return IsomorphismTable(
      v.domain(), k_dom, codomain, k_cod,
      [matrix, k_dom, k_cod, codomain](const MatrixUnitIndex& e) {
        const Eigen::Index a = static_cast<Eigen::Index>(e.x) * k_dom + e.i;
        const Eigen::Index b = static_cast<Eigen::Index>(e.y) * k_dom + e.j;
        Eigen::MatrixXcd dense = matrix->col(a) * matrix->col(b).adjoint();
        return BandOperator::from_dense(codomain, codomain, k_cod, k_cod,
                                        dense);
      });
}

int IsomorphismTable::generator_count() const {
  const int d = domain_->size() * k_dom_;
  return d * d;
}

BandOperator IsomorphismTable::generator(const MatrixUnitIndex& e) const {
  return BandOperator::rank_one(domain_, e.x, unit_vector(k_dom_, e.i),
                                domain_, e.y, unit_vector(k_dom_, e.j));
}

BandOperator IsomorphismTable::image(const MatrixUnitIndex& e) const {
  const int n = domain_->size();
  if (e.x < 0 || e.x >= n || e.y < 0 || e.y >= n || e.i < 0 ||
      e.i >= k_dom_ || e.j < 0 || e.j >= k_dom_) {
    throw ValidationError("table: generator " + describe(e) +
                          " out of range");
  }
  BandOperator op = images_(e);
  if (!same_space(op.row_space(), codomain_) ||
      !same_space(op.col_space(), codomain_) || op.k_row() != k_cod_ ||
      op.k_col() != k_cod_) {
    throw ValidationError("table: image of " + describe(e) +
                          " is not an operator on the codomain");
  }
  return op;
}

std::optional<std::string> check_star_compatibility(
    const IsomorphismTable& phi, const StarCheckOptions& options) {
  const int n = phi.domain()->size();
  const int k = phi.k_dom();
  const int dim = phi.codomain()->size() * phi.k_cod();
  Rng rng(options.seed);
  auto random_unit = [&]() {
    return MatrixUnitIndex{rng.index(n), rng.index(k), rng.index(n),
                           rng.index(k)};
  };
  for (int s = 0; s < options.samples; ++s) {
    const MatrixUnitIndex a = random_unit();
    MatrixUnitIndex b = random_unit();
    if (s % 2 == 0) {
      b.x = a.y;
      b.i = a.j;
    }
    const Eigen::MatrixXcd pa = phi.image(a).to_dense();
    const Eigen::MatrixXcd pb = phi.image(b).to_dense();
    Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(dim, dim);
    if (a.y == b.x && a.j == b.i) {
      expected = phi.image({a.x, a.i, b.y, b.j}).to_dense();
    }
    const double product_defect = (pa * pb - expected).norm();
    if (!(product_defect <= options.tolerance)) {
      std::ostringstream out;
      out << "phi(ab) != phi(a)phi(b) for a = " << describe(a)
          << ", b = " << describe(b) << " (defect " << product_defect << ")";
      return out.str();
    }
    const Eigen::MatrixXcd pstar = phi.image({a.y, a.j, a.x, a.i}).to_dense();
    const double star_defect = (pstar - pa.adjoint()).norm();
    if (!(star_defect <= options.tolerance)) {
      std::ostringstream out;
      out << "phi(a^*) != phi(a)^* for a = " << describe(a) << " (defect "
          << star_defect << ")";
      return out.str();
    }
  }
  return std::nullopt;
}

RecoveryResult recover_unitary(const IsomorphismTable& phi,
                               const RecoveryOptions& options) {
  const int n_dom = phi.domain()->size();
  const int k_dom = phi.k_dom();
  const int dim_dom = n_dom * k_dom;
  const int dim_cod = phi.codomain()->size() * phi.k_cod();
  if (dim_dom != dim_cod) {
    throw RejectionError("recover: total dimensions differ (" +
                         std::to_string(dim_dom) + " vs " +
                         std::to_string(dim_cod) + ")");
  }
  if (auto failure = check_star_compatibility(phi, options.star)) {
    throw RejectionError("recover: not a *-homomorphism: " + *failure);
  }

  const Eigen::MatrixXcd p = phi.image({0, 0, 0, 0}).to_dense();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(p);
  const auto& sigma = svd.singularValues();
  const double scale = std::max(1.0, sigma.size() > 0 ? sigma(0) : 0.0);
  int rank = 0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > options.rank_tolerance * scale) ++rank;
  }
  if (rank != 1) {
    throw RejectionError("recover: phi(e_{(0,0),(0,0)}) has rank " +
                         std::to_string(rank) + ", expected 1");
  }
  Eigen::Index best = 0;
  p.colwise().norm().maxCoeff(&best);
  const Eigen::VectorXcd xi = p.col(best).normalized();

  Eigen::MatrixXcd matrix(dim_cod, dim_dom);
  parallel_for(static_cast<std::size_t>(dim_dom), [&](std::size_t c) {
    const int x = static_cast<int>(c) / k_dom;
    const int i = static_cast<int>(c) % k_dom;
    matrix.col(static_cast<Eigen::Index>(c)) =
        phi.image({x, i, 0, 0}).apply(xi);
  });
  const double defect = (matrix.adjoint() * matrix -
                         Eigen::MatrixXcd::Identity(dim_dom, dim_dom))
                            .norm();
  if (!(defect <= options.tolerance)) {
    std::ostringstream out;
    out << "recover: candidate intertwiner is not unitary (defect " << defect
        << ")";
    throw RejectionError(out.str());
  }
  FiniteUnitary u(phi.domain(), phi.codomain(), k_dom, phi.k_cod(),
                  std::move(matrix), std::numeric_limits<double>::infinity());

  std::vector<double> row_defect(dim_dom, 0.0);
  std::vector<int> row_worst(dim_dom, 0);
  parallel_for(static_cast<std::size_t>(dim_dom), [&](std::size_t a) {
    const Eigen::VectorXcd ua = u.matrix().col(static_cast<Eigen::Index>(a));
    for (int b = 0; b < dim_dom; ++b) {
      const MatrixUnitIndex e{static_cast<int>(a) / k_dom,
                              static_cast<int>(a) % k_dom, b / k_dom,
                              b % k_dom};
      Eigen::MatrixXcd diff = phi.image(e).to_dense();
      diff.noalias() -= ua * u.matrix().col(b).adjoint();
      const double d = diff.norm();
      if (d > row_defect[a]) {
        row_defect[a] = d;
        row_worst[a] = b;
      }
    }
  });
  RecoveryResult result{std::move(u), 0.0, {0, 0, 0, 0}};
  for (int a = 0; a < dim_dom; ++a) {
    if (row_defect[a] > result.max_generator_defect) {
      result.max_generator_defect = row_defect[a];
      result.worst_generator = {a / k_dom, a % k_dom, row_worst[a] / k_dom,
                                row_worst[a] % k_dom};
    }
  }
  if (!(result.max_generator_defect <= options.tolerance)) {
    std::ostringstream out;
    out << "recover: U e U^* differs from phi(e) at "
        << describe(result.worst_generator) << " (defect "
        << result.max_generator_defect << ")";
    throw RejectionError(out.str());
  }
  return result;
}

CoefficientCheck coefficient_formula_check(const FiniteUnitary& u,
                                           const CoefficientTuple& t) {
  const int kd = u.k_dom();
  const int kc = u.k_cod();
  const int dim = u.dim();
  auto embed = [dim](int point, int k, const Eigen::VectorXcd& v) {
    if (v.size() != k) {
      throw ValidationError("coefficient check: fiber vector has length " +
                            std::to_string(v.size()) + ", expected " +
                            std::to_string(k));
    }
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim);
    out.segment(static_cast<Eigen::Index>(point) * k, k) = v;
    return out;
  };
  if (!u.domain()->contains(t.x1) || !u.domain()->contains(t.x2) ||
      !u.codomain()->contains(t.y1) || !u.codomain()->contains(t.y2)) {
    throw ValidationError("coefficient check: point out of range");
  }
  const Eigen::VectorXcd dx1 = embed(t.x1, kd, t.v1);
  const Eigen::VectorXcd dx2 = embed(t.x2, kd, t.v2);
  const Eigen::VectorXcd dy1 = embed(t.y1, kc, t.w1);
  const Eigen::VectorXcd dy2 = embed(t.y2, kc, t.w2);

  // U e U^* applied to delta_{y2} (x) w2, paired with delta_{y1} (x) w1.
  const Eigen::VectorXcd pulled = u.matrix().adjoint() * dy2;
  const Eigen::VectorXcd unit_applied = dx2.dot(pulled) * dx1;
  const Eigen::VectorXcd pushed = u.matrix() * unit_applied;
  CoefficientCheck check;
  check.lhs = dy1.dot(pushed);
  const Eigen::VectorXcd ux1 = u.matrix() * dx1;
  const Eigen::VectorXcd ux2 = u.matrix() * dx2;
  check.rhs = dy1.dot(ux1) * ux2.dot(dy2);
  check.defect = std::abs(check.lhs - check.rhs);
  return check;
}

std::string to_string(ExtractionVerdict verdict) {
  return verdict == ExtractionVerdict::kCertified ? "CERTIFIED"
                                                  : "UNCERTIFIED";
}

ThresholdExtraction extract_map_threshold(const FiniteUnitary& u,
                                          const ExtractionParams& params) {
  if (!(params.c > 0.0 && params.c <= 1.0)) {
    throw ValidationError("extract: threshold c must lie in (0,1]");
  }
  if (params.v0_index < 0 || params.v0_index >= u.k_dom()) {
    throw ValidationError("extract: fiber index out of range");
  }
  const int n = u.domain()->size();
  const int m = u.codomain()->size();
  const int kc = u.k_cod();
  std::vector<int> table(n, 0);
  std::vector<double> peaks(n, 0.0);
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t x) {
    const Eigen::VectorXcd xi = u.image(static_cast<int>(x), params.v0_index);
    double best = -1.0;
    for (int y = 0; y < m; ++y) {
      const double norm = segment_norm(xi, y, kc);
      if (norm > best) {
        best = norm;
        table[x] = y;
      }
    }
    peaks[x] = best;
  });
  ThresholdExtraction result{PointMap(u.domain(), u.codomain(), table),
                             peaks, ExtractionVerdict::kCertified, 0,
                             n > 0 ? peaks[0] : 0.0};
  for (int x = 1; x < n; ++x) {
    if (peaks[x] < result.worst_peak) {
      result.worst_peak = peaks[x];
      result.worst_point = x;
    }
  }
  if (n > 0 && result.worst_peak < params.c) {
    result.verdict = ExtractionVerdict::kUncertified;
  }
  return result;
}

PointMap extract_map_support(const FiniteUnitary& u, double eta,
                             int v0_index) {
  if (!(eta >= 0.0)) throw ValidationError("extract: eta must be >= 0");
  if (v0_index < 0 || v0_index >= u.k_dom()) {
    throw ValidationError("extract: fiber index out of range");
  }
  const int n = u.domain()->size();
  const int m = u.codomain()->size();
  std::vector<int> table(n, -1);
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t x) {
    const Eigen::VectorXcd xi = u.image(static_cast<int>(x), v0_index);
    for (int y = 0; y < m; ++y) {
      if (segment_norm(xi, y, u.k_cod()) > eta) {
        table[x] = y;
        return;
      }
    }
  });
  for (int x = 0; x < n; ++x) {
    if (table[x] < 0) {
      std::ostringstream out;
      out << "extract: no coefficient above " << eta << " at x = " << x;
      throw RejectionError(out.str());
    }
  }
  return PointMap(u.domain(), u.codomain(), std::move(table));
}

LocalityAudit locality_audit(const FiniteUnitary& u,
                             const LocalityAuditOptions& options) {
  if (!(options.delta > 0.0)) {
    throw ValidationError("locality audit: delta must be positive");
  }
  const FiniteMetricSpace& x_space = *u.domain();
  const FiniteMetricSpace& y_space = *u.codomain();
  const int n = x_space.size();
  const int m = y_space.size();
  const int kd = u.k_dom();
  if (!options.fiber_bases.empty() &&
      static_cast<int>(options.fiber_bases.size()) != n) {
    throw ValidationError("locality audit: need one fiber basis per point");
  }
  const int r_max = options.r_max.value_or(x_space.diameter());
  if (r_max < 0) throw ValidationError("locality audit: negative r_max");

  std::vector<std::vector<int>> support(n);
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t xs) {
    const int x = static_cast<int>(xs);
    Eigen::MatrixXcd basis;
    if (options.fiber_bases.empty()) {
      basis = unit_vector(kd, 0);
    } else {
      const Eigen::MatrixXcd& raw = options.fiber_bases[x];
      if (raw.rows() != kd || raw.cols() < 1 || raw.cols() > kd) {
        throw ValidationError("locality audit: fiber basis at x = " +
                              std::to_string(x) + " has the wrong shape");
      }
      Eigen::HouseholderQR<Eigen::MatrixXcd> qr(raw);
      basis = qr.householderQ() * Eigen::MatrixXcd::Identity(kd, raw.cols());
    }
    for (int y = 0; y < m; ++y) {
      const Eigen::MatrixXcd restricted = u.block(y, x) * basis;
      const double norm =
          restricted.cols() == 1
              ? restricted.norm()
              : Eigen::JacobiSVD<Eigen::MatrixXcd>(restricted)
                    .singularValues()(0);
      if (norm >= options.delta) support[x].push_back(y);
    }
  });

  const int span = std::max(r_max, x_space.diameter());
  std::vector<std::vector<int>> by_distance(
      n, std::vector<int>(static_cast<std::size_t>(span) + 1, -1));
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t xs) {
    const int x1 = static_cast<int>(xs);
    for (int x2 = x1; x2 < n; ++x2) {
      int pair_spread = -1;
      for (int y1 : support[x1]) {
        for (int y2 : support[x2]) {
          pair_spread = std::max(pair_spread, y_space.distance(y1, y2));
        }
      }
      int& slot = by_distance[x1][x_space.distance(x1, x2)];
      slot = std::max(slot, pair_spread);
    }
  });

  LocalityAudit audit;
  audit.delta = options.delta;
  audit.spread.assign(static_cast<std::size_t>(r_max) + 1, 0);
  int running = 0;
  for (int r = 0; r <= r_max; ++r) {
    if (r <= span) {
      for (int x = 0; x < n; ++x) running = std::max(running, by_distance[x][r]);
    }
    audit.spread[r] = running;
  }
  audit.support_sizes.reserve(n);
  for (const auto& s : support) {
    audit.support_sizes.push_back(static_cast<int>(s.size()));
  }
  return audit;
}

LocalityFamilyAudit locality_family_audit(
    const std::map<int, LocalityAudit>& audits) {
  LocalityFamilyAudit report;
  if (audits.empty()) return report;
  std::size_t radii = std::numeric_limits<std::size_t>::max();
  for (const auto& [index, audit] : audits) {
    report.indices.push_back(index);
    radii = std::min(radii, audit.spread.size());
  }
  std::vector<UniformityVerdict> verdicts;
  for (std::size_t r = 0; r < radii; ++r) {
    QuantitySeries series;
    series.name = "S(" + std::to_string(r) + ")";
    for (const auto& [index, audit] : audits) {
      series.values.push_back(audit.spread[r]);
    }
    series.sup = *std::max_element(series.values.begin(), series.values.end());
    series.verdict = stabilization_verdict(series.values);
    verdicts.push_back(series.verdict);
    report.spread.push_back(std::move(series));
  }
  report.verdict = combine_verdicts(verdicts);
  return report;
}

CoveringCertificate verify_covers(const FiniteUnitary& u, const PointMap& f,
                                  std::optional<int> claimed, double floor) {
  if (!same_space(u.domain(), f.domain()) ||
      !same_space(u.codomain(), f.codomain())) {
    throw ValidationError("verify covers: unitary and map spaces differ");
  }
  const int n = u.domain()->size();
  const int m = u.codomain()->size();
  const FiniteMetricSpace& y_space = *u.codomain();
  CoveringCertificate certificate;
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < m; ++y) {
      const double norm =
          u.matrix()
              .block(static_cast<Eigen::Index>(y) * u.k_cod(),
                     static_cast<Eigen::Index>(x) * u.k_dom(), u.k_cod(),
                     u.k_dom())
              .norm();
      if (!(norm > floor)) continue;
      const int d = y_space.distance(f(x), y);
      certificate.bound = std::max(certificate.bound, d);
      if (claimed && d > *claimed) certificate.witnesses.emplace_back(x, y);
    }
  }
  return certificate;
}

namespace {

// Greedy balanced partition of the codomain; pieces[n] in growth order, or
// nullopt when some piece cannot be balanced within the diameter.
std::optional<std::vector<std::vector<int>>> balanced_partition(
    const FiniteMetricSpace& y_space, const std::vector<int>& preimage_count,
    int k_dom, int k_cod, int diameter) {
  const int m = y_space.size();
  std::vector<bool> assigned(m, false);
  std::vector<std::vector<int>> pieces;
  for (int seed = 0; seed < m; ++seed) {
    if (assigned[seed]) continue;
    std::vector<int> piece{seed};
    assigned[seed] = true;
    long balance = static_cast<long>(preimage_count[seed]) * k_dom - k_cod;
    while (balance != 0) {
      int best = -1;
      long best_balance = 0;
      int best_distance = 0;
      for (int y = 0; y < m; ++y) {
        if (assigned[y]) continue;
        bool fits = true;
        for (int p : piece) {
          if (y_space.distance(p, y) > diameter) {
            fits = false;
            break;
          }
        }
        if (!fits) continue;
        const long next =
            balance + static_cast<long>(preimage_count[y]) * k_dom - k_cod;
        const int dist = y_space.distance(seed, y);
        if (best < 0 || std::labs(next) < std::labs(best_balance) ||
            (std::labs(next) == std::labs(best_balance) &&
             dist < best_distance)) {
          best = y;
          best_balance = next;
          best_distance = dist;
        }
      }
      if (best < 0) return std::nullopt;
      piece.push_back(best);
      assigned[best] = true;
      balance = best_balance;
    }
    std::sort(piece.begin(), piece.end());
    pieces.push_back(std::move(piece));
  }
  return pieces;
}

}  // namespace

CoveringResult covering_unitary(const PointMap& f, int max_block_diameter,
                                const CoveringOptions& options) {
  if (max_block_diameter < 0) {
    throw ValidationError("cover: block diameter must be >= 0");
  }
  const int n = f.domain()->size();
  const int m = f.codomain()->size();
  if (n == 0 || m == 0) throw ValidationError("cover: empty space");
  const int g = std::gcd(n, m);
  const int k_dom = m / g;
  const int k_cod = n / g;
  if (k_dom > options.fiber_cap || k_cod > options.fiber_cap) {
    std::ostringstream out;
    out << "cover: cardinality obstruction: |X| = " << n << ", |Y| = " << m
        << " force fiber dimensions k_dom = " << k_dom << ", k_cod = " << k_cod
        << " (cap " << options.fiber_cap << ")";
    throw RejectionError(out.str());
  }

  std::vector<int> preimage_count(m, 0);
  for (int x = 0; x < n; ++x) ++preimage_count[f(x)];

  std::optional<std::vector<std::vector<int>>> pieces;
  int diameter = max_block_diameter;
  for (int attempt = 0; attempt <= options.diameter_retries; ++attempt) {
    diameter = max_block_diameter + attempt;
    pieces = balanced_partition(*f.codomain(), preimage_count, k_dom, k_cod,
                                diameter);
    if (pieces) break;
  }
  if (!pieces) {
    std::ostringstream out;
    out << "cover: no partition of the codomain into pieces of diameter <= "
        << diameter << " balancing " << k_dom << "|f^-1(P)| = " << k_cod
        << "|P|";
    throw RejectionError(out.str());
  }

  std::vector<int> piece_of(m, 0);
  for (std::size_t p = 0; p < pieces->size(); ++p) {
    for (int y : (*pieces)[p]) piece_of[y] = static_cast<int>(p);
  }
  std::vector<std::vector<int>> domain_pieces(pieces->size());
  for (int x = 0; x < n; ++x) domain_pieces[piece_of[f(x)]].push_back(x);

  Eigen::MatrixXcd matrix = Eigen::MatrixXcd::Zero(
      static_cast<Eigen::Index>(m) * k_cod, static_cast<Eigen::Index>(n) * k_dom);
  Rng rng(options.seed);
  for (std::size_t p = 0; p < pieces->size(); ++p) {
    const auto& ys = (*pieces)[p];
    const auto& xs = domain_pieces[p];
    const int dim = static_cast<int>(ys.size()) * k_cod;
    const Eigen::MatrixXcd block = haar_unitary(dim, rng);
    const double defect =
        (block.adjoint() * block - Eigen::MatrixXcd::Identity(dim, dim)).norm();
    if (!(defect <= kUnitaryTolerance)) {
      throw RejectionError("cover: block unitary failed to orthonormalize");
    }
    for (std::size_t r = 0; r < ys.size(); ++r) {
      for (std::size_t c = 0; c < xs.size(); ++c) {
        matrix.block(static_cast<Eigen::Index>(ys[r]) * k_cod,
                     static_cast<Eigen::Index>(xs[c]) * k_dom, k_cod, k_dom) =
            block.block(static_cast<Eigen::Index>(r) * k_cod,
                        static_cast<Eigen::Index>(c) * k_dom, k_cod, k_dom);
      }
    }
  }
  // A direct sum of unitary blocks over partitions of both sides is unitary.
  FiniteUnitary u(f.domain(), f.codomain(), k_dom, k_cod, std::move(matrix),
                  std::numeric_limits<double>::infinity());
  CoveringCertificate certificate = verify_covers(u, f, diameter);
  return CoveringResult{std::move(u), std::move(certificate),
                        std::move(*pieces), std::move(domain_pieces),
                        diameter};
}

ConjugationBoundReport conjugation_propagation_bound(const FiniteUnitary& u,
                                                     const ControlFunction& rho,
                                                     int c,
                                                     const BandOperator& t) {
  if (!same_space(t.row_space(), u.domain()) ||
      !same_space(t.col_space(), u.domain()) || t.k_row() != u.k_dom() ||
      t.k_col() != u.k_dom()) {
    throw ValidationError("conjugation bound: T is not over the domain of U");
  }
  ConjugationBoundReport report;
  report.prop_t = propagation(t);
  report.prop_conjugate = propagation(conjugate(u, t, kSupportFloor));
  report.bound = rho(report.prop_t) + 2 * c;
  report.holds = report.prop_conjugate <= report.bound;
  return report;
}

}  // namespace coarsekit
