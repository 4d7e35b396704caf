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

#include "coarsekit/serialization.hpp"

#include <string>
#include <utility>
#include <vector>

#include "coarsekit/error.hpp"

namespace coarsekit {

namespace {

template <typename T>
T field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ValidationError(std::string("missing field \"") + key + "\"");
  }
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ValidationError(std::string("field \"") + key +
                          "\" has the wrong type");
  }
}

Json series_values(const std::vector<QuantitySeries>& series) {
  Json out = Json::array();
  for (const auto& s : series) out.push_back(to_json(s));
  return out;
}

Json optional_int(const std::optional<int>& v) {
  return v ? Json(*v) : Json(nullptr);
}

}  // namespace

SpacePtr SpaceRegistry::add(SpacePtr space) {
  auto [it, inserted] = spaces_.emplace(space->label(), space);
  if (!inserted && !(*it->second == *space)) {
    throw ValidationError("conflicting definitions of space \"" +
                          space->label() + "\"");
  }
  return it->second;
}

void SpaceRegistry::add_document(const Json& doc) {
  if (!doc.is_object() || !doc.contains("spaces")) return;
  const Json& spaces = doc.at("spaces");
  if (!spaces.is_array()) throw ValidationError("\"spaces\" must be an array");
  for (const auto& s : spaces) add(space_from_json(s));
}

SpacePtr SpaceRegistry::resolve(const std::string& label) const {
  auto it = spaces_.find(label);
  if (it == spaces_.end()) {
    throw ValidationError("unknown space \"" + label + "\"");
  }
  return it->second;
}

SpacePtr SpaceRegistry::resolve_ref(const Json& ref) {
  if (ref.is_string()) return resolve(ref.get<std::string>());
  if (ref.is_object()) return add(space_from_json(ref));
  throw ValidationError("space reference must be a label or a space object");
}

Json to_json(const FiniteMetricSpace& space) {
  Json rows = Json::array();
  for (int x = 0; x < space.size(); ++x) {
    rows.push_back(std::vector<int>(space.row(x).begin(), space.row(x).end()));
  }
  return Json{{"label", space.label()},
              {"n", space.size()},
              {"dist", std::move(rows)}};
}

SpacePtr space_from_json(const Json& j) {
  const int n = field<int>(j, "n");
  const auto rows = field<std::vector<std::vector<int>>>(j, "dist");
  if (n < 0 || rows.size() != static_cast<std::size_t>(n)) {
    throw ValidationError("space: \"dist\" must have n rows");
  }
  std::vector<int> dist;
  dist.reserve(static_cast<std::size_t>(n) * n);
  for (const auto& row : rows) {
    if (row.size() != static_cast<std::size_t>(n)) {
      throw ValidationError("space: every \"dist\" row must have n entries");
    }
    dist.insert(dist.end(), row.begin(), row.end());
  }
  return share(FiniteMetricSpace::create(field<std::string>(j, "label"), n,
                                         std::move(dist)));
}

Json to_json(const SpaceFamily& family) {
  Json spaces = Json::object();
  for (int index : family.indices) {
    spaces[std::to_string(index)] = to_json(*family.at(index));
  }
  return Json{{"generator", {{"recipe", recipe_name(family.generator)}}},
              {"indices", family.indices},
              {"spaces", std::move(spaces)}};
}

SpaceFamily family_from_json(const Json& j, SpaceRegistry& registry) {
  SpaceFamily family;
  const Json generator = field<Json>(j, "generator");
  family.generator = parse_recipe(field<std::string>(generator, "recipe"));
  family.indices = field<std::vector<int>>(j, "indices");
  const Json spaces = field<Json>(j, "spaces");
  if (!spaces.is_object() || spaces.size() != family.indices.size()) {
    throw ValidationError("family: need one space per index");
  }
  for (int index : family.indices) {
    const std::string key = std::to_string(index);
    if (!spaces.contains(key)) {
      throw ValidationError("family: no space for index " + key);
    }
    family.spaces[index] = registry.resolve_ref(spaces.at(key));
  }
  if (family.spaces.size() != family.indices.size()) {
    throw ValidationError("family: repeated index");
  }
  const auto failures = check_nested(family);
  if (!failures.empty()) throw ValidationError("family: " + failures.front());
  return family;
}

Json to_json(const PointMap& f) {
  return Json{{"domain", f.domain()->label()},
              {"codomain", f.codomain()->label()},
              {"table", f.table()}};
}

PointMap map_from_json(const Json& j, SpaceRegistry& registry) {
  registry.add_document(j);
  if (!j.contains("domain") || !j.contains("codomain")) {
    throw ValidationError("map: missing domain or codomain");
  }
  SpacePtr domain = registry.resolve_ref(j.at("domain"));
  SpacePtr codomain = registry.resolve_ref(j.at("codomain"));
  auto table = field<std::vector<int>>(j, "table");
  if (static_cast<int>(table.size()) != domain->size()) {
    throw ValidationError("map: table length differs from the domain size");
  }
  return PointMap(std::move(domain), std::move(codomain), std::move(table));
}

Json to_json(const MapFamily& family) {
  Json maps = Json::object();
  for (const auto& [index, f] : family.cls.representatives) {
    maps[std::to_string(index)] = to_json(f);
  }
  return Json{{"domain", to_json(family.domain)},
              {"codomain", to_json(family.codomain)},
              {"closeness_radius", family.cls.closeness_radius},
              {"maps", std::move(maps)}};
}

MapFamily map_family_from_json(const Json& j, SpaceRegistry& registry) {
  if (!j.is_object() || !j.contains("domain") || !j.contains("codomain")) {
    throw ValidationError("map family: missing domain or codomain family");
  }
  MapFamily family{family_from_json(j.at("domain"), registry),
                   family_from_json(j.at("codomain"), registry),
                   {}};
  if (family.domain.indices != family.codomain.indices) {
    throw ValidationError("map family: domain and codomain indices differ");
  }
  family.cls.closeness_radius =
      j.contains("closeness_radius") ? field<int>(j, "closeness_radius") : 0;
  const Json maps = field<Json>(j, "maps");
  if (!maps.is_object() || maps.size() != family.domain.indices.size()) {
    throw ValidationError("map family: need one map per index");
  }
  for (int index : family.domain.indices) {
    const std::string key = std::to_string(index);
    if (!maps.contains(key)) {
      throw ValidationError("map family: no map for index " + key);
    }
    PointMap f = map_from_json(maps.at(key), registry);
    if (!same_space(f.domain(), family.domain.at(index)) ||
        !same_space(f.codomain(), family.codomain.at(index))) {
      throw ValidationError("map family: map at index " + key +
                            " does not match the family spaces");
    }
    family.cls.representatives.emplace(index, std::move(f));
  }
  return family;
}

Json to_json(const BandOperator& t) {
  Json blocks = Json::array();
  for (std::size_t b = 0; b < t.block_count(); ++b) {
    const auto block = t.block(b);
    Json re = Json::array();
    Json im = Json::array();
    for (Eigen::Index r = 0; r < block.rows(); ++r) {
      std::vector<double> rr;
      std::vector<double> ri;
      for (Eigen::Index c = 0; c < block.cols(); ++c) {
        rr.push_back(block(r, c).real());
        ri.push_back(block(r, c).imag());
      }
      re.push_back(std::move(rr));
      im.push_back(std::move(ri));
    }
    blocks.push_back(Json{{"x", t.keys()[b].row},
                          {"y", t.keys()[b].col},
                          {"re", std::move(re)},
                          {"im", std::move(im)}});
  }
  return Json{{"row_space", t.row_space()->label()},
              {"col_space", t.col_space()->label()},
              {"k_row", t.k_row()},
              {"k_col", t.k_col()},
              {"blocks", std::move(blocks)}};
}

BandOperator operator_from_json(const Json& j, SpaceRegistry& registry) {
  registry.add_document(j);
  if (!j.is_object() || !j.contains("row_space") || !j.contains("col_space")) {
    throw ValidationError("operator: missing row_space or col_space");
  }
  SpacePtr rows = registry.resolve_ref(j.at("row_space"));
  SpacePtr cols = registry.resolve_ref(j.at("col_space"));
  const int k_row = field<int>(j, "k_row");
  const int k_col = field<int>(j, "k_col");
  if (k_row < 1 || k_col < 1) {
    throw ValidationError("operator: fiber dimensions must be positive");
  }
  BandOperator::Builder builder(rows, cols, k_row, k_col);
  const Json& blocks = j.contains("blocks") ? j.at("blocks") : Json::array();
  if (!blocks.is_array()) throw ValidationError("operator: blocks not a list");
  for (const auto& b : blocks) {
    const int x = field<int>(b, "x");
    const int y = field<int>(b, "y");
    if (!rows->contains(x) || !cols->contains(y)) {
      throw ValidationError("operator: block index out of range");
    }
    const auto re = field<std::vector<std::vector<double>>>(b, "re");
    const auto im = field<std::vector<std::vector<double>>>(b, "im");
    if (re.size() != static_cast<std::size_t>(k_row) ||
        im.size() != static_cast<std::size_t>(k_row)) {
      throw ValidationError("operator: block has the wrong number of rows");
    }
    Eigen::MatrixXcd block(k_row, k_col);
    for (int r = 0; r < k_row; ++r) {
      if (re[r].size() != static_cast<std::size_t>(k_col) ||
          im[r].size() != static_cast<std::size_t>(k_col)) {
        throw ValidationError("operator: block has the wrong number of columns");
      }
      for (int c = 0; c < k_col; ++c) block(r, c) = Complex(re[r][c], im[r][c]);
    }
    builder.add_block(x, y, block);
  }
  return std::move(builder).build();
}

Json to_json(const FiniteUnitary& u) {
  Json re = Json::array();
  Json im = Json::array();
  for (Eigen::Index r = 0; r < u.matrix().rows(); ++r) {
    std::vector<double> rr;
    std::vector<double> ri;
    for (Eigen::Index c = 0; c < u.matrix().cols(); ++c) {
      rr.push_back(u.matrix()(r, c).real());
      ri.push_back(u.matrix()(r, c).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ri));
  }
  return Json{{"domain_space", u.domain()->label()},
              {"codomain_space", u.codomain()->label()},
              {"k_dom", u.k_dom()},
              {"k_cod", u.k_cod()},
              {"re", std::move(re)},
              {"im", std::move(im)}};
}

FiniteUnitary unitary_from_json(const Json& j, SpaceRegistry& registry,
                                double tolerance) {
  registry.add_document(j);
  if (!j.is_object() || !j.contains("domain_space") ||
      !j.contains("codomain_space")) {
    throw ValidationError("unitary: missing domain_space or codomain_space");
  }
  SpacePtr domain = registry.resolve_ref(j.at("domain_space"));
  SpacePtr codomain = registry.resolve_ref(j.at("codomain_space"));
  const int k_dom = field<int>(j, "k_dom");
  const int k_cod = field<int>(j, "k_cod");
  const auto re = field<std::vector<std::vector<double>>>(j, "re");
  const auto im = field<std::vector<std::vector<double>>>(j, "im");
  if (k_dom < 1 || k_cod < 1) {
    throw ValidationError("unitary: fiber dimensions must be positive");
  }
  const std::size_t rows = static_cast<std::size_t>(codomain->size()) * k_cod;
  const std::size_t cols = static_cast<std::size_t>(domain->size()) * k_dom;
  if (re.size() != rows || im.size() != rows) {
    throw ValidationError("unitary: wrong number of rows");
  }
  Eigen::MatrixXcd matrix(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (re[r].size() != cols || im[r].size() != cols) {
      throw ValidationError("unitary: wrong number of columns");
    }
    for (std::size_t c = 0; c < cols; ++c) {
      matrix(r, c) = Complex(re[r][c], im[r][c]);
    }
  }
  return FiniteUnitary(std::move(domain), std::move(codomain), k_dom, k_cod,
                       std::move(matrix), tolerance);
}

SparsificationInstance sparsification_instance_from_json(
    const Json& j, SpaceRegistry& registry) {
  registry.add_document(j);
  if (!j.is_object() || !j.contains("space") || !j.contains("mass")) {
    throw ValidationError("instance: missing space or mass");
  }
  SpacePtr space = registry.resolve_ref(j.at("space"));
  const Json& mass = j.at("mass");
  std::optional<MassDistribution> mu;
  if (mass.is_string() && mass.get<std::string>() == "uniform") {
    mu = MassDistribution::uniform(space);
  } else if (mass.is_array()) {
    mu = MassDistribution(space, field<std::vector<double>>(j, "mass"));
  } else if (mass.is_object()) {
    const int k = field<int>(mass, "k");
    const auto re = field<std::vector<double>>(mass, "re");
    const auto im = field<std::vector<double>>(mass, "im");
    if (k < 1 || re.size() != im.size() ||
        re.size() != static_cast<std::size_t>(space->size()) * k) {
      throw ValidationError("instance: mass vector has the wrong length");
    }
    Eigen::VectorXcd xi(static_cast<Eigen::Index>(re.size()));
    for (std::size_t i = 0; i < re.size(); ++i) xi(i) = Complex(re[i], im[i]);
    mu = vector_mass(space, k, xi);
  } else {
    throw ValidationError("instance: unrecognized mass");
  }
  SparsificationInstance instance{std::move(*mu), field<double>(j, "kappa"),
                                  field<int>(j, "S"), std::nullopt};
  if (j.contains("D_max") && !j.at("D_max").is_null()) {
    instance.max_diameter = field<int>(j, "D_max");
  }
  return instance;
}

Json to_json(const GeometryProfile& profile) {
  return Json{{"counts", profile.counts}};
}

Json to_json(const ControlFunction& rho) { return Json(rho.bounds); }

Json to_json(const QuantitySeries& series) {
  return Json{{"name", series.name},
              {"values", series.values},
              {"sup", series.sup},
              {"verdict", to_string(series.verdict)}};
}

Json to_json(const UniformityReport& report) {
  return Json{{"indices", report.indices},
              {"r_max", report.r_max},
              {"rho_f", series_values(report.rho_f)},
              {"rho_g", series_values(report.rho_g)},
              {"c_fg", to_json(report.c_fg)},
              {"c_gf", to_json(report.c_gf)},
              {"verdict", to_string(report.verdict)}};
}

Json to_json(const CoarseEquivalenceCertificate& certificate) {
  return Json{{"f", to_json(certificate.f)},
              {"g", to_json(certificate.g)},
              {"rho_f", to_json(certificate.rho_f)},
              {"rho_g", to_json(certificate.rho_g)},
              {"c_fg", certificate.c_fg},
              {"c_gf", certificate.c_gf}};
}

Json to_json(const Decomposition& decomposition) {
  return Json(decomposition.pieces);
}

Json to_json(const SparsificationResult& result) {
  return Json{{"pieces", to_json(result.decomposition)},
              {"kappa_target", result.kappa_target},
              {"separation_target", result.separation_target},
              {"kappa_achieved", result.kappa_achieved},
              {"separation_achieved", optional_int(result.separation_achieved)},
              {"D_achieved", result.D_achieved},
              {"verdict", to_string(result.verdict)}};
}

Json to_json(const OrthogonalSumProbe& probe) {
  return Json{{"max_propagation", probe.max_propagation},
              {"separation", optional_int(probe.separation)},
              {"separated", probe.separated},
              {"compression_zero", probe.compression_zero},
              {"passed", probe.passed}};
}

Json to_json(const ThresholdExtraction& extraction) {
  return Json{{"map", to_json(extraction.map)},
              {"peak_norms", extraction.peak_norms},
              {"verdict", to_string(extraction.verdict)},
              {"worst_point", extraction.worst_point},
              {"worst_peak", extraction.worst_peak}};
}

Json to_json(const CoveringCertificate& certificate) {
  Json witnesses = Json::array();
  for (const auto& [x, y] : certificate.witnesses) {
    witnesses.push_back(Json::array({x, y}));
  }
  return Json{{"C", certificate.bound}, {"witnesses", std::move(witnesses)}};
}

Json to_json(const LocalityAudit& audit) {
  return Json{{"delta", audit.delta},
              {"spread", audit.spread},
              {"support_sizes", audit.support_sizes}};
}

Json to_json(const LocalityFamilyAudit& audit) {
  return Json{{"indices", audit.indices},
              {"spread", series_values(audit.spread)},
              {"verdict", to_string(audit.verdict)}};
}

Json to_json(const ConjugationBoundReport& report) {
  return Json{{"prop_T", report.prop_t},
              {"prop_UTU*", report.prop_conjugate},
              {"bound", report.bound},
              {"holds", report.holds}};
}

Json to_json(const FunctorReport& report) {
  return Json{{"direction", report.direction},
              {"indices", report.indices},
              {"bounds", report.bounds},
              {"limits", report.limits},
              {"within_limits", report.within_limits},
              {"uniform_bound", report.uniform_bound},
              {"verdict", to_string(report.verdict)}};
}

}  // namespace coarsekit
