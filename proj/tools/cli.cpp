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

#include "cli.hpp"

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "coarsekit/band_operator.hpp"
#include "coarsekit/categories.hpp"
#include "coarsekit/corpus.hpp"
#include "coarsekit/error.hpp"
#include "coarsekit/metric_space.hpp"
#include "coarsekit/random.hpp"
#include "coarsekit/recipes.hpp"
#include "coarsekit/rigidity.hpp"
#include "coarsekit/serialization.hpp"
#include "coarsekit/sparsification.hpp"
#include "coarsekit/unitary.hpp"

namespace coarsekit::cli {

namespace {

namespace fs = std::filesystem;

struct RunConfig {
  std::uint64_t seed = 0;
  std::string out = ".";
  double tol_norm = kUnitaryTolerance;
  double tol_support = kSupportFloor;
  std::vector<std::string> space_files;
};

// Files produced by a command, written together once it has succeeded.
using Outputs = std::vector<std::pair<std::string, std::string>>;

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

std::string render(const Json& j) { return j.dump(2) + "\n"; }

void write_outputs(const RunConfig& config, const Outputs& outputs,
                   std::ostream& out) {
  std::error_code ec;
  fs::create_directories(config.out, ec);
  if (ec) throw ValidationError("cannot create " + config.out);
  for (const auto& [name, content] : outputs) {
    const fs::path target = fs::path(config.out) / name;
    const fs::path temp = fs::path(config.out) / (name + ".tmp");
    {
      std::ofstream file(temp, std::ios::binary | std::ios::trunc);
      if (!file) throw ValidationError("cannot write " + temp.string());
      file << content;
      if (!file) throw ValidationError("cannot write " + temp.string());
    }
    fs::rename(temp, target, ec);
    if (ec) throw ValidationError("cannot write " + target.string());
    out << "wrote " << target.string() << "\n";
  }
}

SpaceRegistry make_registry(const RunConfig& config) {
  SpaceRegistry registry;
  for (const auto& path : config.space_files) {
    const Json doc = read_json(path);
    if (doc.is_object() && doc.contains("dist")) {
      registry.add(space_from_json(doc));
    } else {
      registry.add_document(doc);
    }
  }
  return registry;
}

Json spaces_of(std::initializer_list<SpacePtr> spaces) {
  Json out = Json::array();
  std::vector<std::string> seen;
  for (const auto& s : spaces) {
    if (std::find(seen.begin(), seen.end(), s->label()) != seen.end()) continue;
    seen.push_back(s->label());
    out.push_back(to_json(*s));
  }
  return out;
}

Json map_document(const PointMap& f) {
  Json doc = to_json(f);
  doc["spaces"] = spaces_of({f.domain(), f.codomain()});
  return doc;
}

Json unitary_document(const FiniteUnitary& u) {
  Json doc = to_json(u);
  doc["spaces"] = spaces_of({u.domain(), u.codomain()});
  return doc;
}

int require_nonnegative(int value, const char* what) {
  if (value < 0) throw ValidationError(std::string(what) + " must be >= 0");
  return value;
}

// gen-space -------------------------------------------------------------

struct GenSpaceArgs {
  std::string recipe;
  std::optional<int> size;
  std::vector<int> family;
};

Outputs gen_space(const GenSpaceArgs& a) {
  const Recipe recipe = parse_recipe(a.recipe);
  if (!a.family.empty()) {
    return {{"family.json", render(to_json(build_family(recipe, a.family)))}};
  }
  if (!a.size) throw ValidationError("gen-space needs a size or --family");
  if (*a.size < 1) throw ValidationError("size must be positive");
  return {{"space.json", render(to_json(*build_space(recipe, *a.size)))}};
}

// gen-map ---------------------------------------------------------------

struct GenMapArgs {
  std::string kind;
  std::string recipe;
  std::optional<int> size;
  std::vector<int> family;
};

Outputs gen_map(const GenMapArgs& a) {
  if (!a.family.empty()) {
    const MapFamily family = corpus_map_family(a.kind, a.recipe, a.family);
    return {{"map-family.json", render(to_json(family))}};
  }
  if (!a.size) throw ValidationError("gen-map needs a size or --family");
  if (*a.size < 1) throw ValidationError("size must be positive");
  const MapFamily family = corpus_map_family(a.kind, a.recipe, {*a.size});
  return {{"map.json",
           render(map_document(family.cls.representatives.at(*a.size)))}};
}

// gen-unitary -----------------------------------------------------------

struct GenUnitaryArgs {
  std::string kind;
  std::string recipe;
  std::optional<int> size;
  int k = 1;
  std::string map_file;
};

Outputs gen_unitary(const GenUnitaryArgs& a, const RunConfig& config) {
  if (a.k < 1) throw ValidationError("--k must be positive");
  if (a.kind == "permutation") {
    if (a.map_file.empty()) throw ValidationError("permutation needs --map");
    SpaceRegistry registry = make_registry(config);
    const PointMap f = map_from_json(read_json(a.map_file), registry);
    return {{"unitary.json",
             render(unitary_document(FiniteUnitary::permutation(f, a.k)))}};
  }
  if (a.recipe.empty() || !a.size) {
    throw ValidationError("gen-unitary " + a.kind + " needs a recipe and size");
  }
  if (*a.size < 1) throw ValidationError("size must be positive");
  const SpacePtr space = build_space(parse_recipe(a.recipe), *a.size);
  if (a.kind == "identity") {
    return {{"unitary.json",
             render(unitary_document(FiniteUnitary::identity(space, a.k)))}};
  }
  if (a.kind == "random") {
    return {{"unitary.json",
             render(unitary_document(
                 random_unitary(space, space, a.k, a.k, config.seed)))}};
  }
  throw ValidationError("unknown unitary kind '" + a.kind + "'");
}

// gen-operator ----------------------------------------------------------

struct GenOperatorArgs {
  std::string recipe;
  int size = 0;
  int prop = 1;
  double density = 0.5;
  int k = 1;
  int count = 1;
};

Outputs gen_operator(const GenOperatorArgs& a, const RunConfig& config) {
  if (a.size < 1 || a.k < 1 || a.count < 1) {
    throw ValidationError("size, --k and --count must be positive");
  }
  require_nonnegative(a.prop, "--prop");
  if (!(a.density > 0.0 && a.density <= 1.0)) {
    throw ValidationError("--density must lie in (0,1]");
  }
  const SpacePtr space = build_space(parse_recipe(a.recipe), a.size);
  Json operators = Json::array();
  for (int i = 0; i < a.count; ++i) {
    operators.push_back(to_json(random_band(
        space, a.prop, a.density, a.k,
        derive_seed(config.seed, static_cast<std::uint64_t>(i)))));
  }
  Json doc{{"spaces", spaces_of({space})}, {"operators", std::move(operators)}};
  return {{"operators.json", render(doc)}};
}

// profile ---------------------------------------------------------------

struct ProfileArgs {
  std::string file;
  std::optional<int> r_max;
};

Outputs profile(const ProfileArgs& a, const RunConfig& config) {
  SpaceRegistry registry = make_registry(config);
  const Json doc = read_json(a.file);
  std::vector<SpacePtr> spaces;
  if (doc.is_object() && doc.contains("generator")) {
    const SpaceFamily family = family_from_json(doc, registry);
    for (int index : family.indices) spaces.push_back(family.at(index));
  } else {
    spaces.push_back(space_from_json(doc));
  }
  Json rows = Json::array();
  GeometryProfile envelope;
  for (const auto& s : spaces) {
    const int r = a.r_max ? require_nonnegative(*a.r_max, "--r-max")
                          : s->diameter();
    const GeometryProfile p = bounded_geometry_profile(*s, r);
    envelope = profile_envelope(envelope, p);
    rows.push_back(Json{{"label", s->label()},
                        {"n", s->size()},
                        {"diameter", s->diameter()},
                        {"counts", p.counts}});
  }
  Json report{{"spaces", std::move(rows)}, {"envelope", envelope.counts}};
  return {{"profile.json", render(report)}};
}

// sparsify --------------------------------------------------------------

struct SparsifyArgs {
  std::string file;
  bool exact = false;
  bool greedy = false;
};

Outputs sparsify(const SparsifyArgs& a, const RunConfig& config) {
  SpaceRegistry registry = make_registry(config);
  const SparsificationInstance instance =
      sparsification_instance_from_json(read_json(a.file), registry);
  SparsifyOptions options;
  options.max_diameter = instance.max_diameter;
  const SparsificationResult result =
      a.greedy ? sparsify_greedy(instance.mass, instance.kappa,
                                 instance.separation, options)
               : sparsify_exact(instance.mass, instance.kappa,
                                instance.separation, options);
  Json report = to_json(result);
  report["method"] = a.greedy ? "greedy" : "exact";
  report["space"] = instance.mass.space()->label();
  return {{"sparsify.json", render(report)}};
}

// extract-map -----------------------------------------------------------

struct ExtractArgs {
  std::string file;
  double c = 0.5;
  bool support = false;
  int v0 = 0;
};

Outputs extract_map(const ExtractArgs& a, const RunConfig& config) {
  SpaceRegistry registry = make_registry(config);
  const FiniteUnitary u =
      unitary_from_json(read_json(a.file), registry, config.tol_norm);
  if (a.support) {
    const PointMap f = extract_map_support(u, config.tol_support, a.v0);
    Json doc = map_document(f);
    doc["extraction"] = Json{{"mode", "support"}, {"eta", config.tol_support}};
    return {{"map.json", render(doc)}};
  }
  const ThresholdExtraction t = extract_map_threshold(u, {a.c, a.v0});
  Json doc = map_document(t.map);
  doc["extraction"] = Json{{"mode", "threshold"},
                           {"c", a.c},
                           {"peak_norms", t.peak_norms},
                           {"verdict", to_string(t.verdict)},
                           {"worst_point", t.worst_point},
                           {"worst_peak", t.worst_peak}};
  return {{"map.json", render(doc)}};
}

// cover -----------------------------------------------------------------

struct CoverArgs {
  std::vector<std::string> files;
  std::optional<int> block_diameter;
  std::optional<int> claimed;
};

Outputs cover(const CoverArgs& a, const RunConfig& config) {
  SpaceRegistry registry = make_registry(config);
  if (a.files.size() == 2) {
    const FiniteUnitary u =
        unitary_from_json(read_json(a.files[0]), registry, config.tol_norm);
    const PointMap f = map_from_json(read_json(a.files[1]), registry);
    const CoveringCertificate certificate =
        verify_covers(u, f, a.claimed, config.tol_support);
    return {{"certificate.json", render(to_json(certificate))}};
  }
  if (a.files.size() != 1 || !a.block_diameter) {
    throw ValidationError(
        "cover takes U.json f.json, or f.json with --block-diameter");
  }
  const PointMap f = map_from_json(read_json(a.files[0]), registry);
  CoveringOptions options;
  options.seed = config.seed;
  const CoveringResult result = covering_unitary(
      f, require_nonnegative(*a.block_diameter, "--block-diameter"), options);
  Json certificate = to_json(result.certificate);
  certificate["block_diameter"] = result.block_diameter;
  certificate["codomain_pieces"] = result.codomain_pieces;
  certificate["domain_pieces"] = result.domain_pieces;
  certificate["k_dom"] = result.unitary.k_dom();
  certificate["k_cod"] = result.unitary.k_cod();
  return {{"certificate.json", render(certificate)},
          {"unitary.json", render(unitary_document(result.unitary))}};
}

// probe-orthsum ---------------------------------------------------------

struct ProbeArgs {
  std::string file;
  std::vector<int> a;
  std::vector<int> b;
};

Outputs probe_orthsum(const ProbeArgs& a, const RunConfig& config) {
  SpaceRegistry registry = make_registry(config);
  const Json doc = read_json(a.file);
  registry.add_document(doc);
  if (!doc.is_object() || !doc.contains("operators") ||
      !doc.at("operators").is_array() || doc.at("operators").empty()) {
    throw ValidationError("probe-orthsum needs a non-empty \"operators\" list");
  }
  std::vector<BandOperator> family;
  for (const auto& j : doc.at("operators")) {
    family.push_back(operator_from_json(j, registry));
  }
  const SpacePtr& space = family.front().row_space();
  const OrthogonalSumProbe probe = orthogonal_sum_probe(
      family, SubsetProjection(space, a.a), SubsetProjection(space, a.b));
  return {{"probe.json", render(to_json(probe))}};
}

// audit-locality --------------------------------------------------------

struct AuditArgs {
  std::vector<std::string> files;
  double delta = 0.5;
  std::optional<int> r_max;
};

Outputs audit_locality(const AuditArgs& a, const RunConfig& config) {
  SpaceRegistry registry = make_registry(config);
  LocalityAuditOptions options;
  options.delta = a.delta;
  if (a.r_max) options.r_max = require_nonnegative(*a.r_max, "--r-max");
  Json audits = Json::array();
  std::map<int, LocalityAudit> by_size;
  for (const auto& path : a.files) {
    const FiniteUnitary u =
        unitary_from_json(read_json(path), registry, config.tol_norm);
    const LocalityAudit audit = locality_audit(u, options);
    Json entry = to_json(audit);
    entry["domain"] = u.domain()->label();
    entry["codomain"] = u.codomain()->label();
    audits.push_back(std::move(entry));
    if (!by_size.emplace(u.domain()->size(), audit).second) {
      throw ValidationError("audit-locality: two unitaries share a domain size");
    }
  }
  Json report{{"audits", std::move(audits)}};
  if (by_size.size() > 1) report["family"] = to_json(locality_family_audit(by_size));
  return {{"audit.json", render(report)}};
}

// roundtrip -------------------------------------------------------------

struct RoundtripArgs {
  std::string file;
  int block_diameter = 0;
  double c = 0.5;
};

Outputs roundtrip(const RoundtripArgs& a, const RunConfig& config) {
  SpaceRegistry registry = make_registry(config);
  const MapFamily family =
      map_family_from_json(read_json(a.file), registry);
  const int d = require_nonnegative(a.block_diameter, "--block-diameter");
  RoundtripOptions options;
  options.covering.seed = config.seed;
  options.extraction.params.c = a.c;

  const FunctorUResult u = functor_U(family.cls, d, options.covering);
  const FunctorFResult f = functor_F(u.cls, options.extraction);
  const FunctorReport maps = roundtrip_report(family.cls, d, options);
  const FunctorReport unitaries = roundtrip_report(u.cls, d, options);

  Json certificates = Json::array();
  int family_c = 0;
  for (const auto& [index, covering] : u.coverings) {
    certificates.push_back(Json{{"index", index},
                                {"C", covering.certificate.bound},
                                {"block_diameter", covering.block_diameter},
                                {"k_dom", covering.unitary.k_dom()},
                                {"k_cod", covering.unitary.k_cod()}});
    family_c = std::max(family_c, covering.certificate.bound);
  }
  Json report{{"maps", to_json(maps)},
              {"unitaries", to_json(unitaries)},
              {"certificates", std::move(certificates)},
              {"family_C", family_c},
              {"class_prop_bound", u.cls.closeness_prop_bound},
              {"uniformity", to_json(f.uniformity)}};

  std::ostringstream csv;
  csv << "index,closeness,limit,C,prop_roundtrip\n";
  for (std::size_t i = 0; i < maps.indices.size(); ++i) {
    const int index = maps.indices[i];
    csv << index << "," << maps.bounds[i] << "," << maps.limits[i] << ","
        << u.coverings.at(index).certificate.bound << ","
        << unitaries.bounds[i] << "\n";
  }
  return {{"roundtrip.json", render(report)}, {"roundtrip.csv", csv.str()}};
}

CLI::Option* add_int_list(CLI::App* cmd, const std::string& name,
                          std::vector<int>& target, const std::string& help) {
  return cmd->add_option(name, target, help)->delimiter(',');
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"coarsekit: coarse geometry and Roe-type operator toolkit"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  RunConfig config;
  app.add_option("--seed", config.seed, "Random seed (default 0)");
  app.add_option("--out", config.out, "Output directory (default .)");
  app.add_option("--tol-norm", config.tol_norm,
                 "Unitarity tolerance for input unitaries");
  app.add_option("--tol-support", config.tol_support,
                 "Numerical zero for matrix coefficients");
  app.add_option("--space", config.space_files,
                 "Extra space or space-list files referenced by label");

  GenSpaceArgs gen_space_args;
  auto* gen_space_cmd = app.add_subcommand("gen-space", "Generate a space or family");
  gen_space_cmd->add_option("recipe", gen_space_args.recipe,
                            "path, grid<d>, grid<d>-diag, tree<b>, cayley-<preset>")
      ->required();
  gen_space_cmd->add_option("size", gen_space_args.size, "Size parameter");
  add_int_list(gen_space_cmd, "--family", gen_space_args.family,
               "Comma-separated family indices");

  GenMapArgs gen_map_args;
  auto* gen_map_cmd = app.add_subcommand("gen-map", "Generate a corpus map");
  gen_map_cmd->add_option("kind", gen_map_args.kind,
                          "identity, swap-pairs, doubling, halving, diagonal")
      ->required();
  gen_map_cmd->add_option("recipe", gen_map_args.recipe, "Space recipe")
      ->required();
  gen_map_cmd->add_option("size", gen_map_args.size, "Size parameter");
  add_int_list(gen_map_cmd, "--family", gen_map_args.family,
               "Comma-separated family indices");

  GenUnitaryArgs gen_unitary_args;
  auto* gen_unitary_cmd =
      app.add_subcommand("gen-unitary", "Generate a unitary");
  gen_unitary_cmd->add_option("kind", gen_unitary_args.kind,
                              "identity, random, permutation")
      ->required();
  gen_unitary_cmd->add_option("recipe", gen_unitary_args.recipe,
                              "Space recipe");
  gen_unitary_cmd->add_option("size", gen_unitary_args.size, "Size parameter");
  gen_unitary_cmd->add_option("--k", gen_unitary_args.k, "Fiber dimension");
  gen_unitary_cmd->add_option("--map", gen_unitary_args.map_file,
                              "Bijection for kind permutation");

  GenOperatorArgs gen_operator_args;
  auto* gen_operator_cmd =
      app.add_subcommand("gen-operator", "Generate random band operators");
  gen_operator_cmd->add_option("recipe", gen_operator_args.recipe,
                               "Space recipe")
      ->required();
  gen_operator_cmd->add_option("size", gen_operator_args.size, "Size")
      ->required();
  gen_operator_cmd->add_option("--prop", gen_operator_args.prop,
                               "Propagation bound");
  gen_operator_cmd->add_option("--density", gen_operator_args.density,
                               "Block density");
  gen_operator_cmd->add_option("--k", gen_operator_args.k, "Fiber dimension");
  gen_operator_cmd->add_option("--count", gen_operator_args.count,
                               "Number of operators");

  ProfileArgs profile_args;
  auto* profile_cmd =
      app.add_subcommand("profile", "Bounded-geometry profile of a space");
  profile_cmd->add_option("file", profile_args.file, "Space or family JSON")
      ->required();
  profile_cmd->add_option("--r-max", profile_args.r_max, "Largest radius");

  SparsifyArgs sparsify_args;
  auto* sparsify_cmd =
      app.add_subcommand("sparsify", "Metric sparsification of a mass");
  sparsify_cmd->add_option("file", sparsify_args.file, "Instance JSON")
      ->required();
  auto* exact_flag =
      sparsify_cmd->add_flag("--exact", sparsify_args.exact, "Exact solver");
  auto* greedy_flag =
      sparsify_cmd->add_flag("--greedy", sparsify_args.greedy, "Greedy solver");
  exact_flag->excludes(greedy_flag);

  ExtractArgs extract_args;
  auto* extract_cmd =
      app.add_subcommand("extract-map", "Extract a coarse map from a unitary");
  extract_cmd->add_option("file", extract_args.file, "Unitary JSON")
      ->required();
  extract_cmd->add_option("--c", extract_args.c, "Threshold in (0,1]");
  extract_cmd->add_flag("--support", extract_args.support,
                        "Use the support rule with --tol-support");
  extract_cmd->add_option("--v0", extract_args.v0, "Fiber basis index");

  CoverArgs cover_args;
  auto* cover_cmd = app.add_subcommand(
      "cover", "Verify U.json covers f.json, or build a covering unitary");
  cover_cmd->add_option("files", cover_args.files, "U.json f.json | f.json")
      ->required();
  cover_cmd->add_option("--block-diameter", cover_args.block_diameter,
                        "Largest codomain piece diameter");
  cover_cmd->add_option("--claimed", cover_args.claimed,
                        "Bound to test; violations are listed as witnesses");

  ProbeArgs probe_args;
  auto* probe_cmd = app.add_subcommand(
      "probe-orthsum", "Orthogonal-sum propagation probe");
  probe_cmd->add_option("file", probe_args.file, "Operator list JSON")
      ->required();
  add_int_list(probe_cmd, "--A", probe_args.a, "Points of A")->required();
  add_int_list(probe_cmd, "--B", probe_args.b, "Points of B")->required();

  AuditArgs audit_args;
  auto* audit_cmd =
      app.add_subcommand("audit-locality", "Support-spread audit of unitaries");
  audit_cmd->add_option("files", audit_args.files, "Unitary JSON files")
      ->required();
  audit_cmd->add_option("--delta", audit_args.delta, "Coefficient threshold");
  audit_cmd->add_option("--r-max", audit_args.r_max, "Largest radius");

  RoundtripArgs roundtrip_args;
  auto* roundtrip_cmd = app.add_subcommand(
      "roundtrip", "Category round trips over a map family");
  roundtrip_cmd->add_option("file", roundtrip_args.file, "Map-family JSON")
      ->required();
  roundtrip_cmd->add_option("--block-diameter", roundtrip_args.block_diameter,
                            "Largest codomain piece diameter")
      ->required();
  roundtrip_cmd->add_option("--c", roundtrip_args.c, "Extraction threshold");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (!(config.tol_norm > 0.0) || !(config.tol_support > 0.0)) {
      throw ValidationError("tolerances must be positive");
    }
    Outputs outputs;
    if (gen_space_cmd->parsed()) {
      outputs = gen_space(gen_space_args);
    } else if (gen_map_cmd->parsed()) {
      outputs = gen_map(gen_map_args);
    } else if (gen_unitary_cmd->parsed()) {
      outputs = gen_unitary(gen_unitary_args, config);
    } else if (gen_operator_cmd->parsed()) {
      outputs = gen_operator(gen_operator_args, config);
    } else if (profile_cmd->parsed()) {
      outputs = profile(profile_args, config);
    } else if (sparsify_cmd->parsed()) {
      outputs = sparsify(sparsify_args, config);
    } else if (extract_cmd->parsed()) {
      outputs = extract_map(extract_args, config);
    } else if (cover_cmd->parsed()) {
      outputs = cover(cover_args, config);
    } else if (probe_cmd->parsed()) {
      outputs = probe_orthsum(probe_args, config);
    } else if (audit_cmd->parsed()) {
      outputs = audit_locality(audit_args, config);
    } else if (roundtrip_cmd->parsed()) {
      outputs = roundtrip(roundtrip_args, config);
    }
    write_outputs(config, outputs, out);
    return 0;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const RejectionError& e) {
    err << "rejected: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace coarsekit::cli
