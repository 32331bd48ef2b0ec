// rigidswap: command-line front end for block-and-hole polyhedra.
//
// Exit codes: 0 success, 1 a check failed, 2 bad input or usage,
// 3 the analysis itself failed.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "rigidswap/bodyhinge.hpp"
#include "rigidswap/conditions.hpp"
#include "rigidswap/document.hpp"
#include "rigidswap/error.hpp"
#include "rigidswap/fixtures.hpp"
#include "rigidswap/gusset.hpp"
#include "rigidswap/statics.hpp"
#include "rigidswap/swap_iso.hpp"

namespace {

using namespace rigidswap;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitAnalysis = 3;

struct Input {
  PolyhedronDocument doc;
  BlockHolePolyhedron polyhedron;
  std::optional<Configuration> config;
};

Input read_input(const std::string& path) {
  PolyhedronDocument doc = load_document(path);
  BlockHolePolyhedron p = to_polyhedron(doc);
  return {doc, std::move(p), doc.coordinates};
}

/// Flag, then RIGIDSWAP_SEED, then the document's own seed.
std::optional<std::uint64_t> resolve_seed(std::optional<std::uint64_t> flag, const PolyhedronDocument* doc) {
  if (flag) return flag;
  if (const char* env = std::getenv("RIGIDSWAP_SEED"); env && *env) {
    try {
      std::size_t used = 0;
      const auto value = std::stoull(env, &used);
      if (used == std::string(env).size()) return value;
    } catch (const std::exception&) {
    }
    throw Error(ErrorCode::ParseError, "RIGIDSWAP_SEED is not a non-negative integer");
  }
  if (doc && doc->seed) return doc->seed;
  return std::nullopt;
}

/// Document coordinates, or a seeded sample when the document has none.
Configuration configuration_for(const Input& in, std::optional<std::uint64_t> seed) {
  if (in.config) return *in.config;
  if (!seed)
    throw Error(ErrorCode::MissingConfiguration, "document has no coordinates; pass --seed to sample a configuration");
  return sample_configuration(triangulate_surfaces(in.polyhedron), *seed, 0);
}

FillOptions fill_options(const PolyhedronDocument& doc, std::uint64_t seed, double tol) {
  FillOptions options;
  options.seed = seed;
  options.rank_tolerance = tol;
  options.per_block = doc.fill;
  return options;
}

json separation_json(const SeparationReport& r) {
  json contacts = json::array();
  for (const auto& c : r.contact_vertices)
    contacts.push_back({{"vertex", c.vertex}, {"holes", c.holes}, {"blocks", c.blocks}});
  return {{"separated", r.separated},
          {"hole_separated", r.hole_separated},
          {"contact_vertices", contacts},
          {"mixed_contact", r.mixed_contact}};
}

std::string list(const std::vector<int>& v) {
  std::ostringstream out;
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? " " : "") << v[i];
  return v.empty() ? "-" : out.str();
}

void print_separation_text(const SeparationReport& r) {
  std::cout << "separated          " << (r.separated ? "yes" : "no") << '\n';
  for (const auto& c : r.contact_vertices)
    std::cout << "  contact vertex " << c.vertex << ": holes " << list(c.holes) << ", blocks " << list(c.blocks)
              << '\n';
  if (!r.mixed_contact.empty()) std::cout << "  mixed contact      " << list(r.mixed_contact) << '\n';
}

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

int cmd_validate(const std::string& path, const std::string& format) {
  PolyhedronDocument doc = load_document(path);
  json report;
  bool ok = true;
  std::optional<BlockHolePolyhedron> p;
  try {
    p = to_polyhedron(doc);
  } catch (const Error& e) {
    ok = false;
    report["error"] = e.what();
  }
  if (p) {
    const auto& poly = p->polyhedron();
    report["vertices"] = poly.vertex_count();
    report["edges"] = poly.edge_count();
    report["faces"] = poly.face_count();
    report["blocks"] = p->blocks();
    report["holes"] = p->holes();
    report["surfaces_triangulated"] = p->surfaces_triangulated();
    report["separation"] = separation_json(separation_report(*p));
    if (doc.coordinates) {
      const auto violations = general_position_violations(*p, *doc.coordinates);
      report["general_position"] = violations.empty();
      report["general_position_violations"] = violations;
      ok = ok && violations.empty();
    }
  }
  report["valid"] = ok;
  if (format == "json") {
    emit(report);
  } else if (!p) {
    std::cout << "invalid: " << report["error"].get<std::string>() << '\n';
  } else {
    std::cout << "vertices " << report["vertices"] << ", edges " << report["edges"] << ", faces " << report["faces"]
              << '\n'
              << "blocks   " << list(p->blocks()) << '\n'
              << "holes    " << list(p->holes()) << '\n';
    print_separation_text(separation_report(*p));
    if (report.contains("general_position_violations"))
      for (const auto& v : report["general_position_violations"]) std::cout << "  " << v.get<std::string>() << '\n';
    std::cout << (ok ? "valid" : "invalid") << '\n';
  }
  return ok ? kExitOk : kExitCheckFailed;
}

int cmd_analyze(const std::string& path, std::optional<std::uint64_t> seed_flag, double tol, bool exact,
                const std::string& format) {
  const Input in = read_input(path);
  const auto seed = resolve_seed(seed_flag, &in.doc);
  const Configuration config = configuration_for(in, seed);
  const BlockHolePolyhedron p = triangulate_surfaces(in.polyhedron);
  const FillOptions options = fill_options(in.doc, seed.value_or(0), tol);

  const BarFramework frame = fill_blocks(p, config, options);
  const StaticDims dims = exact ? static_dims_exact(frame) : static_dims(frame, tol);
  const SeparationReport sep = separation_report(p);
  // Motion assignments are read off the separated polyhedron, where the
  // body-hinge structure tracks every vertex.
  const GussetResult separated = separate(p, config, seed.value_or(0));
  const BodyHingeStructure hinges = build_body_hinge(separated.polyhedron, separated.config);
  const int motion = exact ? motion_dim_exact(hinges) : motion_dim(hinges, tol);

  json out{{"stress_dim", dims.stress_dim},
           {"unresolved_dim", dims.unresolved_dim},
           {"motion_dim", motion},
           {"rank", dims.rank},
           {"bars", frame.bar_count()},
           {"joints", frame.vertex_count()},
           {"gussets", separated.log.size()},
           {"mode", exact ? "exact" : "float"},
           {"separation", separation_json(sep)}};
  if (seed) out["seed"] = *seed;
  if (format == "json") {
    emit(out);
  } else {
    std::cout << "bars               " << frame.bar_count() << '\n'
              << "joints             " << frame.vertex_count() << '\n'
              << "rank               " << dims.rank << '\n'
              << "stress_dim         " << dims.stress_dim << '\n'
              << "unresolved_dim     " << dims.unresolved_dim << '\n'
              << "motion_dim         " << motion << '\n';
    print_separation_text(sep);
  }
  return kExitOk;
}

json direction_json(const SwapDirection& d) {
  return {{"stress_dim", d.stress_dim},
          {"motion_dim", d.motion_dim},
          {"stress_image_rank", d.stress_image_rank},
          {"motion_image_rank", d.motion_image_rank},
          {"map_residual", d.map_residual},
          {"roundtrip_residual", d.roundtrip_residual}};
}

int cmd_swap_verify(const std::string& path, std::optional<std::uint64_t> seed_flag, double tol,
                    const std::string& format) {
  const Input in = read_input(path);
  const auto seed = resolve_seed(seed_flag, &in.doc);
  const Configuration config = configuration_for(in, seed);
  SwapOptions options;
  options.seed = seed.value_or(0);
  options.rank_tolerance = tol;
  const SwapReport r = verify_swap_isomorphism(in.polyhedron, config, options);
  const bool ok = r.ok(options);

  json gussets = json::array();
  for (const auto& g : r.gussets)
    gussets.push_back({{"kind", to_string(g.kind)}, {"vertex", g.vertex}, {"face", g.face}, {"new_vertex", g.new_vertex}});
  json out{{"stress_dim", r.stress_dim_p},
           {"motion_dim_swapped", r.motion_dim_swapped},
           {"motion_dim", r.motion_dim_p},
           {"stress_dim_swapped", r.stress_dim_swapped},
           {"unresolved_dim", r.unresolved_dim_p},
           {"unresolved_dim_swapped", r.unresolved_dim_swapped},
           {"separated_input", r.separated_input},
           {"gusset_commutes", r.gusset_commutes},
           {"gussets", gussets},
           {"forward", direction_json(r.forward)},
           {"backward", direction_json(r.backward)},
           {"dims_match", r.dims_match()},
           {"ok", ok}};
  if (format == "json") {
    emit(out);
  } else {
    std::cout << "dims (stress, swapped motion, motion, swapped stress) = (" << r.stress_dim_p << ","
              << r.motion_dim_swapped << "," << r.motion_dim_p << "," << r.stress_dim_swapped << ")\n"
              << "separated input    " << (r.separated_input ? "yes" : "no") << '\n'
              << "gussets            " << r.gussets.size() << '\n'
              << "gusset/swap commute " << (r.gusset_commutes ? "yes" : "no") << '\n'
              << std::scientific << std::setprecision(2)
              << "forward  map " << r.forward.map_residual << ", roundtrip " << r.forward.roundtrip_residual << '\n'
              << "backward map " << r.backward.map_residual << ", roundtrip " << r.backward.roundtrip_residual << '\n'
              << (ok ? "isomorphism verified" : "isomorphism check FAILED") << '\n';
  }
  return ok ? kExitOk : kExitCheckFailed;
}

int cmd_gusset(const std::string& path, std::optional<std::uint64_t> seed_flag, const std::string& out_path) {
  const Input in = read_input(path);
  const auto seed = resolve_seed(seed_flag, &in.doc);
  const Configuration config = configuration_for(in, seed);
  const GussetResult r = separate(triangulate_surfaces(in.polyhedron), config, seed.value_or(0));
  PolyhedronDocument doc = make_document(r.polyhedron, r.config, seed);
  doc.fill = in.doc.fill;
  save_document(doc, out_path);
  for (const auto& g : r.log)
    std::cout << to_string(g.kind) << " gusset at vertex " << g.vertex << " on face " << g.face << ": new vertex "
              << g.new_vertex << ", triangles " << g.first_new_face << " and " << g.first_new_face + 1 << '\n';
  std::cout << r.log.size() << " gusset" << (r.log.size() == 1 ? "" : "s") << ", wrote " << out_path << '\n';
  return kExitOk;
}

int cmd_tower(int s, int t, std::optional<std::uint64_t> seed_flag, const std::string& out_path) {
  if (s < 3 || t < 3) throw Error(ErrorCode::ParseError, "--s and --t must be at least 3");
  const auto seed = resolve_seed(seed_flag, nullptr).value_or(0);
  save_document(make_document(tower(s, t), tower_configuration(s, t, seed), seed), out_path);
  std::cout << "wrote tower(" << s << ", " << t << ") to " << out_path << '\n';
  return kExitOk;
}

int cmd_probe(int samples, std::optional<std::uint64_t> seed_flag, const std::string& format) {
  const auto seed = resolve_seed(seed_flag, nullptr).value_or(0);
  const VanishingReport v = vanishing_rank_probe(tower(4, 4), FillStrategy::Auto, samples, seed);
  const ConjectureReport c = conjecture_probe(samples, seed);
  const bool ok = v.agreements == samples && c.max_relative_deviation < 1e-8 && c.zero_sets_agree;
  if (format == "json") {
    emit({{"samples", samples},
          {"agreements", v.agreements},
          {"exact_checks", v.exact_checks},
          {"ratio_mean", c.mean_ratio},
          {"ratio_max_relative_deviation", c.max_relative_deviation},
          {"ratio_samples", c.ratios.size()},
          {"zero_sets_agree", c.zero_sets_agree},
          {"ok", ok}});
  } else {
    std::cout << "vanishing/rank agreement " << v.agreements << "/" << samples << " (exact checks: " << v.exact_checks
              << ")\n"
              << "swap ratio T/T' mean " << c.mean_ratio << ", max relative deviation " << std::scientific
              << std::setprecision(2) << c.max_relative_deviation << " over " << c.ratios.size() << " samples\n"
              << "zero sets agree on the constructed root: " << (c.zero_sets_agree ? "yes" : "no") << '\n';
  }
  return ok ? kExitOk : kExitCheckFailed;
}

int cmd_export_off(const std::string& path, std::optional<std::uint64_t> seed_flag, const std::string& out_path) {
  const Input in = read_input(path);
  const auto seed = resolve_seed(seed_flag, &in.doc);
  const Configuration config = configuration_for(in, seed);
  const BlockHolePolyhedron p = triangulate_surfaces(in.polyhedron);
  const BarFramework frame = fill_blocks(p, config, fill_options(in.doc, seed.value_or(0), kDefaultRankTolerance));
  std::ofstream out(out_path);
  if (!out) throw Error(ErrorCode::ParseError, out_path + ": cannot write");
  out << export_off(p, config, &frame);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stresses and motions of block-and-hole polyhedra"};
  app.require_subcommand(1);

  std::string file;
  std::string out_path;
  std::string format = "text";
  std::optional<std::uint64_t> seed;
  double tol = kDefaultRankTolerance;
  bool exact = false;
  bool do_separate = false;
  int s = 0;
  int t = 0;
  int samples = 100;

  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  };

  auto* validate = app.add_subcommand("validate", "Check a document and report its structure");
  validate->add_option("file", file)->required();
  add_format(validate);

  auto* analyze = app.add_subcommand("analyze", "Stress, unresolved-load and motion dimensions");
  analyze->add_option("file", file)->required();
  analyze->add_option("--seed", seed, "Seed for fills, gussets and sampled coordinates");
  analyze->add_option("--tol", tol, "Relative singular-value tolerance")->check(CLI::PositiveNumber);
  analyze->add_flag("--exact", exact, "Exact rational ranks");
  add_format(analyze);

  auto* swap = app.add_subcommand("swap-verify", "Check stresses of P against motions of the swapped polyhedron");
  swap->add_option("file", file)->required();
  swap->add_option("--seed", seed);
  swap->add_option("--tol", tol)->check(CLI::PositiveNumber);
  add_format(swap);

  auto* gusset = app.add_subcommand("gusset", "Gusset contact vertices until the polyhedron is separated");
  gusset->add_option("file", file)->required();
  gusset->add_flag("--separate", do_separate)->required();
  gusset->add_option("-o,--output", out_path)->required();
  gusset->add_option("--seed", seed);

  auto* tower_cmd = app.add_subcommand("tower", "Write a perturbed tower(s, t) document");
  tower_cmd->add_option("--s", s, "Block polygon size")->required();
  tower_cmd->add_option("--t", t, "Hole polygon size")->required();
  tower_cmd->add_option("--seed", seed);
  tower_cmd->add_option("-o,--output", out_path)->required();

  auto* probe = app.add_subcommand("probe-condition", "Pure-condition probes on tower(4, 4)");
  probe->add_option("--samples", samples)->check(CLI::PositiveNumber);
  probe->add_option("--seed", seed);
  add_format(probe);

  auto* off = app.add_subcommand("export-off", "Write an OFF mesh with block fills as comments");
  off->add_option("file", file)->required();
  off->add_option("-o,--output", out_path)->required();
  off->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*validate) return cmd_validate(file, format);
    if (*analyze) return cmd_analyze(file, seed, tol, exact, format);
    if (*swap) return cmd_swap_verify(file, seed, tol, format);
    if (*gusset) return cmd_gusset(file, seed, out_path);
    if (*tower_cmd) return cmd_tower(s, t, seed, out_path);
    if (*probe) return cmd_probe(samples, seed, format);
    if (*off) return cmd_export_off(file, seed, out_path);
  } catch (const Error& e) {
    std::cerr << "rigidswap: " << e.what() << '\n';
    const bool usage = e.code() == ErrorCode::ParseError || e.code() == ErrorCode::MissingConfiguration;
    return usage ? kExitUsage : kExitAnalysis;
  } catch (const std::exception& e) {
    std::cerr << "rigidswap: " << e.what() << '\n';
    return kExitAnalysis;
  }
  return kExitUsage;
}
