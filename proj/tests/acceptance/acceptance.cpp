// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>

#include "rigidswap/bodyhinge.hpp"
#include "rigidswap/conditions.hpp"
#include "rigidswap/fixtures.hpp"
#include "rigidswap/gusset.hpp"
#include "rigidswap/random.hpp"
#include "rigidswap/statics.hpp"
#include "rigidswap/swap_iso.hpp"

using namespace rigidswap;

namespace {

constexpr int kConfigurations = 20;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  /// Records a failure once per message.
  void fail(const std::string& why) {
    if (pass) detail << "first failure: " << why;
    pass = false;
  }
  void check(bool ok, const std::string& why) {
    if (!ok) fail(why);
  }
};

std::string dims_text(int a, int b) { return "(" + std::to_string(a) + ", " + std::to_string(b) + ")"; }

double max_abs(const Eigen::VectorXd& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

/// Largest coordinate error relative to the largest input coordinate.
double relative_error(const Eigen::VectorXd& got, const Eigen::VectorXd& want) {
  return max_abs(got - want) / std::max(max_abs(want), 1e-300);
}

std::vector<Fixture> non_separated_fixtures() {
  std::vector<Fixture> out;
  for (const auto& f : fixture_catalog())
    if (!separation_report(f.polyhedron).separated) out.push_back(f);
  return out;
}

void isostatic_spheres(Outcome& o) {
  for (const char* name : {"oct", "icosahedron"}) {
    const Fixture& f = fixture(name);
    const BarFramework fw = fill_blocks(f.polyhedron, f.base);
    const StaticDims d = static_dims_exact(fw);
    const int motions = motion_dim_exact(build_body_hinge(f.polyhedron, f.base));
    o.check(d.stress_dim == 0 && d.unresolved_dim == 0 && motions == 0,
            std::string(name) + " dims " + dims_text(d.stress_dim, d.unresolved_dim) + " motion " +
                std::to_string(motions));
    o.detail << name << " (0, 0, 0) ";
  }
}

void tower_table(Outcome& o) {
  for (auto [s, t] : std::vector<std::pair<int, int>>{{4, 3}, {5, 3}, {4, 4}, {3, 4}, {3, 5}}) {
    const auto p = tower(s, t);
    std::map<std::pair<int, int>, int> histogram;
    for (int seed = 0; seed < kConfigurations; ++seed) {
      const StaticDims d = static_dims_exact(fill_blocks(p, tower_configuration(s, t, seed)));
      ++histogram[{d.stress_dim, d.unresolved_dim}];
    }
    auto modal = histogram.begin();
    for (auto it = histogram.begin(); it != histogram.end(); ++it)
      if (it->second > modal->second) modal = it;
    const std::pair<int, int> want{std::max(s - t, 0), std::max(t - s, 0)};
    o.check(modal->first == want, "tower(" + std::to_string(s) + "," + std::to_string(t) + ") modal " +
                                      dims_text(modal->first.first, modal->first.second));
    o.detail << s << "," << t << ":" << dims_text(modal->first.first, modal->first.second) << "x" << modal->second
             << " ";
  }
}

void swap_dimensions(Outcome& o) {
  int runs = 0;
  for (const auto& f : fixture_catalog())
    for (int seed = 0; seed < kConfigurations; ++seed) {
      const auto r = verify_swap_isomorphism(f.polyhedron, f.configuration(seed), {.seed = std::uint64_t(seed)});
      ++runs;
      o.check(r.dims_match(), f.name + " seed " + std::to_string(seed) + " stress/motion " +
                                  dims_text(r.stress_dim_p, r.motion_dim_swapped) + " " +
                                  dims_text(r.stress_dim_swapped, r.motion_dim_p));
    }
  o.detail << runs << " configurations";
}

/// Both maps between stresses of G_S(Q̄) and motions of G^M(Q) for one separated Q.
void check_maps(Outcome& o, const std::string& label, const BlockHolePolyhedron& q, const Configuration& c,
                std::uint64_t seed, int& checked) {
  const BodyHingeStructure motion = build_body_hinge(q, c);
  const BarFramework frame = fill_blocks(swapped(q), c, {.seed = seed});
  const double scale = bar_extensor_scale(frame);
  const Eigen::MatrixXd stresses = self_stress_basis(frame);
  const Eigen::MatrixXd motions = motion_basis(motion);
  for (int k = 0; k < stresses.cols(); ++k) {
    const Eigen::VectorXd omega = stress_to_motion(motion, frame, stresses.col(k));
    o.check(max_cycle_residual(motion, omega) < 1e-8, label + " mapped motion violates a cycle");
    const Eigen::VectorXd back = motion_to_stress(motion, frame, omega);
    o.check(relative_error(back, stresses.col(k)) <= 1e-7, label + " stress roundtrip");
    ++checked;
  }
  for (int k = 0; k < motions.cols(); ++k) {
    const Eigen::VectorXd lambda = motion_to_stress(motion, frame, motions.col(k));
    o.check(equilibrium_residual(frame, lambda) < 1e-8 * scale * std::max(1.0, max_abs(lambda)),
            label + " mapped stress not in equilibrium");
    const Eigen::VectorXd back = stress_to_motion(motion, frame, lambda);
    o.check(relative_error(back, motions.col(k)) <= 1e-7, label + " motion roundtrip");
    ++checked;
  }
}

void map_roundtrips(Outcome& o) {
  int checked = 0;
  for (const auto& f : fixture_catalog())
    for (int seed = 0; seed < 5; ++seed) {
      const auto sep = separate(f.polyhedron, f.configuration(seed), seed);
      const std::string label = f.name + " seed " + std::to_string(seed);
      check_maps(o, label, sep.polyhedron, sep.config, seed, checked);
      check_maps(o, label + " swapped", swapped(sep.polyhedron), sep.config, seed, checked);
    }
  o.check(checked > 0, "no nonzero spaces found");
  o.detail << checked << " basis vectors mapped both ways";
}

void gusset_invariance(Outcome& o) {
  int stages = 0;
  for (const auto& f : non_separated_fixtures())
    for (int seed = 0; seed < 5; ++seed) {
      const Configuration c = f.configuration(seed);
      const auto full = separate(f.polyhedron, c, seed);
      const StaticDims start = static_dims_exact(fill_blocks(f.polyhedron, c));
      GussetResult state{f.polyhedron, c, {}};
      auto compare = [&](const std::string& stage) {
        const std::string label = f.name + " seed " + std::to_string(seed) + " " + stage;
        const StaticDims d = static_dims_exact(fill_blocks(state.polyhedron, state.config));
        o.check(d.stress_dim == start.stress_dim && d.unresolved_dim == start.unresolved_dim,
                label + " dims " + dims_text(d.stress_dim, d.unresolved_dim));
        if (hinge_graph(state.polyhedron).tracks_vertices()) {
          const int m = motion_dim_exact(build_body_hinge(state.polyhedron, state.config));
          o.check(m == start.unresolved_dim, label + " motion " + std::to_string(m));
        }
        ++stages;
      };
      compare("before");
      for (const GussetRecord& g : full.log) {
        state = g.kind == GussetKind::Hole ? hole_gusset(state.polyhedron, state.config, g.vertex, g.face, seed)
                                           : block_gusset(state.polyhedron, state.config, g.vertex, g.face, seed);
        o.check(state.config.back() == g.position, "replayed gusset moved");
        compare("after gusset at " + std::to_string(g.vertex));
      }
      o.check(state.polyhedron == full.polyhedron, "replay differs from separation");
      o.check(hinge_graph(full.polyhedron).tracks_vertices(), "separated result still splits a vertex");
    }
  o.detail << stages << " stages compared";
}

void gusset_commutativity(Outcome& o) {
  int runs = 0;
  for (const auto& f : non_separated_fixtures())
    for (int seed = 0; seed < kConfigurations; ++seed) {
      const Configuration c = f.configuration(seed);
      const auto a = separate(f.polyhedron, c, seed);
      const auto b = separate(swapped(f.polyhedron), c, seed);
      o.check(swapped(a.polyhedron) == b.polyhedron && a.config == b.config,
              f.name + " seed " + std::to_string(seed));
      ++runs;
    }
  o.detail << runs << " runs identical";
}

void cut_sets(Outcome& o) {
  int sums = 0;
  double worst = 0;
  for (const auto& f : fixture_catalog()) {
    const BarFramework fw = fill_blocks(f.polyhedron, f.configuration(0));
    const Eigen::MatrixXd basis = self_stress_basis(fw);
    const auto cuts = face_cycle_cuts(f.polyhedron, fw, 10, 0);
    o.check(cuts.size() == 10, f.name + " found " + std::to_string(cuts.size()) + " cuts");
    const double scale = bar_extensor_scale(fw);
    for (int k = 0; k < basis.cols(); ++k)
      for (const auto& cut : cuts) {
        const double r = norm(cut_set_sum(fw, basis.col(k), cut)) / (scale * max_abs(basis.col(k)));
        worst = std::max(worst, r);
        o.check(r < 1e-8, f.name + " cut sum " + std::to_string(r));
        ++sums;
      }
  }
  o.detail << sums << " cut sums, worst " << worst;
}

void substitution(Outcome& o) {
  for (auto [s, t] : std::vector<std::pair<int, int>>{{4, 4}, {4, 3}}) {
    const auto p = tower(s, t);
    for (int seed = 0; seed < kConfigurations; ++seed) {
      const Configuration c = tower_configuration(s, t, seed);
      const BarFramework chords = fill_blocks(p, c, {.strategy = FillStrategy::Chords});
      const BlockFill cone = make_fill(0, p.polyhedron().face(0), c, FillStrategy::ConeOverFan, {.seed = std::uint64_t(seed)});
      const BarFramework swapped_fill = substitute_block(p, chords, 0, cone);
      const int a = static_dims_exact(chords).stress_dim;
      const int b = static_dims_exact(swapped_fill).stress_dim;
      o.check(a == b, "tower(" + std::to_string(s) + "," + std::to_string(t) + ") stress " + std::to_string(a) +
                          " vs " + std::to_string(b));
    }
    o.detail << "tower(" << s << "," << t << ") ";
  }
}

void pure_condition(Outcome& o) {
  const auto probe = vanishing_rank_probe(tower(4, 4), FillStrategy::Chords, 100, 1);
  o.check(probe.agreements == 100, std::to_string(probe.agreements) + "/100 agreements");
  const Configuration base = sample_configuration(tower(4, 4), 1, 0);
  const auto block = tower44_block_coplanarity_crossing(base);
  o.check(block.root_bracketed && block.rank_at_root < block.full_rank && block.rank_below == block.full_rank &&
              block.rank_above == block.full_rank,
          "block crossing ranks " + std::to_string(block.rank_below) + "/" + std::to_string(block.rank_at_root) +
              "/" + std::to_string(block.rank_above));
  const auto surface = tower44_surface_crossing(base);
  o.check(surface.root_bracketed && surface.block_brackets_nonzero && surface.rank_at_root < surface.full_rank &&
              surface.rank_below == surface.full_rank && surface.rank_above == surface.full_rank,
          "surface crossing ranks " + std::to_string(surface.rank_below) + "/" +
              std::to_string(surface.rank_at_root) + "/" + std::to_string(surface.rank_above));
  o.detail << probe.agreements << "/100 agree, exact checks " << probe.exact_checks << "; rank " << block.full_rank
           << " drops to " << block.rank_at_root << " at the block root and " << surface.rank_at_root
           << " at the surface root (" << surface.bisection_steps << " bisection steps)";
}

void conjecture(Outcome& o) {
  const auto r = conjecture_probe(50, 1);
  o.check(r.ratios.size() == 50, std::to_string(r.ratios.size()) + " usable samples");
  o.check(r.max_relative_deviation < 1e-8, "ratio deviation " + std::to_string(r.max_relative_deviation));
  o.check(r.zero_sets_agree, "zero sets differ");
  o.detail << "ratio " << r.mean_ratio << ", deviation " << r.max_relative_deviation;
}

void projective_invariance(Outcome& o) {
  int runs = 0;
  for (const auto& f : fixture_catalog()) {
    const Configuration c = f.configuration(0);
    const auto sep = separate(f.polyhedron, c, 0);
    const StaticDims statics = static_dims_exact(fill_blocks(f.polyhedron, c));
    const int motions = motion_dim_exact(build_body_hinge(sep.polyhedron, sep.config));
    const auto swap = verify_swap_isomorphism(f.polyhedron, c);
    for (std::uint64_t t = 0; t < 5; ++t) {
      const Eigen::Matrix4d m = random_projective_transform(derive_seed(1, {kTransformStream, t}));
      const Configuration moved = apply_projective(m, c);
      const auto moved_sep = separate(f.polyhedron, moved, 0);
      const StaticDims d = static_dims_exact(fill_blocks(f.polyhedron, moved));
      const int mm = motion_dim_exact(build_body_hinge(moved_sep.polyhedron, moved_sep.config));
      const auto ms = verify_swap_isomorphism(f.polyhedron, moved);
      o.check(d.stress_dim == statics.stress_dim && d.unresolved_dim == statics.unresolved_dim,
              f.name + " statics changed");
      o.check(mm == motions, f.name + " motion changed");
      o.check(ms.stress_dim_swapped == swap.stress_dim_swapped && ms.motion_dim_swapped == swap.motion_dim_swapped,
              f.name + " swapped dims changed");
      ++runs;
    }
  }
  o.detail << runs << " transformed configurations";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"triangulated spheres are isostatic", isostatic_spheres},
      {"tower dimension table", tower_table},
      {"swap exchanges stress and motion dimensions", swap_dimensions},
      {"explicit maps roundtrip", map_roundtrips},
      {"gussets preserve dimensions", gusset_invariance},
      {"separation commutes with swap", gusset_commutativity},
      {"stresses balance across cut sets", cut_sets},
      {"block substitution keeps stresses", substitution},
      {"pure condition vanishes with rank", pure_condition},
      {"swapped surface polynomials agree", conjecture},
      {"projective invariance", projective_invariance},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !o.pass;
    std::printf("%s %2zu %s [%.2fs]: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), seconds,
                o.detail.str().c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
