#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "rigidswap/configuration.hpp"
#include "rigidswap/fixtures.hpp"
#include "rigidswap/statics.hpp"

namespace rigidswap {

/// Vertex roles in tower(4, 4): the printed condition's v_1..v_4 are block
/// vertices 0..3 and its u_i is hole vertex 4 + (i + hole_offset) mod 4.
struct Tower44Labels {
  std::array<VertexId, 4> block;
  std::array<VertexId, 4> hole;
};

Tower44Labels tower44_labels(int hole_offset);

/// Hole alignment under which the printed polynomial matches the rigidity
/// determinant of our tower(4, 4) band; see calibrate_tower44_alignment().
inline constexpr int kTower44HoleOffset = 3;

/// Π [v_i v_{i+1} u_i u_{i+1}] - Π [v_i v_{i-1} u_i u_{i+1}], indices mod 4.
double tower44_surface(const Configuration& p, int hole_offset = kTower44HoleOffset);
mpq_class tower44_surface(const ExactConfiguration& p, int hole_offset = kTower44HoleOffset);

/// [v_1 v_2 v_3 v_4] times the surface polynomial (K4 on the block).
double tower44_condition(const Configuration& p, int hole_offset = kTower44HoleOffset);
mpq_class tower44_condition(const ExactConfiguration& p, int hole_offset = kTower44HoleOffset);

/// [u_1 u_2 u_3 u_4] times the same surface polynomial (K4 on the old hole).
double tower44_swapped_condition(const Configuration& p, int hole_offset = kTower44HoleOffset);
mpq_class tower44_swapped_condition(const ExactConfiguration& p, int hole_offset = kTower44HoleOffset);

/// |c| divided by the matching sum of products of bracket Hadamard bounds;
/// at most 1, and 0 exactly where the condition vanishes.
double tower44_condition_normalized(const Configuration& p, int hole_offset = kTower44HoleOffset);

/// det(R_K) / det(M_P) for an isostatic framework, where R is the rigidity
/// matrix, P pins x, y, z of joint 0, x, y of joint 1 and x of joint 2, K is
/// the remaining columns and M holds the trivial motions. It does not depend on
/// the pinned set beyond a sign and vanishes exactly at special positions.
/// Joints must be finite and |bars| = 3|V| - 6.
double isostatic_determinant(const Configuration& positions, const std::vector<Bar>& bars);
mpq_class isostatic_determinant(const ExactConfiguration& positions, const std::vector<Bar>& bars);

/// |det(R_K)| relative to the product of its row norms.
double isostatic_determinant_normalized(const Configuration& positions, const std::vector<Bar>& bars);

/// Determinant of G_S(P) divided by the determinants of every block's
/// subframework. `positions` overrides the framework geometry (same size).
double surface_polynomial(const BarFramework& fw);
mpq_class surface_polynomial(const BarFramework& fw, const ExactConfiguration& positions);

/// Offsets tried in order 0..3. An offset is accepted when the printed
/// polynomial is a constant multiple of the rigidity determinant on every
/// sample and vanishes, with a rank drop, on an exact root configuration.
struct AlignmentTrial {
  int hole_offset = 0;
  double ratio_spread = 0.0;  // max relative deviation of det / formula
  bool root_rank_drop = false;
  bool accepted = false;
};

struct AlignmentCalibration {
  std::optional<int> hole_offset;
  std::vector<AlignmentTrial> trials;
};

AlignmentCalibration calibrate_tower44_alignment(int samples, std::uint64_t seed);

/// Exact tower(4, 4) configuration on the zero set of the surface
/// polynomial. One vertex slides homogeneously, p + s·d, toward a rational
/// mix d of two other vertices. Where the polynomial is linear in s (d keeps
/// one bracket of each product fixed) the root is rational; the candidate
/// moving its vertex least is used.
struct SurfaceRoot {
  ExactConfiguration config;
  mpq_class parameter;
  VertexId moved_vertex = 0;
  ExactPoint4 direction;
};

SurfaceRoot tower44_surface_root(const Configuration& base, int hole_offset = kTower44HoleOffset);

/// Rank behaviour where a one-parameter family of exact configurations
/// crosses a zero of its condition.
struct RankDropReport {
  mpq_class root;
  double located = 0.0;  // bisection estimate of the root
  int bisection_steps = 0;
  double condition_at_located = 0.0;
  int full_rank = 0;       // |bars|
  int rank_at_root = 0;    // exact
  int rank_below = 0;      // exact, at the bracketing endpoint below
  int rank_above = 0;      // exact, at the bracketing endpoint above
  bool block_brackets_nonzero = true;
  bool surface_nonzero = true;
  /// The exact root lies in the final bisection bracket.
  bool root_bracketed = false;
};

/// Moves block vertex v_4 of tower(4, 4) along z through the plane of
/// v_1 v_2 v_3; the block bracket is linear in the parameter.
RankDropReport tower44_block_coplanarity_crossing(const Configuration& base);

/// The same analysis along the surface-root line of tower44_surface_root().
RankDropReport tower44_surface_crossing(const Configuration& base, int hole_offset = kTower44HoleOffset);

enum class ConditionSource { RigidityDeterminant, Tower44Formula };

struct VanishingSample {
  double condition = 0.0;
  double normalized = 0.0;
  int stress_dim = 0;
  int unresolved_dim = 0;
  bool isostatic = false;
  bool exact_used = false;
  bool agrees = false;
};

struct VanishingReport {
  std::vector<VanishingSample> samples;
  int agreements = 0;
  int exact_checks = 0;
};

/// Samples seeded configurations and checks that the condition is nonzero
/// exactly when G_S(P) is isostatic; ambiguous samples are settled in exact
/// arithmetic. Throws NotGenericallyIsostatic.
VanishingReport vanishing_rank_probe(const BlockHolePolyhedron& p, FillStrategy fill, int samples,
                                     std::uint64_t seed, ConditionSource source = ConditionSource::RigidityDeterminant);

struct ConjectureReport {
  int samples = 0;
  std::vector<double> ratios;  // T(P) / T(P̄) per used sample
  std::vector<std::string> skipped;
  double mean_ratio = 0.0;
  double max_relative_deviation = 0.0;
  /// Largest relative deviation of T(P) from the printed polynomial times the mean scale.
  double formula_deviation = 0.0;
  /// On an exact surface root both surface polynomials vanish.
  bool zero_sets_agree = false;
};

/// tower(4, 4) and its swap with K4 on the respective blocks.
ConjectureReport conjecture_probe(int samples, std::uint64_t seed);

struct GenericDims {
  int stress_dim = 0;
  int unresolved_dim = 0;
  std::map<std::pair<int, int>, int> histogram;
  std::vector<int> outliers;  // sample indices off the modal pair
  int samples = 0;
};

/// Dimensions over seeded random configurations in block-and-hole general
/// position; the modal pair is the generic value.
GenericDims generic_dims(const BlockHolePolyhedron& p, FillStrategy fill, int samples, std::uint64_t seed);

/// Random grid configuration for p in block-and-hole general position.
Configuration sample_configuration(const BlockHolePolyhedron& p, std::uint64_t seed, int sample);

}  // namespace rigidswap
