#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "rigidswap/bodyhinge.hpp"
#include "rigidswap/gusset.hpp"
#include "rigidswap/statics.hpp"

namespace rigidswap {

/// ω on G^M(P) from a stress λ on G_S(P̄): each hinge takes the scalar of
/// the bar on its edge. `motion` is G^M(P) and `swapped_frame` is G_S(P̄) at
/// the same configuration. Throws NotSeparated or CycleViolation.
MotionAssignment stress_to_motion(const BodyHingeStructure& motion, const BarFramework& swapped_frame,
                                  const Eigen::VectorXd& stress, double rel_tol = 1e-8);

/// λ on G_S(P̄) from ω on G^M(P): hinge edges copy ω, and the bars of each
/// block of P̄ are resolved from the load the other bars put on the block.
/// Throws NotSeparated, BlockLoadNotEquilibrium, BlockResolutionFailed or
/// CycleViolation.
Eigen::VectorXd motion_to_stress(const BodyHingeStructure& motion, const BarFramework& swapped_frame,
                                 const MotionAssignment& omega, double rel_tol = 1e-8);

/// Checks of the two maps in one direction: stresses of G_S(P̄) against
/// motion assignments of G^M(P).
struct SwapDirection {
  int stress_dim = 0;  // G_S(P̄)
  int motion_dim = 0;  // G^M(P)
  int stress_image_rank = 0;
  int motion_image_rank = 0;
  double map_residual = 0.0;
  double roundtrip_residual = 0.0;
};

struct SwapOptions {
  std::uint64_t seed = 0;
  double rank_tolerance = kDefaultRankTolerance;
  double map_tolerance = 1e-8;
  double roundtrip_tolerance = 1e-7;
  FillStrategy fill = FillStrategy::Auto;
};

struct SwapReport {
  bool separated_input = true;
  std::vector<GussetRecord> gussets;
  /// swapped(separate(P)) equals separate(swapped(P)) with identical positions.
  bool gusset_commutes = true;
  int vertex_count = 0;

  int stress_dim_p = 0;
  int motion_dim_p = 0;
  int stress_dim_swapped = 0;
  int motion_dim_swapped = 0;
  int unresolved_dim_p = 0;
  int unresolved_dim_swapped = 0;

  SwapDirection forward;   // S(G_S(P̄)) vs M(G^M(P))
  SwapDirection backward;  // S(G_S(P)) vs M(G^M(P̄))

  bool dims_match() const { return stress_dim_p == motion_dim_swapped && stress_dim_swapped == motion_dim_p; }
  bool ok(const SwapOptions& options) const;
};

/// Triangulates surfaces, separates by gusseting if needed, then computes the
/// four dimensions and pushes every basis vector through both maps and back.
/// Throws GeneralPositionViolation.
SwapReport verify_swap_isomorphism(const BlockHolePolyhedron& p, const Configuration& config,
                                   const SwapOptions& options = {});

}  // namespace rigidswap
