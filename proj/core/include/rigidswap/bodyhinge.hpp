#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "rigidswap/configuration.hpp"
#include "rigidswap/geometry.hpp"
#include "rigidswap/linalg.hpp"
#include "rigidswap/polyhedron.hpp"

namespace rigidswap {

/// Rigid bodies (surface triangles and blocks) joined by hinges along shared
/// edges. Hinge h carries D = p_tail ∨ p_head for its canonical patch.
struct BodyHingeStructure {
  BlockHolePolyhedron polyhedron;
  Configuration positions;
  HingeGraph graph;
  std::vector<Extensor2> extensors;  // per hinge
  std::vector<int> hinge_of_edge;    // -1 when an edge touches a hole

  int body_count() const { return static_cast<int>(graph.bodies.size()); }
  int hinge_count() const { return static_cast<int>(graph.hinges.size()); }
  bool connected() const { return graph.connected; }
};

/// Scalar per hinge, in hinge order.
using MotionAssignment = Eigen::VectorXd;

/// Throws NotTriangulated.
BodyHingeStructure build_body_hinge(const BlockHolePolyhedron& p, const Configuration& config);

/// Crossing of one hinge; forward means from_body -> to_body.
struct CycleStep {
  int hinge = 0;
  bool forward = true;
};

/// Rows: 6 per fundamental cycle of a spanning forest. Without a seed the
/// forest is breadth-first from the lowest body of each component, hinges in
/// ascending order; a seed picks random roots and neighbour orders.
Eigen::MatrixXd cycle_condition_matrix(const BodyHingeStructure& s, std::optional<std::uint64_t> forest_seed = {});
ExactMatrix cycle_condition_matrix_exact(const BodyHingeStructure& s);

/// Basis (as columns) of the motion assignments.
Eigen::MatrixXd motion_basis(const BodyHingeStructure& s, double rel_tol = kDefaultRankTolerance,
                             std::optional<std::uint64_t> forest_seed = {});
int motion_dim(const BodyHingeStructure& s, double rel_tol = kDefaultRankTolerance,
               std::optional<std::uint64_t> forest_seed = {});
int motion_dim_exact(const BodyHingeStructure& s);

/// Dimension from the screw formulation: unknown screws per body plus one
/// scalar per hinge, S^from - S^to = ω D at every hinge, one root pinned per
/// component.
int motion_dim_via_screws(const BodyHingeStructure& s, double rel_tol = kDefaultRankTolerance);

/// Screw centers by propagation from root_body (S = 0 there; other components
/// are rooted at their lowest body). Throws InconsistentAssignment when a
/// hinge off the propagation tree disagrees.
std::vector<Extensor2> screws_from_motion(const BodyHingeStructure& s, const MotionAssignment& omega,
                                          int root_body = 0, double rel_tol = 1e-8);

/// Σ ±ω D along the steps. Throws NotACycle when the steps do not chain or close.
Extensor2 cycle_residual(const BodyHingeStructure& s, const MotionAssignment& omega,
                         const std::vector<CycleStep>& cycle);

/// Largest cycle residual norm over all fundamental cycles.
double max_cycle_residual(const BodyHingeStructure& s, const MotionAssignment& omega);

/// Closed walk through consecutive faces, each pair sharing a hinge.
/// Throws NotACycle.
std::vector<CycleStep> cycle_through_faces(const BodyHingeStructure& s, const std::vector<FaceId>& faces);

/// Faces around a vertex in rotational order. Throws NotACycle when a hole touches v.
std::vector<CycleStep> vertex_cycle(const BodyHingeStructure& s, VertexId v);

/// Ring of faces around a hole. Throws NotACycle when the ring meets another hole.
std::vector<CycleStep> hole_cycle(const BodyHingeStructure& s, FaceId hole);

}  // namespace rigidswap
