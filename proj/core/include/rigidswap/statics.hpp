#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "rigidswap/configuration.hpp"
#include "rigidswap/geometry.hpp"
#include "rigidswap/linalg.hpp"
#include "rigidswap/polyhedron.hpp"

namespace rigidswap {

enum class FillStrategy {
  Auto,         // Chords for non-coplanar quadrilaterals, ConeOverFan otherwise
  Chords,       // two fans of diagonals (K4 on a quadrilateral), no added vertices
  ConeOverFan,  // one apex joined to the boundary, boundary fanned from its minimum vertex
};

const char* to_string(FillStrategy s);
std::optional<FillStrategy> parse_fill_strategy(const std::string& name);

/// Isostatic subframework inserted into a block face. Local vertex indices
/// [0, n) are the block boundary in face order; [n, n + added) are the added
/// vertices. The boundary polygon edges are implicit and always present.
struct BlockFill {
  FaceId block = -1;
  std::vector<VertexId> boundary;
  std::vector<Point4> added_positions;
  std::vector<std::pair<int, int>> added_edges;
  FillStrategy strategy = FillStrategy::Chords;

  int vertex_count() const { return static_cast<int>(boundary.size() + added_positions.size()); }
  int edge_count() const { return static_cast<int>(boundary.size() + added_edges.size()); }
};

struct FillOptions {
  FillStrategy strategy = FillStrategy::Auto;
  std::map<FaceId, FillStrategy> per_block;
  std::uint64_t seed = 0;
  int max_retries = 8;
  double rank_tolerance = kDefaultRankTolerance;
};

/// Builds an isostatic fill for one block polygon at the given configuration.
/// Throws CollinearBlockBoundary or FillDependentAfterRetries.
BlockFill make_fill(FaceId block, const std::vector<VertexId>& boundary, const Configuration& config,
                    FillStrategy strategy, const FillOptions& options);

/// True when boundary + added edges form an isostatic framework at the fill's positions.
bool fill_is_isostatic(const BlockFill& fill, const Configuration& config, double rel_tol = kDefaultRankTolerance);

enum class BarKind { Surface, BlockBoundary, BlockFill };

const char* to_string(BarKind kind);

struct Bar {
  VertexId a = 0;
  VertexId b = 0;
  BarKind kind = BarKind::Surface;
  EdgeId edge = -1;   // polyhedron edge, or -1 for fill bars
  FaceId block = -1;  // owning block for fill bars
};

/// Bar-and-joint framework. When assembled from a block-and-hole polyhedron
/// it realizes G_S(P, p): bar e < E is polyhedron edge e, fill bars and fill
/// vertices follow, block by block in ascending face order.
class BarFramework {
 public:
  BarFramework(Configuration positions, std::vector<Bar> bars);

  static BarFramework assemble(const BlockHolePolyhedron& p, const Configuration& config, std::vector<BlockFill> fills);

  int vertex_count() const { return static_cast<int>(positions_.size()); }
  int bar_count() const { return static_cast<int>(bars_.size()); }
  int polyhedron_vertex_count() const { return polyhedron_vertices_; }
  const Configuration& positions() const { return positions_; }
  const std::vector<Bar>& bars() const { return bars_; }
  const std::vector<BlockFill>& fills() const { return fills_; }

  const BlockFill* fill_for(FaceId block) const;
  /// Global ids of a block's boundary followed by its added vertices.
  std::vector<VertexId> block_vertices(FaceId block) const;
  /// Bars of a block's isostatic subframework: boundary edges then fill edges.
  std::vector<int> block_bars(FaceId block) const;

 private:
  Configuration positions_;
  std::vector<Bar> bars_;
  std::vector<BlockFill> fills_;
  std::vector<std::vector<int>> block_bar_index_;  // parallel to fills_
  std::vector<VertexId> fill_vertex_offset_;       // parallel to fills_
  int polyhedron_vertices_ = 0;
};

/// G_S(P, p): every polyhedron edge plus an isostatic fill for every block.
/// Surfaces must already be triangulated.
BarFramework fill_blocks(const BlockHolePolyhedron& p, const Configuration& config, const FillOptions& options = {});

/// One Extensor2 per framework vertex.
struct LoadAssignment {
  std::vector<Extensor2> loads;

  Eigen::VectorXd flatten() const;
  static LoadAssignment unflatten(const Eigen::VectorXd& v);
};

/// p_i ∨ p_j at i, p_j ∨ p_i at j, zero elsewhere.
LoadAssignment bar_load(const BarFramework& fw, int bar);

bool is_equilibrium(const LoadAssignment& load, double rel_tol = 1e-9);

/// True when every L_i passes through p_i, i.e. lies in { f ∨ p_i }.
bool loads_pass_through_joints(const LoadAssignment& load, const Configuration& positions, double rel_tol = 1e-9);

/// Rows are bar loads: |bars| x 6|V|.
Eigen::MatrixXd bar_load_matrix(const BarFramework& fw);
ExactMatrix bar_load_matrix_exact(const BarFramework& fw);
/// Same bars at exact (possibly non-dyadic) positions.
ExactMatrix bar_load_matrix_exact(const ExactConfiguration& positions, const std::vector<Bar>& bars);

/// Self-stress basis as matrix columns (one scalar per bar each).
Eigen::MatrixXd self_stress_basis(const BarFramework& fw, double rel_tol = kDefaultRankTolerance);

/// Largest per-vertex norm of Σ_j λ_ij (p_i ∨ p_j).
double equilibrium_residual(const BarFramework& fw, const Eigen::VectorXd& lambda);

/// Scale of the bar extensors: max_e ‖p_a ∨ p_b‖.
double bar_extensor_scale(const BarFramework& fw);

/// Minimum-norm coefficients λ with L_i + Σ λ_ij p_i p_j = 0 at every vertex.
/// Throws NotEquilibrium or Unresolvable.
Eigen::VectorXd resolve_load(const BarFramework& fw, const LoadAssignment& load, double rel_tol = 1e-9);

struct StaticDims {
  int rank = 0;
  int stress_dim = 0;
  int unresolved_dim = 0;
  friend bool operator==(const StaticDims&, const StaticDims&) = default;
};

/// Throws DegenerateConfiguration when all joints are collinear.
StaticDims static_dims(const BarFramework& fw, double rel_tol = kDefaultRankTolerance);
StaticDims static_dims_exact(const BarFramework& fw);

/// Classical rigidity matrix (|bars| x 3|V|) in affine coordinates; every
/// joint must be finite.
Eigen::MatrixXd euclidean_rigidity_matrix(const BarFramework& fw);

/// Σ λ_e (p ∨ q) over the cut bars leaving the component that contains the
/// first endpoint of the first cut bar. Throws NotACutSet.
Extensor2 cut_set_sum(const BarFramework& fw, const Eigen::VectorXd& stress, const std::vector<int>& cut_bars);

/// Bar sets crossed by simple closed face-edge cycles of P: edge boundaries of
/// vertex sets W with W and its complement connected. Cycles that keep every
/// block on one side are preferred; if fewer than `count` exist, cycles may
/// cross a block, with its fill vertices on the side of its first corner.
std::vector<std::vector<int>> face_cycle_cuts(const BlockHolePolyhedron& p, const BarFramework& fw, int count,
                                              std::uint64_t seed);

/// Replaces the fill of one block. Throws NewFillNotIsostatic.
BarFramework substitute_block(const BlockHolePolyhedron& p, const BarFramework& fw, FaceId block,
                              const BlockFill& new_fill, double rel_tol = kDefaultRankTolerance);

}  // namespace rigidswap
