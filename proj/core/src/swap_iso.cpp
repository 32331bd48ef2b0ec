#include "rigidswap/swap_iso.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <string>

#include "rigidswap/error.hpp"

namespace rigidswap {

namespace {

void require_separated(const BodyHingeStructure& motion, const BarFramework& swapped_frame) {
  if (!separation_report(motion.polyhedron).separated)
    throw Error(ErrorCode::NotSeparated, "a vertex lies on two holes or on two blocks; separate first");
  if (swapped_frame.polyhedron_vertex_count() != motion.polyhedron.polyhedron().vertex_count() ||
      swapped_frame.bar_count() < motion.polyhedron.polyhedron().edge_count())
    throw Error(ErrorCode::NotSeparated, "framework and body-hinge structure come from different polyhedra");
}

double max_abs(const Eigen::VectorXd& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

double hinge_scale(const BodyHingeStructure& s) {
  double scale = 0.0;
  for (const auto& d : s.extensors) scale = std::max(scale, norm(d));
  return scale;
}

void require_cycles(const BodyHingeStructure& motion, const MotionAssignment& omega, double rel_tol) {
  const double scale = max_abs(omega) * hinge_scale(motion);
  const double residual = max_cycle_residual(motion, omega);
  if (residual > rel_tol * scale && residual > 0.0) {
    std::ostringstream msg;
    msg << "cycle residual " << residual << " against scale " << scale;
    throw Error(ErrorCode::CycleViolation, msg.str());
  }
}

}  // namespace

MotionAssignment stress_to_motion(const BodyHingeStructure& motion, const BarFramework& swapped_frame,
                                  const Eigen::VectorXd& stress, double rel_tol) {
  require_separated(motion, swapped_frame);
  if (stress.size() != swapped_frame.bar_count())
    throw Error(ErrorCode::CycleViolation, "stress has the wrong number of bars");
  MotionAssignment omega(motion.hinge_count());
  for (int h = 0; h < motion.hinge_count(); ++h) omega(h) = stress(motion.graph.hinges[h].edge);
  require_cycles(motion, omega, rel_tol);
  return omega;
}

Eigen::VectorXd motion_to_stress(const BodyHingeStructure& motion, const BarFramework& swapped_frame,
                                 const MotionAssignment& omega, double rel_tol) {
  require_separated(motion, swapped_frame);
  if (omega.size() != motion.hinge_count())
    throw Error(ErrorCode::CycleViolation, "assignment has the wrong number of hinges");
  require_cycles(motion, omega, rel_tol);
  const int bars = swapped_frame.bar_count();
  const auto& x = swapped_frame.positions();
  Eigen::VectorXd lambda = Eigen::VectorXd::Zero(bars);
  std::vector<char> known(bars, 0);
  for (int h = 0; h < motion.hinge_count(); ++h) {
    lambda(motion.graph.hinges[h].edge) = omega(h);
    known[motion.graph.hinges[h].edge] = 1;
  }

  for (const BlockFill& fill : swapped_frame.fills()) {
    const auto vertices = swapped_frame.block_vertices(fill.block);
    const auto block_bars = swapped_frame.block_bars(fill.block);
    std::map<VertexId, int> local;
    for (VertexId v : vertices) local.emplace(v, static_cast<int>(local.size()));

    LoadAssignment load;
    load.loads.resize(vertices.size());
    for (int e = 0; e < bars; ++e) {
      if (!known[e]) continue;
      const Bar& b = swapped_frame.bars()[e];
      if (auto it = local.find(b.a); it != local.end()) load.loads[it->second] += lambda(e) * join(x[b.a], x[b.b]);
      if (auto it = local.find(b.b); it != local.end()) load.loads[it->second] += lambda(e) * join(x[b.b], x[b.a]);
    }
    if (!is_equilibrium(load, rel_tol))
      throw Error(ErrorCode::BlockLoadNotEquilibrium,
                  "load on block " + std::to_string(fill.block) + " does not sum to zero");

    Configuration positions;
    for (VertexId v : vertices) positions.push_back(x[v]);
    std::vector<Bar> local_bars;
    for (int e : block_bars) {
      if (known[e])
        throw Error(ErrorCode::BlockResolutionFailed,
                    "bar " + std::to_string(e) + " is both a hinge and a block bar");
      Bar b = swapped_frame.bars()[e];
      b.a = local.at(b.a);
      b.b = local.at(b.b);
      local_bars.push_back(b);
    }
    const BarFramework block(std::move(positions), std::move(local_bars));
    Eigen::VectorXd coeffs;
    try {
      coeffs = resolve_load(block, load, rel_tol);
    } catch (const Error& e) {
      throw Error(ErrorCode::BlockResolutionFailed, "block " + std::to_string(fill.block) + ": " + e.what());
    }
    for (std::size_t k = 0; k < block_bars.size(); ++k) {
      lambda(block_bars[k]) = coeffs(static_cast<Eigen::Index>(k));
      known[block_bars[k]] = 1;
    }
  }

  for (int e = 0; e < bars; ++e)
    if (!known[e])
      throw Error(ErrorCode::NotSeparated, "bar " + std::to_string(e) + " is neither a hinge nor in a block");
  const double scale = max_abs(lambda) * bar_extensor_scale(swapped_frame);
  const double residual = equilibrium_residual(swapped_frame, lambda);
  if (residual > rel_tol * scale && residual > 0.0) {
    std::ostringstream msg;
    msg << "vertex equilibrium residual " << residual << " against scale " << scale;
    throw Error(ErrorCode::CycleViolation, msg.str());
  }
  return lambda;
}

bool SwapReport::ok(const SwapOptions& options) const {
  auto direction_ok = [&](const SwapDirection& d) {
    return d.stress_dim == d.motion_dim && d.stress_image_rank == d.stress_dim &&
           d.motion_image_rank == d.motion_dim && d.map_residual <= options.map_tolerance &&
           d.roundtrip_residual <= options.roundtrip_tolerance;
  };
  return dims_match() && gusset_commutes && direction_ok(forward) && direction_ok(backward);
}

namespace {

SwapDirection check_direction(const BodyHingeStructure& motion, const BarFramework& swapped_frame,
                              const SwapOptions& options) {
  SwapDirection d;
  const Eigen::MatrixXd stresses = self_stress_basis(swapped_frame, options.rank_tolerance);
  const Eigen::MatrixXd motions = motion_basis(motion, options.rank_tolerance);
  d.stress_dim = static_cast<int>(stresses.cols());
  d.motion_dim = static_cast<int>(motions.cols());
  const double bar_scale = bar_extensor_scale(swapped_frame);
  const double hinge_scale_value = hinge_scale(motion);

  Eigen::MatrixXd stress_images(motion.hinge_count(), d.stress_dim);
  for (int k = 0; k < d.stress_dim; ++k) {
    const Eigen::VectorXd lambda = stresses.col(k);
    const MotionAssignment omega = stress_to_motion(motion, swapped_frame, lambda, options.map_tolerance);
    stress_images.col(k) = omega;
    d.map_residual = std::max(d.map_residual, max_cycle_residual(motion, omega) /
                                                  std::max(max_abs(omega) * hinge_scale_value, 1e-300));
    const Eigen::VectorXd back = motion_to_stress(motion, swapped_frame, omega, options.map_tolerance);
    d.roundtrip_residual = std::max(d.roundtrip_residual, max_abs(back - lambda) / max_abs(lambda));
  }
  Eigen::MatrixXd motion_images(swapped_frame.bar_count(), d.motion_dim);
  for (int k = 0; k < d.motion_dim; ++k) {
    const MotionAssignment omega = motions.col(k);
    const Eigen::VectorXd lambda = motion_to_stress(motion, swapped_frame, omega, options.map_tolerance);
    motion_images.col(k) = lambda;
    d.map_residual = std::max(d.map_residual, equilibrium_residual(swapped_frame, lambda) /
                                                  std::max(max_abs(lambda) * bar_scale, 1e-300));
    const MotionAssignment back = stress_to_motion(motion, swapped_frame, lambda, options.map_tolerance);
    d.roundtrip_residual = std::max(d.roundtrip_residual, max_abs(back - omega) / max_abs(omega));
  }
  d.stress_image_rank = d.stress_dim == 0 ? 0 : numeric_rank(stress_images, options.rank_tolerance);
  d.motion_image_rank = d.motion_dim == 0 ? 0 : numeric_rank(motion_images, options.rank_tolerance);
  return d;
}

}  // namespace

SwapReport verify_swap_isomorphism(const BlockHolePolyhedron& input, const Configuration& config,
                                   const SwapOptions& options) {
  const auto violations = general_position_violations(input, config);
  if (!violations.empty()) throw Error(ErrorCode::GeneralPositionViolation, violations.front());

  SwapReport report;
  BlockHolePolyhedron p = triangulate_surfaces(input);
  Configuration x = config;
  report.separated_input = separation_report(p).separated;
  if (!report.separated_input) {
    GussetResult primal = separate(p, x, options.seed);
    const GussetResult dual = separate(swapped(p), x, options.seed);
    report.gusset_commutes = swapped(primal.polyhedron) == dual.polyhedron && primal.config == dual.config;
    report.gussets = primal.log;
    p = std::move(primal.polyhedron);
    x = std::move(primal.config);
  }
  const BlockHolePolyhedron q = swapped(p);
  report.vertex_count = p.polyhedron().vertex_count();

  FillOptions fill;
  fill.seed = options.seed;
  fill.strategy = options.fill;
  fill.rank_tolerance = options.rank_tolerance;
  const BarFramework frame_p = fill_blocks(p, x, fill);
  const BarFramework frame_q = fill_blocks(q, x, fill);
  const BodyHingeStructure motion_p = build_body_hinge(p, x);
  const BodyHingeStructure motion_q = build_body_hinge(q, x);

  const StaticDims dims_p = static_dims(frame_p, options.rank_tolerance);
  const StaticDims dims_q = static_dims(frame_q, options.rank_tolerance);
  report.stress_dim_p = dims_p.stress_dim;
  report.unresolved_dim_p = dims_p.unresolved_dim;
  report.stress_dim_swapped = dims_q.stress_dim;
  report.unresolved_dim_swapped = dims_q.unresolved_dim;
  report.motion_dim_p = motion_dim(motion_p, options.rank_tolerance);
  report.motion_dim_swapped = motion_dim(motion_q, options.rank_tolerance);

  report.forward = check_direction(motion_p, frame_q, options);
  report.backward = check_direction(motion_q, frame_p, options);
  return report;
}

}  // namespace rigidswap
