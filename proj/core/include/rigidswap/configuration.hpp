#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rigidswap/geometry.hpp"
#include "rigidswap/polyhedron.hpp"

namespace rigidswap {

/// Homogeneous position per vertex, indexed by VertexId.
using Configuration = std::vector<Point4>;
using ExactConfiguration = std::vector<ExactPoint4>;

ExactConfiguration to_exact(const Configuration& p);
Configuration to_double(const ExactConfiguration& p);

/// Affine coordinates of p, or nothing for points at infinity.
std::optional<std::array<double, 3>> affine_coordinates(const Point4& p);

Point4 transform(const Eigen::Matrix4d& m, const Point4& p);
Configuration apply_projective(const Eigen::Matrix4d& m, const Configuration& p);

/// Seeded, well-conditioned invertible 4x4 matrix: identity plus a bounded
/// random perturbation, resampled until |det| is comfortably away from zero.
Eigen::Matrix4d random_projective_transform(std::uint64_t seed);

/// Rank of the homogeneous coordinate matrix of the points (1 = one point,
/// 2 = collinear, 3 = coplanar, 4 = spanning).
int projective_rank(const std::vector<Point4>& points, double rel_tol = 1e-9);

bool collinear(const std::vector<Point4>& points, double rel_tol = 1e-9);
bool coplanar(const std::vector<Point4>& points, double rel_tol = 1e-9);

/// Base positions plus independent uniform noise in [-amplitude, amplitude],
/// snapped to the dyadic coordinate grid.
Configuration perturbed(const Configuration& base, double amplitude, std::uint64_t seed);

/// Uniform points in [-1, 1]^3 on the dyadic grid.
Configuration random_configuration(int vertex_count, std::uint64_t seed);

/// Describes each violation of block-and-hole general position: adjacent
/// vertices at the same projective point, or three consecutive vertices of a
/// block or hole collinear. Empty when p is in general position.
std::vector<std::string> general_position_violations(const BlockHolePolyhedron& p, const Configuration& config,
                                                     double rel_tol = 1e-9);

}  // namespace rigidswap
