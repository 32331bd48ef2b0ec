#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rigidswap/configuration.hpp"
#include "rigidswap/polyhedron.hpp"

namespace rigidswap {

/// Octahedron with vertices (±1,0,0), (0,±1,0), (0,0,±1) numbered in that
/// order. Face 4·[x<0] + 2·[y<0] + [z<0] is the octant of its sign pattern.
SphericalPolyhedron octahedron();
Configuration octahedron_configuration();

/// Regular icosahedron on (0,±1,±φ) and its cyclic permutations.
SphericalPolyhedron icosahedron();
Configuration icosahedron_configuration();

/// Cube on (±1,±1,±1); vertex k has x < 0 iff bit 2, y < 0 iff bit 1, z < 0
/// iff bit 0. Faces are +x, -x, +y, -y, +z, -z in that order.
SphericalPolyhedron cube();
Configuration cube_configuration();

/// Prism positions for tower(s, t): block on the unit circle at z = 1, hole
/// on the unit circle at z = -1, then seeded grid-snapped noise.
Configuration tower_configuration(int s, int t, std::uint64_t seed, double noise = 0.15);

struct Fixture {
  std::string name;
  std::string description;
  BlockHolePolyhedron polyhedron;  // surfaces triangulated
  Configuration base;
  double noise = 0.1;

  /// Base positions plus seeded noise.
  Configuration configuration(std::uint64_t seed) const;
};

/// oct, icosahedron, oct-block-hole, oct-two-holes, cube-block-hole,
/// cube-two-blocks and tower-S-T for (4,3), (5,3), (4,4), (3,4), (3,5).
std::vector<Fixture> fixture_catalog();
const Fixture& fixture(const std::string& name);

}  // namespace rigidswap
