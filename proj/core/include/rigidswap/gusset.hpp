#pragma once

#include <cstdint>
#include <vector>

#include "rigidswap/configuration.hpp"
#include "rigidswap/polyhedron.hpp"

namespace rigidswap {

enum class GussetKind { Hole, Block };

const char* to_string(GussetKind kind);

/// One gusset: face `face` (a hole or block through `vertex`) is moved off
/// `vertex` onto the new 3-valent vertex `new_vertex`, and the two surface
/// triangles (prev, vertex, new_vertex), (new_vertex, vertex, next) are appended.
struct GussetRecord {
  GussetKind kind = GussetKind::Hole;
  VertexId vertex = 0;
  FaceId face = 0;
  VertexId prev = 0;
  VertexId next = 0;
  VertexId new_vertex = 0;
  Point4 position{};
  FaceId first_new_face = 0;
  int attempts = 1;
};

struct GussetResult {
  BlockHolePolyhedron polyhedron;
  Configuration config;
  std::vector<GussetRecord> log;
};

/// Throws NotOnHole or CoplanarAfterRetries.
GussetResult hole_gusset(const BlockHolePolyhedron& p, const Configuration& config, VertexId u, FaceId hole,
                         std::uint64_t seed = 0);

/// Throws NotOnBlock or NoGeneralPositionFound.
GussetResult block_gusset(const BlockHolePolyhedron& p, const Configuration& config, VertexId u, FaceId block,
                          std::uint64_t seed = 0);

/// Gussets every vertex lying on two or more holes or two or more blocks:
/// contact vertices ascending, and at each one all holes but the last and all
/// blocks but the last, in ascending face order. Vertices with one hole and
/// one block are left alone.
GussetResult separate(const BlockHolePolyhedron& p, const Configuration& config, std::uint64_t seed = 0);

}  // namespace rigidswap
