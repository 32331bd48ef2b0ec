#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rigidswap/configuration.hpp"
#include "rigidswap/polyhedron.hpp"
#include "rigidswap/statics.hpp"

namespace rigidswap {

inline constexpr int kDocumentFormat = 1;

/// On-disk description of a block-and-hole polyhedron:
///
///   {
///     "format": 1,
///     "vertex_count": 6,
///     "coordinates": [[1, 0, 0], [-1, 0, 0, 1], ...],
///     "faces": [[0, 2, 4], ...],
///     "blocks": [0],
///     "holes": [7],
///     "fill": {"0": "chords"},
///     "seed": 7
///   }
///
/// Coordinates, fill and seed are optional; a coordinate with three numbers
/// has w = 1. Faces are 0-based and counterclockwise seen from outside.
struct PolyhedronDocument {
  int format = kDocumentFormat;
  int vertex_count = 0;
  std::optional<Configuration> coordinates;
  std::vector<std::vector<VertexId>> faces;
  std::vector<FaceId> blocks;
  std::vector<FaceId> holes;
  std::map<FaceId, FillStrategy> fill;
  std::optional<std::uint64_t> seed;
};

/// Throws ParseError naming the line or field at fault.
PolyhedronDocument parse_document(const std::string& text);
PolyhedronDocument load_document(const std::filesystem::path& path);

/// Canonical form: sorted keys, two-space indent, arrays of numbers on one
/// line, trailing newline.
std::string serialize_document(const PolyhedronDocument& doc);
void save_document(const PolyhedronDocument& doc, const std::filesystem::path& path);

/// Validated polyhedron; structural errors keep their code with the
/// document context prepended.
BlockHolePolyhedron to_polyhedron(const PolyhedronDocument& doc);

PolyhedronDocument make_document(const BlockHolePolyhedron& p, const std::optional<Configuration>& config = {},
                                 std::optional<std::uint64_t> seed = {});

/// OFF mesh of the non-hole faces; block fills are listed as comments.
std::string export_off(const BlockHolePolyhedron& p, const Configuration& config, const BarFramework* frame = nullptr);

}  // namespace rigidswap
