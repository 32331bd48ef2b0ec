#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace rigidswap {

using VertexId = int;
using FaceId = int;
using EdgeId = int;

/// Undirected edge with its two incident faces. Faces are stored
/// counterclockwise seen from outside, so face_ab traverses a -> b and lies
/// to the left of that direction.
struct Edge {
  VertexId a = 0;  // a < b
  VertexId b = 0;
  FaceId face_ab = -1;
  FaceId face_ba = -1;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Oriented spherical face complex of a 3-connected planar graph.
///
/// Every instance returned by build() satisfies V - E + F = 2, has each edge
/// in exactly two faces traversed in opposite directions, a single face cycle
/// around every vertex, a simple 3-connected graph, and no two faces sharing
/// more than one edge.
class SphericalPolyhedron {
 public:
  static SphericalPolyhedron build(int vertex_count, std::vector<std::vector<VertexId>> faces);

  int vertex_count() const { return vertex_count_; }
  int face_count() const { return static_cast<int>(faces_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  const std::vector<VertexId>& face(FaceId f) const { return faces_.at(f); }
  const std::vector<std::vector<VertexId>>& faces() const { return faces_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_.at(e); }
  const std::vector<EdgeId>& incident_edges(VertexId v) const { return incident_.at(v); }

  std::optional<EdgeId> find_edge(VertexId a, VertexId b) const;
  /// The face whose cycle contains the directed edge from -> to.
  FaceId face_traversing(VertexId from, VertexId to) const;

  bool face_contains(FaceId f, VertexId v) const;
  VertexId next_in_face(FaceId f, VertexId v) const;
  VertexId prev_in_face(FaceId f, VertexId v) const;

  /// Faces around v in rotational order. Face k traverses v -> n_k and face
  /// k+1 traverses n_k -> v, where n_k = neighbors_around(v)[k].
  std::vector<FaceId> faces_around(VertexId v) const;
  std::vector<VertexId> neighbors_around(VertexId v) const;

  friend bool operator==(const SphericalPolyhedron& x, const SphericalPolyhedron& y) {
    return x.vertex_count_ == y.vertex_count_ && x.faces_ == y.faces_;
  }

 private:
  int vertex_count_ = 0;
  std::vector<std::vector<VertexId>> faces_;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> incident_;
  std::map<std::pair<VertexId, VertexId>, FaceId> directed_;
  std::map<std::pair<VertexId, VertexId>, EdgeId> edge_index_;
};

enum class FaceLabel { Block, Hole, Surface };

const char* to_string(FaceLabel label);

class BlockHolePolyhedron {
 public:
  BlockHolePolyhedron(SphericalPolyhedron polyhedron, std::vector<FaceLabel> labels);

  const SphericalPolyhedron& polyhedron() const { return polyhedron_; }
  const std::vector<FaceLabel>& labels() const { return labels_; }
  FaceLabel label(FaceId f) const { return labels_.at(f); }

  std::vector<FaceId> faces_with(FaceLabel label) const;
  std::vector<FaceId> blocks() const { return faces_with(FaceLabel::Block); }
  std::vector<FaceId> holes() const { return faces_with(FaceLabel::Hole); }
  std::vector<FaceId> surfaces() const { return faces_with(FaceLabel::Surface); }

  /// True when every surface face is a triangle.
  bool surfaces_triangulated() const;

  friend bool operator==(const BlockHolePolyhedron&, const BlockHolePolyhedron&) = default;

 private:
  SphericalPolyhedron polyhedron_;
  std::vector<FaceLabel> labels_;
};

BlockHolePolyhedron label_faces(SphericalPolyhedron polyhedron, const std::vector<FaceId>& block_faces,
                                const std::vector<FaceId>& hole_faces);

/// Fans every non-triangular surface face from its minimum-index vertex.
/// Blocks and holes are untouched; face order is kept, with fan triangles
/// replacing their source face in place.
BlockHolePolyhedron triangulate_surfaces(const BlockHolePolyhedron& p);

/// Blocks become holes and holes become blocks.
BlockHolePolyhedron swapped(const BlockHolePolyhedron& p);

/// Oriented edge tail -> head with the face pair crossed from_face -> to_face
/// by turning the edge direction 90 degrees counterclockwise (seen from outside).
struct EdgePatch {
  VertexId tail = 0;
  VertexId head = 0;
  FaceId from_face = -1;
  FaceId to_face = -1;

  EdgePatch reversed() const { return {head, tail, to_face, from_face}; }
  friend bool operator==(const EdgePatch&, const EdgePatch&) = default;
};

EdgePatch patch_for(const SphericalPolyhedron& p, VertexId tail, VertexId head);
/// Patch of edge e oriented from its smaller to its larger vertex.
EdgePatch canonical_patch(const SphericalPolyhedron& p, EdgeId e);
/// Two patches per undirected edge, canonical first.
std::vector<EdgePatch> edge_patches(const SphericalPolyhedron& p);

struct ContactVertex {
  VertexId vertex = 0;
  std::vector<FaceId> holes;
  std::vector<FaceId> blocks;
};

struct SeparationReport {
  /// At most one hole and at most one block at every vertex.
  bool separated = true;
  /// At most one hole at every vertex (the weaker, holes-only reading).
  bool hole_separated = true;
  /// Vertices on two or more holes or on two or more blocks, ascending.
  std::vector<ContactVertex> contact_vertices;
  /// Vertices on at least one hole and at least one block.
  std::vector<VertexId> mixed_contact;
};

SeparationReport separation_report(const BlockHolePolyhedron& p);

/// One s-gon block (face 0, vertices 0..s-1) and one t-gon hole (face 1,
/// vertices s..s+t-1) joined by a band of s + t surface triangles.
BlockHolePolyhedron tower(int s, int t);

/// Hinge between two rigid faces, oriented by the canonical edge patch
/// (tail < head); bodies are indices into HingeGraph::bodies.
struct Hinge {
  EdgeId edge = 0;
  VertexId tail = 0;
  VertexId head = 0;
  int from_body = 0;
  int to_body = 0;
};

struct HingeGraph {
  std::vector<FaceId> bodies;     // surface triangles and blocks, ascending face id
  std::vector<int> body_of_face;  // -1 for holes
  std::vector<Hinge> hinges;      // ascending edge id
  std::vector<int> component;     // per body
  int component_count = 0;
  bool connected = true;
  /// Vertices whose rigid faces fall into two or more arcs separated by holes;
  /// the body graph does not constrain those faces to share the vertex.
  std::vector<VertexId> split_vertices;

  bool tracks_vertices() const { return connected && split_vertices.empty(); }
};

HingeGraph hinge_graph(const BlockHolePolyhedron& p);

}  // namespace rigidswap
