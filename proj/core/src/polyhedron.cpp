#include "rigidswap/polyhedron.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>
#include <string>

#include "rigidswap/error.hpp"

namespace rigidswap {

namespace {

std::string edge_name(VertexId a, VertexId b) {
  std::ostringstream os;
  os << "{" << a << "," << b << "}";
  return os.str();
}

std::size_t index_in_face(const std::vector<VertexId>& face, VertexId v) {
  auto it = std::find(face.begin(), face.end(), v);
  if (it == face.end()) throw Error(ErrorCode::InvalidFace, "vertex " + std::to_string(v) + " not on face");
  return static_cast<std::size_t>(it - face.begin());
}

/// Connectivity of the graph after deleting up to two vertices.
bool connected_without(int n, const std::vector<std::vector<VertexId>>& adj, VertexId skip_a, VertexId skip_b) {
  std::vector<char> seen(n, 0);
  int start = -1;
  int expected = 0;
  for (int v = 0; v < n; ++v) {
    if (v == skip_a || v == skip_b) continue;
    ++expected;
    if (start < 0) start = v;
  }
  if (expected == 0) return true;
  std::vector<VertexId> stack{start};
  seen[start] = 1;
  int reached = 1;
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    for (VertexId w : adj[v]) {
      if (w == skip_a || w == skip_b || seen[w]) continue;
      seen[w] = 1;
      ++reached;
      stack.push_back(w);
    }
  }
  return reached == expected;
}

}  // namespace

SphericalPolyhedron SphericalPolyhedron::build(int vertex_count, std::vector<std::vector<VertexId>> faces) {
  if (vertex_count <= 0) throw Error(ErrorCode::InvalidFace, "vertex count must be positive");

  SphericalPolyhedron p;
  p.vertex_count_ = vertex_count;

  for (std::size_t f = 0; f < faces.size(); ++f) {
    const auto& cycle = faces[f];
    if (cycle.size() < 3)
      throw Error(ErrorCode::InvalidFace, "face " + std::to_string(f) + " has fewer than 3 vertices");
    std::set<VertexId> distinct(cycle.begin(), cycle.end());
    if (distinct.size() != cycle.size())
      throw Error(ErrorCode::InvalidFace, "face " + std::to_string(f) + " repeats a vertex");
    for (VertexId v : cycle)
      if (v < 0 || v >= vertex_count)
        throw Error(ErrorCode::InvalidFace,
                    "face " + std::to_string(f) + " references vertex " + std::to_string(v) + " out of range");
  }

  // Count face incidences per undirected edge before looking at direction.
  std::map<std::pair<VertexId, VertexId>, std::vector<std::pair<FaceId, bool>>> uses;
  for (std::size_t f = 0; f < faces.size(); ++f) {
    const auto& cycle = faces[f];
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      VertexId from = cycle[k];
      VertexId to = cycle[(k + 1) % cycle.size()];
      uses[{std::min(from, to), std::max(from, to)}].push_back({static_cast<FaceId>(f), from < to});
    }
  }
  for (const auto& [key, list] : uses) {
    if (list.size() != 2)
      throw Error(ErrorCode::NonManifoldEdge, "edge " + edge_name(key.first, key.second) + " lies in " +
                                                  std::to_string(list.size()) + " faces");
    if (list[0].second == list[1].second)
      throw Error(ErrorCode::OrientationMismatch, "faces " + std::to_string(list[0].first) + " and " +
                                                      std::to_string(list[1].first) + " traverse edge " +
                                                      edge_name(key.first, key.second) + " in the same direction");
  }

  p.faces_ = std::move(faces);
  p.incident_.assign(vertex_count, {});
  for (const auto& [key, list] : uses) {
    Edge e;
    e.a = key.first;
    e.b = key.second;
    for (const auto& [f, forward] : list) (forward ? e.face_ab : e.face_ba) = f;
    const auto id = static_cast<EdgeId>(p.edges_.size());
    p.edge_index_[key] = id;
    p.directed_[{e.a, e.b}] = e.face_ab;
    p.directed_[{e.b, e.a}] = e.face_ba;
    p.incident_[e.a].push_back(id);
    p.incident_[e.b].push_back(id);
    p.edges_.push_back(e);
  }

  const int v = vertex_count;
  const int e = p.edge_count();
  const int f = p.face_count();
  if (v - e + f != 2)
    throw Error(ErrorCode::EulerViolation, "V - E + F = " + std::to_string(v - e + f) + " (V=" + std::to_string(v) +
                                               ", E=" + std::to_string(e) + ", F=" + std::to_string(f) + ")");

  std::vector<std::vector<VertexId>> adj(v);
  for (const auto& edge : p.edges_) {
    adj[edge.a].push_back(edge.b);
    adj[edge.b].push_back(edge.a);
  }
  if (v < 4) throw Error(ErrorCode::NotThreeConnected, "fewer than 4 vertices");
  for (int a = 0; a < v; ++a) {
    if (adj[a].empty()) throw Error(ErrorCode::NotThreeConnected, "vertex " + std::to_string(a) + " is isolated");
    if (!connected_without(v, adj, a, -1))
      throw Error(ErrorCode::NotThreeConnected, "vertex " + std::to_string(a) + " is a cut vertex");
    for (int b = a + 1; b < v; ++b)
      if (!connected_without(v, adj, a, b))
        throw Error(ErrorCode::NotThreeConnected,
                    "removing vertices " + std::to_string(a) + " and " + std::to_string(b) + " disconnects the graph");
  }

  for (VertexId x = 0; x < v; ++x) {
    std::size_t on_vertex = 0;
    for (const auto& cycle : p.faces_) on_vertex += std::count(cycle.begin(), cycle.end(), x);
    if (p.faces_around(x).size() != on_vertex)
      throw Error(ErrorCode::NonManifoldVertex, "faces around vertex " + std::to_string(x) + " form several cycles");
  }

  std::map<std::pair<FaceId, FaceId>, int> shared;
  for (const auto& edge : p.edges_) {
    auto key = std::minmax(edge.face_ab, edge.face_ba);
    if (++shared[{key.first, key.second}] > 1)
      throw Error(ErrorCode::DuplicateEdgeInFacePair,
                  "faces " + std::to_string(key.first) + " and " + std::to_string(key.second) + " share several edges");
  }
  return p;
}

std::optional<EdgeId> SphericalPolyhedron::find_edge(VertexId a, VertexId b) const {
  auto it = edge_index_.find({std::min(a, b), std::max(a, b)});
  if (it == edge_index_.end()) return std::nullopt;
  return it->second;
}

FaceId SphericalPolyhedron::face_traversing(VertexId from, VertexId to) const {
  auto it = directed_.find({from, to});
  if (it == directed_.end()) throw Error(ErrorCode::InvalidFace, "no edge " + edge_name(from, to));
  return it->second;
}

bool SphericalPolyhedron::face_contains(FaceId f, VertexId v) const {
  const auto& cycle = faces_.at(f);
  return std::find(cycle.begin(), cycle.end(), v) != cycle.end();
}

VertexId SphericalPolyhedron::next_in_face(FaceId f, VertexId v) const {
  const auto& cycle = faces_.at(f);
  return cycle[(index_in_face(cycle, v) + 1) % cycle.size()];
}

VertexId SphericalPolyhedron::prev_in_face(FaceId f, VertexId v) const {
  const auto& cycle = faces_.at(f);
  return cycle[(index_in_face(cycle, v) + cycle.size() - 1) % cycle.size()];
}

std::vector<FaceId> SphericalPolyhedron::faces_around(VertexId v) const {
  std::vector<FaceId> out;
  FaceId start = -1;
  for (FaceId f = 0; f < face_count() && start < 0; ++f)
    if (face_contains(f, v)) start = f;
  if (start < 0) return out;
  FaceId f = start;
  do {
    out.push_back(f);
    f = face_traversing(next_in_face(f, v), v);
  } while (f != start && out.size() <= faces_.size());
  return out;
}

std::vector<VertexId> SphericalPolyhedron::neighbors_around(VertexId v) const {
  std::vector<VertexId> out;
  for (FaceId f : faces_around(v)) out.push_back(next_in_face(f, v));
  return out;
}

const char* to_string(FaceLabel label) {
  switch (label) {
    case FaceLabel::Block: return "block";
    case FaceLabel::Hole: return "hole";
    case FaceLabel::Surface: return "surface";
  }
  return "?";
}

BlockHolePolyhedron::BlockHolePolyhedron(SphericalPolyhedron polyhedron, std::vector<FaceLabel> labels)
    : polyhedron_(std::move(polyhedron)), labels_(std::move(labels)) {
  if (static_cast<int>(labels_.size()) != polyhedron_.face_count())
    throw Error(ErrorCode::UnknownFace, "label count does not match face count");
}

std::vector<FaceId> BlockHolePolyhedron::faces_with(FaceLabel label) const {
  std::vector<FaceId> out;
  for (FaceId f = 0; f < static_cast<FaceId>(labels_.size()); ++f)
    if (labels_[f] == label) out.push_back(f);
  return out;
}

bool BlockHolePolyhedron::surfaces_triangulated() const {
  for (FaceId f = 0; f < static_cast<FaceId>(labels_.size()); ++f)
    if (labels_[f] == FaceLabel::Surface && polyhedron_.face(f).size() != 3) return false;
  return true;
}

BlockHolePolyhedron label_faces(SphericalPolyhedron polyhedron, const std::vector<FaceId>& block_faces,
                                const std::vector<FaceId>& hole_faces) {
  std::vector<FaceLabel> labels(polyhedron.face_count(), FaceLabel::Surface);
  auto check = [&](FaceId f) {
    if (f < 0 || f >= polyhedron.face_count()) throw Error(ErrorCode::UnknownFace, "face " + std::to_string(f));
  };
  for (FaceId f : block_faces) {
    check(f);
    labels[f] = FaceLabel::Block;
  }
  for (FaceId f : hole_faces) {
    check(f);
    if (labels[f] == FaceLabel::Block)
      throw Error(ErrorCode::OverlappingLabels, "face " + std::to_string(f) + " is both block and hole");
    labels[f] = FaceLabel::Hole;
  }
  return BlockHolePolyhedron(std::move(polyhedron), std::move(labels));
}

BlockHolePolyhedron triangulate_surfaces(const BlockHolePolyhedron& p) {
  if (p.surfaces_triangulated()) return p;
  const auto& poly = p.polyhedron();
  std::set<std::pair<VertexId, VertexId>> existing;
  for (const auto& e : poly.edges()) existing.insert({e.a, e.b});

  std::vector<std::vector<VertexId>> faces;
  std::vector<FaceLabel> labels;
  for (FaceId f = 0; f < poly.face_count(); ++f) {
    const auto& cycle = poly.face(f);
    if (p.label(f) != FaceLabel::Surface || cycle.size() == 3) {
      faces.push_back(cycle);
      labels.push_back(p.label(f));
      continue;
    }
    std::vector<VertexId> rotated = cycle;
    std::rotate(rotated.begin(), std::min_element(rotated.begin(), rotated.end()), rotated.end());
    for (std::size_t k = 2; k + 1 < rotated.size(); ++k) {
      auto chord = std::minmax(rotated[0], rotated[k]);
      if (!existing.insert({chord.first, chord.second}).second)
        throw Error(ErrorCode::ChordAlreadyEdge,
                    "fan chord " + edge_name(chord.first, chord.second) + " of face " + std::to_string(f) +
                        " is already an edge");
    }
    for (std::size_t k = 1; k + 1 < rotated.size(); ++k) {
      faces.push_back({rotated[0], rotated[k], rotated[k + 1]});
      labels.push_back(FaceLabel::Surface);
    }
  }
  return BlockHolePolyhedron(SphericalPolyhedron::build(poly.vertex_count(), std::move(faces)), std::move(labels));
}

BlockHolePolyhedron swapped(const BlockHolePolyhedron& p) {
  std::vector<FaceLabel> labels = p.labels();
  for (auto& l : labels) {
    if (l == FaceLabel::Block)
      l = FaceLabel::Hole;
    else if (l == FaceLabel::Hole)
      l = FaceLabel::Block;
  }
  return BlockHolePolyhedron(p.polyhedron(), std::move(labels));
}

EdgePatch patch_for(const SphericalPolyhedron& p, VertexId tail, VertexId head) {
  return {tail, head, p.face_traversing(head, tail), p.face_traversing(tail, head)};
}

EdgePatch canonical_patch(const SphericalPolyhedron& p, EdgeId e) {
  const Edge& edge = p.edge(e);
  return {edge.a, edge.b, edge.face_ba, edge.face_ab};
}

std::vector<EdgePatch> edge_patches(const SphericalPolyhedron& p) {
  std::vector<EdgePatch> out;
  out.reserve(2 * p.edges().size());
  for (EdgeId e = 0; e < p.edge_count(); ++e) {
    EdgePatch patch = canonical_patch(p, e);
    out.push_back(patch);
    out.push_back(patch.reversed());
  }
  return out;
}

SeparationReport separation_report(const BlockHolePolyhedron& p) {
  const auto& poly = p.polyhedron();
  std::vector<ContactVertex> per_vertex(poly.vertex_count());
  for (VertexId v = 0; v < poly.vertex_count(); ++v) per_vertex[v].vertex = v;
  for (FaceId f = 0; f < poly.face_count(); ++f) {
    for (VertexId v : poly.face(f)) {
      if (p.label(f) == FaceLabel::Hole) per_vertex[v].holes.push_back(f);
      if (p.label(f) == FaceLabel::Block) per_vertex[v].blocks.push_back(f);
    }
  }
  SeparationReport report;
  for (const auto& cv : per_vertex) {
    if (cv.holes.size() >= 2) report.hole_separated = false;
    if (cv.holes.size() >= 2 || cv.blocks.size() >= 2) {
      report.separated = false;
      report.contact_vertices.push_back(cv);
    }
    if (!cv.holes.empty() && !cv.blocks.empty()) report.mixed_contact.push_back(cv.vertex);
  }
  return report;
}

BlockHolePolyhedron tower(int s, int t) {
  if (s < 3 || t < 3) throw Error(ErrorCode::InvalidFace, "tower needs s, t >= 3");
  auto top = [s](int i) { return i % s; };
  auto bottom = [s, t](int j) { return s + j % t; };

  std::vector<std::vector<VertexId>> faces;
  std::vector<VertexId> block(s);
  std::iota(block.begin(), block.end(), 0);
  std::vector<VertexId> hole;
  for (int j = t - 1; j >= 0; --j) hole.push_back(bottom(j));
  faces.push_back(block);
  faces.push_back(hole);

  // Merge walk: advance the cycle with the smaller consumed fraction (a/s vs b/t),
  // the top cycle on ties.
  int a = 0;
  int b = 0;
  while (a < s || b < t) {
    const bool advance_top = b >= t || (a < s && static_cast<long>(a) * t <= static_cast<long>(b) * s);
    if (advance_top) {
      faces.push_back({top(a + 1), top(a), bottom(b)});
      ++a;
    } else {
      faces.push_back({bottom(b), bottom(b + 1), top(a)});
      ++b;
    }
  }
  std::vector<FaceLabel> labels(faces.size(), FaceLabel::Surface);
  labels[0] = FaceLabel::Block;
  labels[1] = FaceLabel::Hole;
  return BlockHolePolyhedron(SphericalPolyhedron::build(s + t, std::move(faces)), std::move(labels));
}

HingeGraph hinge_graph(const BlockHolePolyhedron& p) {
  if (!p.surfaces_triangulated()) throw Error(ErrorCode::NotTriangulated, "surface faces must be triangles");
  const auto& poly = p.polyhedron();
  HingeGraph g;
  g.body_of_face.assign(poly.face_count(), -1);
  for (FaceId f = 0; f < poly.face_count(); ++f) {
    if (p.label(f) == FaceLabel::Hole) continue;
    g.body_of_face[f] = static_cast<int>(g.bodies.size());
    g.bodies.push_back(f);
  }
  std::vector<std::vector<int>> adj(g.bodies.size());
  for (EdgeId e = 0; e < poly.edge_count(); ++e) {
    const EdgePatch patch = canonical_patch(poly, e);
    const int from = g.body_of_face[patch.from_face];
    const int to = g.body_of_face[patch.to_face];
    if (from < 0 || to < 0) continue;
    g.hinges.push_back({e, patch.tail, patch.head, from, to});
    adj[from].push_back(to);
    adj[to].push_back(from);
  }

  g.component.assign(g.bodies.size(), -1);
  for (std::size_t root = 0; root < g.bodies.size(); ++root) {
    if (g.component[root] >= 0) continue;
    std::queue<int> queue;
    queue.push(static_cast<int>(root));
    g.component[root] = g.component_count;
    while (!queue.empty()) {
      int x = queue.front();
      queue.pop();
      for (int y : adj[x])
        if (g.component[y] < 0) {
          g.component[y] = g.component_count;
          queue.push(y);
        }
    }
    ++g.component_count;
  }
  g.connected = g.component_count <= 1;

  for (VertexId v = 0; v < poly.vertex_count(); ++v) {
    const auto around = poly.faces_around(v);
    int arcs = 0;
    for (std::size_t k = 0; k < around.size(); ++k) {
      const bool hole_here = p.label(around[k]) == FaceLabel::Hole;
      const bool hole_next = p.label(around[(k + 1) % around.size()]) == FaceLabel::Hole;
      if (hole_here && !hole_next) ++arcs;
    }
    if (arcs >= 2) g.split_vertices.push_back(v);
  }
  return g;
}

}  // namespace rigidswap
