#include "rigidswap/gusset.hpp"

#include <algorithm>
#include <string>

#include "rigidswap/error.hpp"
#include "rigidswap/random.hpp"
#include "rigidswap/statics.hpp"

namespace rigidswap {

namespace {

constexpr int kGussetAttempts = 8;

std::array<double, 3> affine_or_throw(const Point4& p) {
  auto a = affine_coordinates(p);
  if (!a) throw Error(ErrorCode::DegenerateConfiguration, "gusset near a point at infinity");
  return *a;
}

Point4 sample_position(const Configuration& config, const std::vector<VertexId>& face, VertexId u,
                       std::uint64_t seed) {
  const auto pu = affine_or_throw(config[u]);
  std::array<double, 3> c{};
  for (VertexId v : face) {
    const auto a = affine_or_throw(config[v]);
    for (int k = 0; k < 3; ++k) c[k] += a[k] / static_cast<double>(face.size());
  }
  double reach = 0.0;
  for (int k = 0; k < 3; ++k) reach += (c[k] - pu[k]) * (c[k] - pu[k]);
  reach = std::sqrt(reach);
  Rng rng(seed);
  const double t = rng.uniform(0.2, 0.5);
  Point4 q{0, 0, 0, 1};
  for (int k = 0; k < 3; ++k) q[k] = snap_to_grid(pu[k] + t * (c[k] - pu[k]) + 0.25 * reach * rng.uniform(-1, 1));
  return q;
}

bool acceptable(const Configuration& config, const std::vector<VertexId>& new_face, FaceId face, VertexId prev,
                VertexId u, VertexId next, VertexId v_new, std::uint64_t seed) {
  if (coplanar({config[prev], config[u], config[next], config[v_new]})) return false;
  const std::size_t n = new_face.size();
  for (std::size_t i = 0; i < n; ++i)
    if (collinear({config[new_face[i]], config[new_face[(i + 1) % n]], config[new_face[(i + 2) % n]]}))
      return false;
  try {
    FillOptions options;
    options.seed = seed;
    make_fill(face, new_face, config, FillStrategy::Auto, options);
  } catch (const Error&) {
    return false;
  }
  return true;
}

GussetResult gusset(const BlockHolePolyhedron& p, const Configuration& config, VertexId u, FaceId face,
                    GussetKind kind, std::uint64_t seed) {
  const auto& poly = p.polyhedron();
  const FaceLabel want = kind == GussetKind::Hole ? FaceLabel::Hole : FaceLabel::Block;
  const ErrorCode wrong_face = kind == GussetKind::Hole ? ErrorCode::NotOnHole : ErrorCode::NotOnBlock;
  if (face < 0 || face >= poly.face_count() || p.label(face) != want || !poly.face_contains(face, u))
    throw Error(wrong_face, "vertex " + std::to_string(u) + " is not on " + to_string(want) + " " +
                                std::to_string(face));
  if (static_cast<int>(config.size()) != poly.vertex_count())
    throw Error(ErrorCode::MissingConfiguration, "configuration size does not match the vertex count");

  const VertexId v_new = poly.vertex_count();
  const VertexId prev = poly.prev_in_face(face, u);
  const VertexId next = poly.next_in_face(face, u);
  auto faces = poly.faces();
  std::replace(faces[face].begin(), faces[face].end(), u, v_new);
  const FaceId first_new = static_cast<FaceId>(faces.size());
  faces.push_back({prev, u, v_new});
  faces.push_back({v_new, u, next});
  auto labels = p.labels();
  labels.push_back(FaceLabel::Surface);
  labels.push_back(FaceLabel::Surface);

  Configuration extended = config;
  extended.push_back({});
  for (int attempt = 0; attempt < kGussetAttempts; ++attempt) {
    extended.back() = sample_position(
        config, poly.face(face), u,
        derive_seed(seed, {kGussetStream, static_cast<std::uint64_t>(u), static_cast<std::uint64_t>(face),
                           static_cast<std::uint64_t>(attempt)}));
    if (!acceptable(extended, faces[face], face, prev, u, next, v_new, seed)) continue;
    BlockHolePolyhedron out(SphericalPolyhedron::build(v_new + 1, std::move(faces)), std::move(labels));
    GussetRecord record{kind, u, face, prev, next, v_new, extended.back(), first_new, attempt + 1};
    return {std::move(out), std::move(extended), {record}};
  }
  throw Error(kind == GussetKind::Hole ? ErrorCode::CoplanarAfterRetries : ErrorCode::NoGeneralPositionFound,
              "no position for the gusset at vertex " + std::to_string(u) + " on face " + std::to_string(face));
}

}  // namespace

const char* to_string(GussetKind kind) { return kind == GussetKind::Hole ? "hole" : "block"; }

GussetResult hole_gusset(const BlockHolePolyhedron& p, const Configuration& config, VertexId u, FaceId hole,
                         std::uint64_t seed) {
  return gusset(p, config, u, hole, GussetKind::Hole, seed);
}

GussetResult block_gusset(const BlockHolePolyhedron& p, const Configuration& config, VertexId u, FaceId block,
                          std::uint64_t seed) {
  return gusset(p, config, u, block, GussetKind::Block, seed);
}

GussetResult separate(const BlockHolePolyhedron& p, const Configuration& config, std::uint64_t seed) {
  GussetResult state{p, config, {}};
  for (const ContactVertex& contact : separation_report(p).contact_vertices) {
    std::vector<FaceId> todo;
    if (contact.holes.size() > 1) todo.insert(todo.end(), contact.holes.begin(), contact.holes.end() - 1);
    if (contact.blocks.size() > 1) todo.insert(todo.end(), contact.blocks.begin(), contact.blocks.end() - 1);
    std::sort(todo.begin(), todo.end());
    for (FaceId f : todo) {
      const GussetKind kind = state.polyhedron.label(f) == FaceLabel::Hole ? GussetKind::Hole : GussetKind::Block;
      GussetResult step = gusset(state.polyhedron, state.config, contact.vertex, f, kind, seed);
      state.polyhedron = std::move(step.polyhedron);
      state.config = std::move(step.config);
      state.log.push_back(step.log.front());
    }
  }
  return state;
}

}  // namespace rigidswap
