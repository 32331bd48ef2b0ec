#include "rigidswap/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rigidswap/error.hpp"

namespace rigidswap {

namespace {

using Vec3 = std::array<double, 3>;

Vec3 sub(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
double dot3(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

/// Orders a convex face cyclically and counterclockwise seen from outside,
/// for a polytope containing the origin, starting at its smallest vertex.
std::vector<VertexId> outward_cycle(std::vector<VertexId> face, const std::vector<Vec3>& x) {
  Vec3 c{};
  for (VertexId v : face)
    for (int k = 0; k < 3; ++k) c[k] += x[v][k] / static_cast<double>(face.size());
  const Vec3 e1 = sub(x[face[0]], c);
  const Vec3 e2 = cross(c, e1);
  std::sort(face.begin(), face.end(), [&](VertexId a, VertexId b) {
    const Vec3 da = sub(x[a], c);
    const Vec3 db = sub(x[b], c);
    return std::atan2(dot3(da, e2), dot3(da, e1)) < std::atan2(dot3(db, e2), dot3(db, e1));
  });
  std::rotate(face.begin(), std::min_element(face.begin(), face.end()), face.end());
  return face;
}

std::vector<Vec3> affine(const Configuration& config) {
  std::vector<Vec3> x;
  for (const auto& p : config) x.push_back(*affine_coordinates(p));
  return x;
}

Configuration homogeneous(const std::vector<Vec3>& x) {
  Configuration out;
  for (const auto& v : x) out.push_back(affine_point(v[0], v[1], v[2]));
  return out;
}

BlockHolePolyhedron labelled(const SphericalPolyhedron& poly, const std::vector<FaceId>& blocks,
                             const std::vector<FaceId>& holes) {
  return triangulate_surfaces(label_faces(poly, blocks, holes));
}

}  // namespace

Configuration octahedron_configuration() {
  return homogeneous({{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}});
}

SphericalPolyhedron octahedron() {
  const auto x = affine(octahedron_configuration());
  std::vector<std::vector<VertexId>> faces(8);
  for (int f = 0; f < 8; ++f) {
    const VertexId vx = (f & 4) ? 1 : 0;
    const VertexId vy = (f & 2) ? 3 : 2;
    const VertexId vz = (f & 1) ? 5 : 4;
    faces[f] = outward_cycle({vx, vy, vz}, x);
  }
  return SphericalPolyhedron::build(6, std::move(faces));
}

Configuration icosahedron_configuration() {
  const double phi = std::numbers::phi;
  std::vector<Vec3> x;
  for (double a : {1.0, -1.0})
    for (double b : {phi, -phi}) {
      x.push_back({0, a, b});
      x.push_back({a, b, 0});
      x.push_back({b, 0, a});
    }
  return homogeneous(x);
}

SphericalPolyhedron icosahedron() {
  const auto x = affine(icosahedron_configuration());
  auto adjacent = [&](int a, int b) {
    const Vec3 d = sub(x[a], x[b]);
    return std::abs(dot3(d, d) - 4.0) < 1e-9;
  };
  std::vector<std::vector<VertexId>> faces;
  for (int a = 0; a < 12; ++a)
    for (int b = a + 1; b < 12; ++b)
      for (int c = b + 1; c < 12; ++c)
        if (adjacent(a, b) && adjacent(b, c) && adjacent(a, c)) faces.push_back(outward_cycle({a, b, c}, x));
  return SphericalPolyhedron::build(12, std::move(faces));
}

Configuration cube_configuration() {
  std::vector<Vec3> x;
  for (int k = 0; k < 8; ++k) x.push_back({(k & 4) ? -1.0 : 1.0, (k & 2) ? -1.0 : 1.0, (k & 1) ? -1.0 : 1.0});
  return homogeneous(x);
}

SphericalPolyhedron cube() {
  const auto x = affine(cube_configuration());
  std::vector<std::vector<VertexId>> faces;
  for (int axis = 0; axis < 3; ++axis)
    for (double sign : {1.0, -1.0}) {
      std::vector<VertexId> face;
      for (int k = 0; k < 8; ++k)
        if (x[k][axis] == sign) face.push_back(k);
      faces.push_back(outward_cycle(face, x));
    }
  return SphericalPolyhedron::build(8, std::move(faces));
}

Configuration tower_configuration(int s, int t, std::uint64_t seed, double noise) {
  Configuration base;
  for (int i = 0; i < s; ++i) {
    const double angle = 2.0 * std::numbers::pi * i / s;
    base.push_back(affine_point(std::cos(angle), std::sin(angle), 1.0));
  }
  for (int j = 0; j < t; ++j) {
    const double angle = 2.0 * std::numbers::pi * j / t;
    base.push_back(affine_point(std::cos(angle), std::sin(angle), -1.0));
  }
  return perturbed(base, noise, seed);
}

Configuration Fixture::configuration(std::uint64_t seed) const { return perturbed(base, noise, seed); }

std::vector<Fixture> fixture_catalog() {
  std::vector<Fixture> out;
  const auto oct = octahedron();
  const auto cube_poly = cube();
  out.push_back({"oct", "octahedron, all faces surface", labelled(oct, {}, {}), octahedron_configuration(), 0.1});
  out.push_back({"icosahedron", "icosahedron, all faces surface", labelled(icosahedron(), {}, {}),
                 icosahedron_configuration(), 0.1});
  out.push_back({"oct-block-hole", "octahedron with block face 0 and the opposite hole face 7",
                 labelled(oct, {0}, {7}), octahedron_configuration(), 0.1});
  out.push_back({"oct-two-holes", "octahedron with holes 0 and 6 meeting at vertex 4, and triangle block 3",
                 labelled(oct, {3}, {0, 6}), octahedron_configuration(), 0.1});
  out.push_back({"cube-block-hole", "cube with square block +z and opposite square hole -z",
                 labelled(cube_poly, {4}, {5}), cube_configuration(), 0.1});
  out.push_back({"cube-two-blocks", "cube with adjacent square blocks +x and +z", labelled(cube_poly, {0, 4}, {}),
                 cube_configuration(), 0.1});
  for (auto [s, t] : std::vector<std::pair<int, int>>{{4, 3}, {5, 3}, {4, 4}, {3, 4}, {3, 5}}) {
    out.push_back({"tower-" + std::to_string(s) + "-" + std::to_string(t),
                   std::to_string(s) + "-gon block over a " + std::to_string(t) + "-gon hole", tower(s, t),
                   tower_configuration(s, t, 0, 0.0), 0.15});
  }
  return out;
}

const Fixture& fixture(const std::string& name) {
  static const std::vector<Fixture> catalog = fixture_catalog();
  for (const auto& f : catalog)
    if (f.name == name) return f;
  throw Error(ErrorCode::ParseError, "no fixture named " + name);
}

}  // namespace rigidswap
