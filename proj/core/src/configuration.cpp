#include "rigidswap/configuration.hpp"

#include <cmath>
#include <sstream>

#include "rigidswap/error.hpp"
#include "rigidswap/linalg.hpp"
#include "rigidswap/random.hpp"

namespace rigidswap {

std::optional<std::array<double, 3>> affine_coordinates(const Point4& p) {
  if (p[3] == 0.0) return std::nullopt;
  return std::array<double, 3>{p[0] / p[3], p[1] / p[3], p[2] / p[3]};
}

ExactConfiguration to_exact(const Configuration& p) {
  ExactConfiguration out;
  out.reserve(p.size());
  for (const auto& x : p) out.push_back(to_exact(x));
  return out;
}

Configuration to_double(const ExactConfiguration& p) {
  Configuration out;
  out.reserve(p.size());
  for (const auto& x : p) out.push_back(to_double(x));
  return out;
}

Point4 transform(const Eigen::Matrix4d& m, const Point4& p) {
  Eigen::Vector4d v(p[0], p[1], p[2], p[3]);
  Eigen::Vector4d r = m * v;
  return {r(0), r(1), r(2), r(3)};
}

Configuration apply_projective(const Eigen::Matrix4d& m, const Configuration& p) {
  Configuration out;
  out.reserve(p.size());
  for (const auto& x : p) out.push_back(transform(m, x));
  return out;
}

Eigen::Matrix4d random_projective_transform(std::uint64_t seed) {
  for (std::uint64_t attempt = 0;; ++attempt) {
    Rng rng(derive_seed(seed, {kTransformStream, attempt}));
    Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) m(i, j) += rng.uniform(-0.3, 0.3);
    // Keep the plane at infinity away from the unit-scale fixtures.
    m.row(3) *= 0.5;
    m(3, 3) = 1.0;
    if (std::abs(m.determinant()) > 0.2) return m;
  }
}

int projective_rank(const std::vector<Point4>& points, double rel_tol) {
  Eigen::MatrixXd m(points.size(), 4);
  for (std::size_t i = 0; i < points.size(); ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = points[i][j] / std::max(norm(points[i]), 1e-300);
  return numeric_rank(m, rel_tol);
}

bool collinear(const std::vector<Point4>& points, double rel_tol) { return projective_rank(points, rel_tol) <= 2; }

bool coplanar(const std::vector<Point4>& points, double rel_tol) { return projective_rank(points, rel_tol) <= 3; }

Configuration perturbed(const Configuration& base, double amplitude, std::uint64_t seed) {
  Rng rng(derive_seed(seed, {kConfigurationStream}));
  Configuration out;
  out.reserve(base.size());
  for (const auto& p : base) {
    auto a = affine_coordinates(p);
    if (!a) throw Error(ErrorCode::DegenerateConfiguration, "cannot perturb a point at infinity");
    Point4 q{};
    for (int k = 0; k < 3; ++k) q[k] = snap_to_grid((*a)[k] + rng.uniform(-amplitude, amplitude));
    q[3] = 1.0;
    out.push_back(q);
  }
  return out;
}

Configuration random_configuration(int vertex_count, std::uint64_t seed) {
  Rng rng(derive_seed(seed, {kConfigurationStream}));
  Configuration out(vertex_count);
  for (auto& p : out) p = {snap_to_grid(rng.uniform(-1, 1)), snap_to_grid(rng.uniform(-1, 1)),
                           snap_to_grid(rng.uniform(-1, 1)), 1.0};
  return out;
}

std::vector<std::string> general_position_violations(const BlockHolePolyhedron& p, const Configuration& config,
                                                     double rel_tol) {
  std::vector<std::string> out;
  const auto& poly = p.polyhedron();
  if (static_cast<int>(config.size()) < poly.vertex_count()) {
    out.push_back("configuration has fewer points than vertices");
    return out;
  }
  for (const auto& e : poly.edges()) {
    if (projective_rank({config[e.a], config[e.b]}, rel_tol) < 2) {
      std::ostringstream os;
      os << "adjacent vertices " << e.a << " and " << e.b << " coincide";
      out.push_back(os.str());
    }
  }
  for (FaceId f = 0; f < poly.face_count(); ++f) {
    if (p.label(f) == FaceLabel::Surface) continue;
    const auto& cycle = poly.face(f);
    const std::size_t n = cycle.size();
    for (std::size_t k = 0; k < n; ++k) {
      VertexId a = cycle[k], b = cycle[(k + 1) % n], c = cycle[(k + 2) % n];
      if (collinear({config[a], config[b], config[c]}, rel_tol)) {
        std::ostringstream os;
        os << to_string(p.label(f)) << " " << f << ": vertices " << a << ", " << b << ", " << c << " are collinear";
        out.push_back(os.str());
      }
    }
  }
  return out;
}

}  // namespace rigidswap
