#include "rigidswap/bodyhinge.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <string>

#include "rigidswap/error.hpp"
#include "rigidswap/random.hpp"

namespace rigidswap {

namespace {

/// Spanning forest: each body's path from its root as (hinge, sign) terms with
/// S(body) = Σ sign · ω_hinge · D_hinge, plus the hinges left out of the forest.
struct Forest {
  std::vector<std::vector<std::pair<int, int>>> path;
  std::vector<int> root_of;
  std::vector<int> off_tree;
};

Forest spanning_forest(const BodyHingeStructure& s, std::optional<std::uint64_t> seed, int preferred_root = -1) {
  const int nb = s.body_count();
  std::vector<std::vector<int>> incident(nb);
  for (int h = 0; h < s.hinge_count(); ++h) {
    incident[s.graph.hinges[h].from_body].push_back(h);
    incident[s.graph.hinges[h].to_body].push_back(h);
  }
  std::vector<int> roots(nb);
  std::iota(roots.begin(), roots.end(), 0);
  std::optional<Rng> rng;
  if (seed) {
    rng.emplace(derive_seed(*seed, {kForestStream}));
    for (int i = nb - 1; i > 0; --i) std::swap(roots[i], roots[rng->below(i + 1)]);
    for (auto& list : incident)
      for (int i = static_cast<int>(list.size()) - 1; i > 0; --i) std::swap(list[i], list[rng->below(i + 1)]);
  }
  if (preferred_root >= 0) {
    roots.erase(std::find(roots.begin(), roots.end(), preferred_root));
    roots.insert(roots.begin(), preferred_root);
  }

  Forest f;
  f.path.assign(nb, {});
  f.root_of.assign(nb, -1);
  std::vector<char> tree_hinge(s.hinge_count(), 0);
  for (int root : roots) {
    if (f.root_of[root] >= 0) continue;
    f.root_of[root] = root;
    std::queue<int> queue;
    queue.push(root);
    while (!queue.empty()) {
      const int x = queue.front();
      queue.pop();
      for (int h : incident[x]) {
        const Hinge& hinge = s.graph.hinges[h];
        const int y = hinge.from_body == x ? hinge.to_body : hinge.from_body;
        if (f.root_of[y] >= 0) continue;
        f.root_of[y] = root;
        tree_hinge[h] = 1;
        f.path[y] = f.path[x];
        // S^from - S^to = ω D
        f.path[y].emplace_back(h, hinge.from_body == x ? -1 : 1);
        queue.push(y);
      }
    }
  }
  for (int h = 0; h < s.hinge_count(); ++h)
    if (!tree_hinge[h]) f.off_tree.push_back(h);
  return f;
}

template <class T, class Ext, class Set>
void write_cycle_rows(const BodyHingeStructure& s, const Forest& f, const std::vector<Ext>& d, Set set) {
  int row = 0;
  for (int h : f.off_tree) {
    const Hinge& hinge = s.graph.hinges[h];
    for (auto [g, sign] : f.path[hinge.from_body])
      for (int k = 0; k < 6; ++k) set(row + k, g, T(sign) * d[g][k]);
    for (auto [g, sign] : f.path[hinge.to_body])
      for (int k = 0; k < 6; ++k) set(row + k, g, T(-sign) * d[g][k]);
    for (int k = 0; k < 6; ++k) set(row + k, h, T(-1) * d[h][k]);
    row += 6;
  }
}

}  // namespace

BodyHingeStructure build_body_hinge(const BlockHolePolyhedron& p, const Configuration& config) {
  if (static_cast<int>(config.size()) != p.polyhedron().vertex_count())
    throw Error(ErrorCode::MissingConfiguration, "configuration size does not match the vertex count");
  BodyHingeStructure s{p, config, hinge_graph(p), {}, {}};
  s.hinge_of_edge.assign(p.polyhedron().edge_count(), -1);
  for (int h = 0; h < s.hinge_count(); ++h) {
    const Hinge& hinge = s.graph.hinges[h];
    s.extensors.push_back(join(config[hinge.tail], config[hinge.head]));
    s.hinge_of_edge[hinge.edge] = h;
  }
  return s;
}

Eigen::MatrixXd cycle_condition_matrix(const BodyHingeStructure& s, std::optional<std::uint64_t> forest_seed) {
  const Forest f = spanning_forest(s, forest_seed);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(6 * static_cast<Eigen::Index>(f.off_tree.size()), s.hinge_count());
  write_cycle_rows<double>(s, f, s.extensors, [&](int r, int c, double v) { m(r, c) += v; });
  return m;
}

ExactMatrix cycle_condition_matrix_exact(const BodyHingeStructure& s) {
  const Forest f = spanning_forest(s, std::nullopt);
  std::vector<ExactExtensor2> d;
  for (const Hinge& h : s.graph.hinges) d.push_back(join(to_exact(s.positions[h.tail]), to_exact(s.positions[h.head])));
  ExactMatrix m(6 * f.off_tree.size(), std::vector<mpq_class>(s.hinge_count()));
  write_cycle_rows<mpq_class>(s, f, d, [&](int r, int c, const mpq_class& v) { m[r][c] += v; });
  return m;
}

Eigen::MatrixXd motion_basis(const BodyHingeStructure& s, double rel_tol, std::optional<std::uint64_t> forest_seed) {
  if (s.hinge_count() == 0) return Eigen::MatrixXd(0, 0);
  return null_space(cycle_condition_matrix(s, forest_seed), rel_tol);
}

int motion_dim(const BodyHingeStructure& s, double rel_tol, std::optional<std::uint64_t> forest_seed) {
  if (s.hinge_count() == 0) return 0;
  return s.hinge_count() - numeric_rank(cycle_condition_matrix(s, forest_seed), rel_tol);
}

int motion_dim_exact(const BodyHingeStructure& s) {
  if (s.hinge_count() == 0) return 0;
  return s.hinge_count() - exact_rank(cycle_condition_matrix_exact(s));
}

int motion_dim_via_screws(const BodyHingeStructure& s, double rel_tol) {
  const int nb = s.body_count();
  const int nh = s.hinge_count();
  if (nh == 0) return 0;
  std::vector<int> root(s.graph.component_count, -1);
  for (int b = 0; b < nb; ++b)
    if (root[s.graph.component[b]] < 0) root[s.graph.component[b]] = b;
  std::vector<int> column(nb, -1);
  int cols = 0;
  for (int b = 0; b < nb; ++b)
    if (root[s.graph.component[b]] != b) column[b] = 6 * cols++;
  const int screw_cols = 6 * cols;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(6 * nh, screw_cols + nh);
  for (int h = 0; h < nh; ++h) {
    const Hinge& hinge = s.graph.hinges[h];
    for (int k = 0; k < 6; ++k) {
      if (column[hinge.from_body] >= 0) m(6 * h + k, column[hinge.from_body] + k) += 1.0;
      if (column[hinge.to_body] >= 0) m(6 * h + k, column[hinge.to_body] + k) -= 1.0;
      m(6 * h + k, screw_cols + h) = -s.extensors[h][k];
    }
  }
  return static_cast<int>(m.cols()) - numeric_rank(m, rel_tol);
}

std::vector<Extensor2> screws_from_motion(const BodyHingeStructure& s, const MotionAssignment& omega, int root_body,
                                          double rel_tol) {
  if (omega.size() != s.hinge_count())
    throw Error(ErrorCode::InconsistentAssignment, "assignment has the wrong number of hinges");
  if (s.body_count() == 0) return {};
  if (root_body < 0 || root_body >= s.body_count())
    throw Error(ErrorCode::InconsistentAssignment, "root body out of range");
  // Components other than the root's start at their lowest body.
  const Forest f = spanning_forest(s, std::nullopt, root_body);
  std::vector<Extensor2> screws(s.body_count());
  for (int b = 0; b < s.body_count(); ++b)
    for (auto [h, sign] : f.path[b]) screws[b] += (sign * omega(h)) * s.extensors[h];

  double scale = 0.0;
  for (int h = 0; h < s.hinge_count(); ++h) scale = std::max(scale, std::abs(omega(h)) * norm(s.extensors[h]));
  for (int h : f.off_tree) {
    const Hinge& hinge = s.graph.hinges[h];
    const Extensor2 r = screws[hinge.from_body] - screws[hinge.to_body] - omega(h) * s.extensors[h];
    if (norm(r) > rel_tol * std::max(scale, 1e-300) && norm(r) > 0.0)
      throw Error(ErrorCode::InconsistentAssignment,
                  "hinge on edge " + std::to_string(hinge.edge) + " violates its cycle condition");
  }
  return screws;
}

Extensor2 cycle_residual(const BodyHingeStructure& s, const MotionAssignment& omega,
                         const std::vector<CycleStep>& cycle) {
  if (cycle.empty()) throw Error(ErrorCode::NotACycle, "empty cycle");
  auto ends = [&](const CycleStep& step) {
    if (step.hinge < 0 || step.hinge >= s.hinge_count()) throw Error(ErrorCode::NotACycle, "hinge out of range");
    const Hinge& h = s.graph.hinges[step.hinge];
    return step.forward ? std::pair{h.from_body, h.to_body} : std::pair{h.to_body, h.from_body};
  };
  Extensor2 sum;
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    const auto [from, to] = ends(cycle[i]);
    const auto next = ends(cycle[(i + 1) % cycle.size()]);
    if (to != next.first) throw Error(ErrorCode::NotACycle, "steps do not chain at position " + std::to_string(i));
    (void)from;
    const double w = omega(cycle[i].hinge);
    sum += (cycle[i].forward ? w : -w) * s.extensors[cycle[i].hinge];
  }
  return sum;
}

double max_cycle_residual(const BodyHingeStructure& s, const MotionAssignment& omega) {
  if (s.hinge_count() == 0) return 0.0;
  const Eigen::VectorXd r = cycle_condition_matrix(s) * omega;
  double worst = 0.0;
  for (Eigen::Index i = 0; i + 6 <= r.size(); i += 6) worst = std::max(worst, r.segment(i, 6).norm());
  return worst;
}

std::vector<CycleStep> cycle_through_faces(const BodyHingeStructure& s, const std::vector<FaceId>& faces) {
  const auto& poly = s.polyhedron.polyhedron();
  if (faces.size() < 2) throw Error(ErrorCode::NotACycle, "a cycle needs at least two faces");
  std::vector<CycleStep> steps;
  for (std::size_t i = 0; i < faces.size(); ++i) {
    const FaceId x = faces[i];
    const FaceId y = faces[(i + 1) % faces.size()];
    const int bx = s.graph.body_of_face.at(x);
    const int by = s.graph.body_of_face.at(y);
    if (bx < 0 || by < 0) throw Error(ErrorCode::NotACycle, "cycle passes through a hole");
    const auto& fx = poly.face(x);
    int hinge = -1;
    for (std::size_t k = 0; k < fx.size() && hinge < 0; ++k) {
      const VertexId a = fx[k];
      const VertexId b = fx[(k + 1) % fx.size()];
      if (poly.face_traversing(b, a) == y) hinge = s.hinge_of_edge[*poly.find_edge(a, b)];
    }
    if (hinge < 0)
      throw Error(ErrorCode::NotACycle, "faces " + std::to_string(x) + " and " + std::to_string(y) + " share no hinge");
    steps.push_back({hinge, s.graph.hinges[hinge].from_body == bx});
  }
  return steps;
}

std::vector<CycleStep> vertex_cycle(const BodyHingeStructure& s, VertexId v) {
  return cycle_through_faces(s, s.polyhedron.polyhedron().faces_around(v));
}

std::vector<CycleStep> hole_cycle(const BodyHingeStructure& s, FaceId hole) {
  const auto& poly = s.polyhedron.polyhedron();
  if (s.polyhedron.label(hole) != FaceLabel::Hole)
    throw Error(ErrorCode::NotACycle, "face " + std::to_string(hole) + " is not a hole");
  const auto& boundary = poly.face(hole);
  std::vector<FaceId> ring;
  for (int i = static_cast<int>(boundary.size()) - 1; i >= 0; --i) {
    const auto around = poly.faces_around(boundary[i]);
    const auto at = std::find(around.begin(), around.end(), hole) - around.begin();
    for (std::size_t k = 1; k < around.size(); ++k) {
      const FaceId f = around[(at + k) % around.size()];
      if (s.polyhedron.label(f) == FaceLabel::Hole) throw Error(ErrorCode::NotACycle, "ring meets another hole");
      if (ring.empty() || ring.back() != f) ring.push_back(f);
    }
  }
  while (ring.size() > 1 && ring.front() == ring.back()) ring.pop_back();
  return cycle_through_faces(s, ring);
}

}  // namespace rigidswap
