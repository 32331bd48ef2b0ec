#include "rigidswap/statics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>
#include <string>

#include "rigidswap/error.hpp"
#include "rigidswap/random.hpp"

namespace rigidswap {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

Configuration fill_positions(const BlockFill& fill, const Configuration& config) {
  Configuration local;
  local.reserve(fill.vertex_count());
  for (VertexId v : fill.boundary) local.push_back(config.at(v));
  for (const auto& q : fill.added_positions) local.push_back(q);
  return local;
}

std::vector<std::pair<int, int>> fill_local_bars(const BlockFill& fill) {
  const int n = static_cast<int>(fill.boundary.size());
  std::vector<std::pair<int, int>> bars;
  for (int i = 0; i < n; ++i) bars.emplace_back(i, (i + 1) % n);
  bars.insert(bars.end(), fill.added_edges.begin(), fill.added_edges.end());
  return bars;
}

std::vector<std::pair<int, int>> double_fan(int n) {
  std::vector<std::pair<int, int>> chords;
  for (int k = 2; k <= n - 2; ++k) chords.emplace_back(0, k);
  for (int k = 3; k <= n - 1; ++k) chords.emplace_back(1, k);
  return chords;
}

int min_local_vertex(const std::vector<VertexId>& boundary) {
  return static_cast<int>(std::min_element(boundary.begin(), boundary.end()) - boundary.begin());
}

std::optional<Point4> apex_candidate(const Configuration& corners, std::uint64_t seed) {
  std::array<double, 3> centroid{};
  std::vector<std::array<double, 3>> affine;
  for (const auto& q : corners) {
    auto a = affine_coordinates(q);
    if (!a) return std::nullopt;
    affine.push_back(*a);
    for (int k = 0; k < 3; ++k) centroid[k] += (*a)[k] / static_cast<double>(corners.size());
  }
  double radius = 0.0;
  for (const auto& a : affine) {
    double d2 = 0.0;
    for (int k = 0; k < 3; ++k) d2 += (a[k] - centroid[k]) * (a[k] - centroid[k]);
    radius = std::max(radius, std::sqrt(d2));
  }
  Rng rng(seed);
  Point4 apex{0, 0, 0, 1};
  for (int k = 0; k < 3; ++k) apex[k] = snap_to_grid(centroid[k] + radius * rng.uniform(-1.0, 1.0));
  return apex;
}

}  // namespace

const char* to_string(FillStrategy s) {
  switch (s) {
    case FillStrategy::Auto: return "auto";
    case FillStrategy::Chords: return "chords";
    case FillStrategy::ConeOverFan: return "cone";
  }
  return "?";
}

std::optional<FillStrategy> parse_fill_strategy(const std::string& name) {
  if (name == "auto") return FillStrategy::Auto;
  if (name == "chords") return FillStrategy::Chords;
  if (name == "cone") return FillStrategy::ConeOverFan;
  return std::nullopt;
}

const char* to_string(BarKind kind) {
  switch (kind) {
    case BarKind::Surface: return "surface";
    case BarKind::BlockBoundary: return "block-boundary";
    case BarKind::BlockFill: return "block-fill";
  }
  return "?";
}

bool fill_is_isostatic(const BlockFill& fill, const Configuration& config, double rel_tol) {
  const int n = fill.vertex_count();
  if (n < 3 || fill.edge_count() != 3 * n - 6) return false;
  BarFramework local(fill_positions(fill, config), [&] {
    std::vector<Bar> bars;
    for (auto [a, b] : fill_local_bars(fill)) bars.push_back({a, b, BarKind::BlockFill, -1, fill.block});
    return bars;
  }());
  return numeric_rank(bar_load_matrix(local), rel_tol) == local.bar_count();
}

BlockFill make_fill(FaceId block, const std::vector<VertexId>& boundary, const Configuration& config,
                    FillStrategy strategy, const FillOptions& options) {
  const int n = static_cast<int>(boundary.size());
  Configuration corners;
  for (VertexId v : boundary) corners.push_back(config.at(v));
  for (int i = 0; i < n; ++i) {
    if (collinear({corners[i], corners[(i + 1) % n], corners[(i + 2) % n]}, options.rank_tolerance)) {
      std::ostringstream msg;
      msg << "block " << block << " has collinear corners at " << boundary[i] << ", " << boundary[(i + 1) % n]
          << ", " << boundary[(i + 2) % n];
      throw Error(ErrorCode::CollinearBlockBoundary, msg.str());
    }
  }

  BlockFill fill;
  fill.block = block;
  fill.boundary = boundary;
  if (n == 3) {
    fill.strategy = strategy == FillStrategy::ConeOverFan ? strategy : FillStrategy::Chords;
    return fill;
  }
  if (strategy == FillStrategy::Auto)
    strategy = (n == 4 && !coplanar(corners, options.rank_tolerance)) ? FillStrategy::Chords : FillStrategy::ConeOverFan;
  fill.strategy = strategy;

  if (strategy == FillStrategy::Chords) {
    fill.added_edges = double_fan(n);
    if (!fill_is_isostatic(fill, config, options.rank_tolerance))
      throw Error(ErrorCode::FillDependentAfterRetries,
                  "chord fill of block " + std::to_string(block) + " is not isostatic at this configuration");
    return fill;
  }

  const int m = min_local_vertex(boundary);
  for (int k = 0; k < n; ++k) fill.added_edges.emplace_back(n, k);
  for (int k = 2; k <= n - 2; ++k) fill.added_edges.emplace_back(m, (m + k) % n);
  for (int attempt = 0; attempt < options.max_retries; ++attempt) {
    auto apex = apex_candidate(
        corners, derive_seed(options.seed, {kFillStream, static_cast<std::uint64_t>(block),
                                            static_cast<std::uint64_t>(attempt)}));
    if (!apex)
      throw Error(ErrorCode::DegenerateConfiguration,
                  "block " + std::to_string(block) + " has a corner at infinity");
    fill.added_positions = {*apex};
    if (fill_is_isostatic(fill, config, options.rank_tolerance)) return fill;
  }
  throw Error(ErrorCode::FillDependentAfterRetries,
              "no isostatic apex for block " + std::to_string(block) + " after " +
                  std::to_string(options.max_retries) + " attempts");
}

BarFramework::BarFramework(Configuration positions, std::vector<Bar> bars)
    : positions_(std::move(positions)), bars_(std::move(bars)), polyhedron_vertices_(vertex_count()) {}

BarFramework BarFramework::assemble(const BlockHolePolyhedron& p, const Configuration& config,
                                    std::vector<BlockFill> fills) {
  const auto& poly = p.polyhedron();
  if (static_cast<int>(config.size()) != poly.vertex_count())
    throw Error(ErrorCode::MissingConfiguration, "configuration size does not match the vertex count");
  std::sort(fills.begin(), fills.end(), [](const BlockFill& a, const BlockFill& b) { return a.block < b.block; });

  Configuration positions = config;
  std::vector<Bar> bars;
  std::set<std::pair<VertexId, VertexId>> seen;
  for (EdgeId e = 0; e < poly.edge_count(); ++e) {
    const Edge& edge = poly.edge(e);
    const bool on_block =
        p.label(edge.face_ab) == FaceLabel::Block || p.label(edge.face_ba) == FaceLabel::Block;
    bars.push_back({edge.a, edge.b, on_block ? BarKind::BlockBoundary : BarKind::Surface, e, -1});
    seen.insert({edge.a, edge.b});
  }

  std::vector<std::vector<int>> block_bar_index;
  std::vector<VertexId> offsets;
  for (const BlockFill& fill : fills) {
    if (fill.block < 0 || fill.block >= poly.face_count() || p.label(fill.block) != FaceLabel::Block ||
        fill.boundary != poly.face(fill.block))
      throw Error(ErrorCode::UnknownFace, "fill does not match block " + std::to_string(fill.block));
    const int n = static_cast<int>(fill.boundary.size());
    const VertexId offset = static_cast<VertexId>(positions.size());
    offsets.push_back(offset);
    positions.insert(positions.end(), fill.added_positions.begin(), fill.added_positions.end());
    auto global = [&](int local) { return local < n ? fill.boundary[local] : offset + (local - n); };

    std::vector<int> index;
    for (int i = 0; i < n; ++i) index.push_back(*poly.find_edge(fill.boundary[i], fill.boundary[(i + 1) % n]));
    for (auto [la, lb] : fill.added_edges) {
      VertexId a = global(la);
      VertexId b = global(lb);
      if (a > b) std::swap(a, b);
      if (!seen.insert({a, b}).second)
        throw Error(ErrorCode::ChordAlreadyEdge,
                    "fill of block " + std::to_string(fill.block) + " repeats bar " + std::to_string(a) + "-" +
                        std::to_string(b));
      index.push_back(static_cast<int>(bars.size()));
      bars.push_back({a, b, BarKind::BlockFill, -1, fill.block});
    }
    block_bar_index.push_back(std::move(index));
  }

  BarFramework fw(std::move(positions), std::move(bars));
  fw.fills_ = std::move(fills);
  fw.block_bar_index_ = std::move(block_bar_index);
  fw.fill_vertex_offset_ = std::move(offsets);
  fw.polyhedron_vertices_ = poly.vertex_count();
  return fw;
}

const BlockFill* BarFramework::fill_for(FaceId block) const {
  for (const auto& f : fills_)
    if (f.block == block) return &f;
  return nullptr;
}

std::vector<VertexId> BarFramework::block_vertices(FaceId block) const {
  for (std::size_t k = 0; k < fills_.size(); ++k) {
    if (fills_[k].block != block) continue;
    std::vector<VertexId> out = fills_[k].boundary;
    for (std::size_t u = 0; u < fills_[k].added_positions.size(); ++u)
      out.push_back(fill_vertex_offset_[k] + static_cast<VertexId>(u));
    return out;
  }
  throw Error(ErrorCode::UnknownFace, "no fill for block " + std::to_string(block));
}

std::vector<int> BarFramework::block_bars(FaceId block) const {
  for (std::size_t k = 0; k < fills_.size(); ++k)
    if (fills_[k].block == block) return block_bar_index_[k];
  throw Error(ErrorCode::UnknownFace, "no fill for block " + std::to_string(block));
}

BarFramework fill_blocks(const BlockHolePolyhedron& p, const Configuration& config, const FillOptions& options) {
  if (!p.surfaces_triangulated())
    throw Error(ErrorCode::NotTriangulated, "surface faces must be triangulated before filling blocks");
  if (static_cast<int>(config.size()) != p.polyhedron().vertex_count())
    throw Error(ErrorCode::MissingConfiguration, "configuration size does not match the vertex count");
  std::vector<BlockFill> fills;
  for (FaceId b : p.blocks()) {
    auto it = options.per_block.find(b);
    const FillStrategy s = it != options.per_block.end() ? it->second : options.strategy;
    fills.push_back(make_fill(b, p.polyhedron().face(b), config, s, options));
  }
  return BarFramework::assemble(p, config, std::move(fills));
}

Eigen::VectorXd LoadAssignment::flatten() const {
  Eigen::VectorXd v(6 * loads.size());
  for (std::size_t i = 0; i < loads.size(); ++i)
    for (int k = 0; k < 6; ++k) v(6 * i + k) = loads[i][k];
  return v;
}

LoadAssignment LoadAssignment::unflatten(const Eigen::VectorXd& v) {
  LoadAssignment out;
  out.loads.resize(v.size() / 6);
  for (std::size_t i = 0; i < out.loads.size(); ++i)
    for (int k = 0; k < 6; ++k) out.loads[i][k] = v(6 * i + k);
  return out;
}

LoadAssignment bar_load(const BarFramework& fw, int bar) {
  const Bar& b = fw.bars().at(bar);
  LoadAssignment out;
  out.loads.resize(fw.vertex_count());
  const auto& x = fw.positions();
  out.loads[b.a] = join(x[b.a], x[b.b]);
  out.loads[b.b] = join(x[b.b], x[b.a]);
  return out;
}

bool is_equilibrium(const LoadAssignment& load, double rel_tol) {
  Extensor2 sum;
  double scale = 0.0;
  for (const auto& l : load.loads) {
    sum += l;
    scale += norm(l);
  }
  return norm(sum) <= rel_tol * std::max(scale, 1.0);
}

bool loads_pass_through_joints(const LoadAssignment& load, const Configuration& positions, double rel_tol) {
  if (load.loads.size() != positions.size()) return false;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    const auto r = join_with_point(load.loads[i], positions[i]);
    double rn = 0.0;
    for (double x : r) rn = std::max(rn, std::abs(x));
    if (rn > rel_tol * std::max(norm(load.loads[i]) * norm(positions[i]), 1e-300)) return false;
  }
  return true;
}

Eigen::MatrixXd bar_load_matrix(const BarFramework& fw) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(fw.bar_count(), 6 * fw.vertex_count());
  const auto& x = fw.positions();
  for (int e = 0; e < fw.bar_count(); ++e) {
    const Bar& b = fw.bars()[e];
    const Extensor2 d = join(x[b.a], x[b.b]);
    for (int k = 0; k < 6; ++k) {
      a(e, 6 * b.a + k) = d[k];
      a(e, 6 * b.b + k) = -d[k];
    }
  }
  return a;
}

ExactMatrix bar_load_matrix_exact(const ExactConfiguration& positions, const std::vector<Bar>& bars) {
  ExactMatrix a(bars.size(), std::vector<mpq_class>(6 * positions.size()));
  for (std::size_t e = 0; e < bars.size(); ++e) {
    const Bar& b = bars[e];
    const ExactExtensor2 d = join(positions.at(b.a), positions.at(b.b));
    for (int k = 0; k < 6; ++k) {
      a[e][6 * b.a + k] = d[k];
      a[e][6 * b.b + k] = -d[k];
    }
  }
  return a;
}

ExactMatrix bar_load_matrix_exact(const BarFramework& fw) {
  return bar_load_matrix_exact(to_exact(fw.positions()), fw.bars());
}

Eigen::MatrixXd self_stress_basis(const BarFramework& fw, double rel_tol) {
  if (fw.bar_count() == 0) return Eigen::MatrixXd(0, 0);
  return left_null_space(bar_load_matrix(fw), rel_tol);
}

double equilibrium_residual(const BarFramework& fw, const Eigen::VectorXd& lambda) {
  const Eigen::VectorXd r = bar_load_matrix(fw).transpose() * lambda;
  double worst = 0.0;
  for (int i = 0; i < fw.vertex_count(); ++i) worst = std::max(worst, r.segment(6 * i, 6).norm());
  return worst;
}

double bar_extensor_scale(const BarFramework& fw) {
  double s = 0.0;
  for (const Bar& b : fw.bars()) s = std::max(s, norm(join(fw.positions()[b.a], fw.positions()[b.b])));
  return s;
}

Eigen::VectorXd resolve_load(const BarFramework& fw, const LoadAssignment& load, double rel_tol) {
  if (static_cast<int>(load.loads.size()) != fw.vertex_count())
    throw Error(ErrorCode::NotEquilibrium, "load has the wrong number of vertices");
  if (!is_equilibrium(load, rel_tol)) throw Error(ErrorCode::NotEquilibrium, "load coordinates do not sum to zero");
  const Eigen::VectorXd target = -load.flatten();
  if (target.norm() == 0.0) return Eigen::VectorXd::Zero(fw.bar_count());
  const Eigen::MatrixXd at = bar_load_matrix(fw).transpose();
  Eigen::VectorXd lambda = least_squares(at, target);
  const double residual = (at * lambda - target).norm();
  if (residual > 1e3 * rel_tol * target.norm()) {
    std::ostringstream msg;
    msg << "residual " << residual << " relative to load norm " << target.norm();
    throw Error(ErrorCode::Unresolvable, msg.str());
  }
  return lambda;
}

namespace {

void require_not_collinear(const BarFramework& fw, double rel_tol) {
  if (fw.vertex_count() < 3 || projective_rank(fw.positions(), rel_tol) <= 2)
    throw Error(ErrorCode::DegenerateConfiguration, "all joints are collinear");
}

StaticDims dims_from_rank(const BarFramework& fw, int rank) {
  return {rank, fw.bar_count() - rank, 3 * fw.vertex_count() - 6 - rank};
}

}  // namespace

StaticDims static_dims(const BarFramework& fw, double rel_tol) {
  require_not_collinear(fw, rel_tol);
  return dims_from_rank(fw, numeric_rank(bar_load_matrix(fw), rel_tol));
}

StaticDims static_dims_exact(const BarFramework& fw) {
  require_not_collinear(fw, kDefaultRankTolerance);
  return dims_from_rank(fw, exact_rank(bar_load_matrix_exact(fw)));
}

Eigen::MatrixXd euclidean_rigidity_matrix(const BarFramework& fw) {
  std::vector<std::array<double, 3>> x;
  for (const auto& p : fw.positions()) {
    auto a = affine_coordinates(p);
    if (!a) throw Error(ErrorCode::DegenerateConfiguration, "rigidity matrix needs finite joints");
    x.push_back(*a);
  }
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(fw.bar_count(), 3 * fw.vertex_count());
  for (int e = 0; e < fw.bar_count(); ++e) {
    const Bar& b = fw.bars()[e];
    for (int k = 0; k < 3; ++k) {
      r(e, 3 * b.a + k) = x[b.a][k] - x[b.b][k];
      r(e, 3 * b.b + k) = x[b.b][k] - x[b.a][k];
    }
  }
  return r;
}

Extensor2 cut_set_sum(const BarFramework& fw, const Eigen::VectorXd& stress, const std::vector<int>& cut_bars) {
  if (cut_bars.empty()) throw Error(ErrorCode::NotACutSet, "empty cut");
  std::set<int> cut(cut_bars.begin(), cut_bars.end());
  for (int e : cut)
    if (e < 0 || e >= fw.bar_count()) throw Error(ErrorCode::NotACutSet, "bar index out of range");

  UnionFind uf(fw.vertex_count());
  for (int e = 0; e < fw.bar_count(); ++e)
    if (!cut.count(e)) uf.unite(fw.bars()[e].a, fw.bars()[e].b);
  const int side = uf.find(fw.bars()[*cut.begin()].a);
  bool separates = false;
  for (int e : cut) {
    const Bar& b = fw.bars()[e];
    if ((uf.find(b.a) == side) != (uf.find(b.b) == side)) separates = true;
  }
  if (!separates) throw Error(ErrorCode::NotACutSet, "removing the bars leaves the framework connected");

  Extensor2 sum;
  const auto& x = fw.positions();
  for (int e : cut) {
    const Bar& b = fw.bars()[e];
    const bool a_in = uf.find(b.a) == side;
    const bool b_in = uf.find(b.b) == side;
    if (a_in && !b_in) sum += stress(e) * join(x[b.a], x[b.b]);
    if (b_in && !a_in) sum += stress(e) * join(x[b.b], x[b.a]);
  }
  return sum;
}

std::vector<std::vector<int>> face_cycle_cuts(const BlockHolePolyhedron& p, const BarFramework& fw, int count,
                                              std::uint64_t seed) {
  const auto& poly = p.polyhedron();
  const int n = poly.vertex_count();

  // Blocks sharing vertices collapse to one cluster; every cluster stays on one side.
  UnionFind clusters(n);
  for (FaceId b : p.blocks()) {
    const auto& f = poly.face(b);
    for (VertexId v : f) clusters.unite(f.front(), v);
  }
  std::vector<std::vector<int>> adjacency(n);
  for (const Edge& e : poly.edges()) {
    adjacency[e.a].push_back(e.b);
    adjacency[e.b].push_back(e.a);
  }
  auto connected = [&](const std::vector<char>& in, char want) {
    int start = -1;
    int total = 0;
    for (int v = 0; v < n; ++v)
      if (in[v] == want) {
        ++total;
        if (start < 0) start = v;
      }
    if (start < 0) return false;
    std::vector<char> seen(n, 0);
    std::vector<int> stack{start};
    seen[start] = 1;
    int reached = 0;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      ++reached;
      for (int w : adjacency[v])
        if (!seen[w] && in[w] == want) {
          seen[w] = 1;
          stack.push_back(w);
        }
    }
    return reached == total;
  };

  // Fill vertices follow their block.
  std::vector<VertexId> anchor(fw.vertex_count());
  std::iota(anchor.begin(), anchor.begin() + n, 0);
  for (const BlockFill& f : fw.fills()) {
    const auto ids = fw.block_vertices(f.block);
    for (std::size_t k = f.boundary.size(); k < ids.size(); ++k) anchor[ids[k]] = f.boundary.front();
  }

  std::set<std::vector<int>> found;
  std::vector<std::vector<int>> out;
  Rng rng(seed);
  // Cycles that avoid blocks come first; when there are too few of them,
  // cycles may run through a block face, whose fill vertices then stay on
  // the side of their anchor.
  UnionFind singletons(n);
  for (UnionFind* grouping : {&clusters, &singletons}) {
    for (int attempt = 0; attempt < 64 * std::max(count, 1) && static_cast<int>(out.size()) < count; ++attempt) {
      std::vector<char> in(n, 0);
      const int target = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 1)));
      std::vector<int> frontier{static_cast<int>(rng.below(n))};
      int size = 0;
      while (!frontier.empty() && size < target) {
        const std::size_t pick = rng.below(frontier.size());
        const int v = frontier[pick];
        frontier.erase(frontier.begin() + static_cast<std::ptrdiff_t>(pick));
        if (in[v]) continue;
        const int root = grouping->find(v);
        for (int w = 0; w < n; ++w)
          if (!in[w] && grouping->find(w) == root) {
            in[w] = 1;
            ++size;
            for (int x : adjacency[w])
              if (!in[x]) frontier.push_back(x);
          }
      }
      if (size == 0 || size >= n || !connected(in, 1) || !connected(in, 0)) continue;
      std::vector<int> cut;
      for (int e = 0; e < fw.bar_count(); ++e) {
        const Bar& b = fw.bars()[e];
        if (in[anchor[b.a]] != in[anchor[b.b]]) cut.push_back(e);
      }
      if (found.insert(cut).second) out.push_back(std::move(cut));
    }
  }
  return out;
}

BarFramework substitute_block(const BlockHolePolyhedron& p, const BarFramework& fw, FaceId block,
                              const BlockFill& new_fill, double rel_tol) {
  if (!fw.fill_for(block)) throw Error(ErrorCode::UnknownFace, "no fill for block " + std::to_string(block));
  if (new_fill.block != block || new_fill.boundary != fw.fill_for(block)->boundary)
    throw Error(ErrorCode::NewFillNotIsostatic, "replacement fill has a different boundary");
  if (!fill_is_isostatic(new_fill, fw.positions(), rel_tol))
    throw Error(ErrorCode::NewFillNotIsostatic, "replacement fill for block " + std::to_string(block));
  Configuration base(fw.positions().begin(), fw.positions().begin() + fw.polyhedron_vertex_count());
  std::vector<BlockFill> fills;
  for (const BlockFill& f : fw.fills()) fills.push_back(f.block == block ? new_fill : f);
  return BarFramework::assemble(p, base, std::move(fills));
}

}  // namespace rigidswap
