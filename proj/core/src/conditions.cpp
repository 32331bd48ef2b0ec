#include "rigidswap/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <string>

#include "rigidswap/error.hpp"
#include "rigidswap/linalg.hpp"
#include "rigidswap/random.hpp"

namespace rigidswap {

namespace {

template <class T, class Pt>
T surface_t(const std::vector<Pt>& p, int hole_offset) {
  if (p.size() != 8) throw Error(ErrorCode::MissingConfiguration, "tower(4, 4) has 8 vertices");
  const Tower44Labels labels = tower44_labels(hole_offset);
  auto v = [&](int i) -> const Pt& { return p[labels.block[(i + 4) % 4]]; };
  auto u = [&](int i) -> const Pt& { return p[labels.hole[(i + 4) % 4]]; };
  T forward = 1;
  T backward = 1;
  for (int i = 0; i < 4; ++i) {
    forward *= bracket4_t<T>(v(i), v(i + 1), u(i), u(i + 1));
    backward *= bracket4_t<T>(v(i), v(i - 1), u(i), u(i + 1));
  }
  return forward - backward;
}

template <class T, class Pt>
T block_bracket_t(const std::vector<Pt>& p, const std::array<VertexId, 4>& ids) {
  return bracket4_t<T>(p[ids[0]], p[ids[1]], p[ids[2]], p[ids[3]]);
}

constexpr std::array<int, 6> kDefaultPinned{0, 1, 2, 3, 4, 6};

double as_double(double x) { return x; }
double as_double(const mpq_class& x) { return x.get_d(); }

/// Trivial motions restricted to the pinned columns: translations, then
/// rotations e_a x p at each joint.
template <class T>
std::vector<std::vector<T>> pinned_motions(const std::vector<std::array<T, 3>>& x, const std::array<int, 6>& pinned) {
  std::vector<std::vector<T>> m(6, std::vector<T>(6, T(0)));
  for (std::size_t k = 0; k < pinned.size(); ++k) {
    const int joint = pinned[k] / 3;
    const int axis = pinned[k] % 3;
    const auto& q = x[joint];
    m[axis][k] = 1;
    const std::array<std::array<T, 3>, 3> rot{{{T(0), T(-q[2]), T(q[1])},
                                               {T(q[2]), T(0), T(-q[0])},
                                               {T(-q[1]), T(q[0]), T(0)}}};
    for (int a = 0; a < 3; ++a) m[3 + a][k] = rot[a][axis];
  }
  return m;
}

/// |det| over the product of column norms.
double conditioning(const std::vector<std::vector<double>>& m) {
  Eigen::Matrix<double, 6, 6> a;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) a(i, j) = m[i][j];
  double bound = 1.0;
  for (int j = 0; j < 6; ++j) bound *= a.col(j).norm();
  return bound == 0.0 ? 0.0 : std::abs(a.partialPivLu().determinant()) / bound;
}

/// The default pins x, y, z of joint 0, x, y of joint 1 and x of joint 2. When
/// that choice is ill-conditioned (joints 0 and 1 at equal height, say), the
/// best six columns among the first four joints are used instead.
template <class T>
std::array<int, 6> choose_pinned(const std::vector<std::array<T, 3>>& x) {
  std::vector<std::array<double, 3>> xd;
  for (const auto& q : x) xd.push_back({as_double(q[0]), as_double(q[1]), as_double(q[2])});
  double best_value = conditioning(pinned_motions(xd, kDefaultPinned));
  if (best_value >= 0.05) return kDefaultPinned;
  std::array<int, 6> best = kDefaultPinned;
  const int columns = 3 * std::min<int>(4, static_cast<int>(x.size()));
  std::array<int, 6> s{0, 1, 2, 3, 4, 5};
  while (true) {
    const double value = conditioning(pinned_motions(xd, s));
    if (value > best_value) {
      best_value = value;
      best = s;
    }
    int i = 5;
    while (i >= 0 && s[i] == columns - 6 + i) --i;
    if (i < 0) break;
    ++s[i];
    for (int j = i + 1; j < 6; ++j) s[j] = s[j - 1] + 1;
  }
  return best;
}

/// Sign that makes det(R_K) / det(M_P) agree with the default pinned set.
int pinned_sign(const std::array<int, 6>& pinned) {
  int parity = 0;
  for (int k = 0; k < 6; ++k) parity += pinned[k] - kDefaultPinned[k];
  return parity % 2 == 0 ? 1 : -1;
}

template <class T, class Pt, class Div, class Det>
T isostatic_determinant_t(const std::vector<Pt>& positions, const std::vector<Bar>& bars, Div divide, Det det) {
  const int n = static_cast<int>(positions.size());
  if (n < 3 || static_cast<int>(bars.size()) != 3 * n - 6)
    throw Error(ErrorCode::NotGenericallyIsostatic, "determinant needs |bars| = 3|V| - 6");
  std::vector<std::array<T, 3>> x;
  for (const auto& p : positions) {
    if (p[3] == 0) throw Error(ErrorCode::DegenerateConfiguration, "determinant needs finite joints");
    x.push_back({divide(p[0], p[3]), divide(p[1], p[3]), divide(p[2], p[3])});
  }
  const std::array<int, 6> pinned = choose_pinned(x);
  std::vector<int> keep;
  for (int c = 0; c < 3 * n; ++c)
    if (std::find(pinned.begin(), pinned.end(), c) == pinned.end()) keep.push_back(c);
  std::vector<int> column_of(3 * n, -1);
  for (std::size_t k = 0; k < keep.size(); ++k) column_of[keep[k]] = static_cast<int>(k);

  std::vector<std::vector<T>> r(bars.size(), std::vector<T>(keep.size(), T(0)));
  for (std::size_t e = 0; e < bars.size(); ++e) {
    const Bar& b = bars[e];
    for (int k = 0; k < 3; ++k) {
      if (const int c = column_of[3 * b.a + k]; c >= 0) r[e][c] += x[b.a][k] - x[b.b][k];
      if (const int c = column_of[3 * b.b + k]; c >= 0) r[e][c] += x[b.b][k] - x[b.a][k];
    }
  }
  const T fixed = det(pinned_motions(x, pinned));
  if (fixed == 0) throw Error(ErrorCode::DegenerateConfiguration, "the first four joints are collinear");
  T value = det(r) / fixed;
  if (pinned_sign(pinned) < 0) value = -value;
  return value;
}

double double_det(const std::vector<std::vector<double>>& a) {
  const Eigen::Index n = static_cast<Eigen::Index>(a.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = a[i][j];
  return n == 0 ? 1.0 : m.partialPivLu().determinant();
}

mpq_class exact_det(const std::vector<std::vector<mpq_class>>& a) { return exact_determinant(a); }

/// Local copy of a block's subframework.
template <class Pt>
std::pair<std::vector<Pt>, std::vector<Bar>> block_subframework(const BarFramework& fw, const std::vector<Pt>& x,
                                                                FaceId block) {
  const auto vertices = fw.block_vertices(block);
  std::vector<int> local(x.size(), -1);
  std::vector<Pt> positions;
  for (VertexId v : vertices) {
    local[v] = static_cast<int>(positions.size());
    positions.push_back(x[v]);
  }
  std::vector<Bar> bars;
  for (int e : fw.block_bars(block)) {
    Bar b = fw.bars()[e];
    b.a = local[b.a];
    b.b = local[b.b];
    bars.push_back(b);
  }
  return {std::move(positions), std::move(bars)};
}

double relative_spread(const std::vector<double>& values) {
  if (values.empty()) return 0.0;
  double mean = 0.0;
  for (double v : values) mean += v / static_cast<double>(values.size());
  double worst = 0.0;
  for (double v : values) worst = std::max(worst, std::abs(v - mean) / std::abs(mean));
  return worst;
}

BarFramework tower44_frame(const Configuration& x) {
  FillOptions options;
  options.strategy = FillStrategy::Chords;
  return fill_blocks(tower(4, 4), x, options);
}

int exact_rank_at(const BarFramework& fw, const ExactConfiguration& x) {
  return exact_rank(bar_load_matrix_exact(x, fw.bars()));
}

using Family = std::function<ExactConfiguration(const mpq_class&)>;
using Condition = std::function<mpq_class(const ExactConfiguration&)>;

RankDropReport crossing(const BarFramework& fw, const Family& family, const Condition& condition, mpq_class lo,
                        mpq_class hi, const mpq_class& root) {
  RankDropReport report;
  report.root = root;
  report.full_rank = fw.bar_count();
  report.rank_below = exact_rank_at(fw, family(lo));
  report.rank_above = exact_rank_at(fw, family(hi));
  report.rank_at_root = exact_rank_at(fw, family(root));

  const int sign_lo = sgn(condition(family(lo)));
  mpq_class mid = (lo + hi) / 2;
  mpq_class value = condition(family(mid));
  while (sgn(value) != 0 && report.bisection_steps < 48) {
    if (sgn(value) == sign_lo) {
      lo = mid;
    } else {
      hi = mid;
    }
    mid = (lo + hi) / 2;
    value = condition(family(mid));
    ++report.bisection_steps;
  }
  report.located = mid.get_d();
  report.condition_at_located = value.get_d();
  report.root_bracketed = sgn(value) == 0 ? mid == root : (lo <= root && root <= hi);
  return report;
}

}  // namespace

Tower44Labels tower44_labels(int hole_offset) {
  Tower44Labels labels{};
  for (int i = 0; i < 4; ++i) {
    labels.block[i] = i;
    labels.hole[i] = 4 + ((i + hole_offset) % 4 + 4) % 4;
  }
  return labels;
}

double tower44_surface(const Configuration& p, int hole_offset) { return surface_t<double>(p, hole_offset); }

mpq_class tower44_surface(const ExactConfiguration& p, int hole_offset) {
  return surface_t<mpq_class>(p, hole_offset);
}

double tower44_condition(const Configuration& p, int hole_offset) {
  return block_bracket_t<double>(p, tower44_labels(hole_offset).block) * tower44_surface(p, hole_offset);
}

mpq_class tower44_condition(const ExactConfiguration& p, int hole_offset) {
  return block_bracket_t<mpq_class>(p, tower44_labels(hole_offset).block) * tower44_surface(p, hole_offset);
}

double tower44_swapped_condition(const Configuration& p, int hole_offset) {
  return block_bracket_t<double>(p, tower44_labels(hole_offset).hole) * tower44_surface(p, hole_offset);
}

mpq_class tower44_swapped_condition(const ExactConfiguration& p, int hole_offset) {
  return block_bracket_t<mpq_class>(p, tower44_labels(hole_offset).hole) * tower44_surface(p, hole_offset);
}

double tower44_condition_normalized(const Configuration& p, int hole_offset) {
  const Tower44Labels labels = tower44_labels(hole_offset);
  auto v = [&](int i) -> const Point4& { return p.at(labels.block[(i + 4) % 4]); };
  auto u = [&](int i) -> const Point4& { return p.at(labels.hole[(i + 4) % 4]); };
  double forward = 1.0;
  double backward = 1.0;
  for (int i = 0; i < 4; ++i) {
    forward *= norm(v(i)) * norm(v(i + 1)) * norm(u(i)) * norm(u(i + 1));
    backward *= norm(v(i)) * norm(v(i - 1)) * norm(u(i)) * norm(u(i + 1));
  }
  const double bound = norm(v(0)) * norm(v(1)) * norm(v(2)) * norm(v(3)) * (forward + backward);
  return bound == 0.0 ? 0.0 : std::abs(tower44_condition(p, hole_offset)) / bound;
}

double isostatic_determinant(const Configuration& positions, const std::vector<Bar>& bars) {
  return isostatic_determinant_t<double>(
      positions, bars, [](double a, double b) { return a / b; }, double_det);
}

mpq_class isostatic_determinant(const ExactConfiguration& positions, const std::vector<Bar>& bars) {
  return isostatic_determinant_t<mpq_class>(
      positions, bars, [](const mpq_class& a, const mpq_class& b) { return mpq_class(a / b); }, exact_det);
}

double isostatic_determinant_normalized(const Configuration& positions, const std::vector<Bar>& bars) {
  const BarFramework fw(positions, bars);
  const Eigen::MatrixXd r = euclidean_rigidity_matrix(fw);
  std::vector<std::array<double, 3>> x;
  for (const auto& p : positions) x.push_back(*affine_coordinates(p));
  const std::array<int, 6> pinned = choose_pinned(x);
  std::vector<int> keep;
  for (int c = 0; c < r.cols(); ++c)
    if (std::find(pinned.begin(), pinned.end(), c) == pinned.end()) keep.push_back(c);
  Eigen::MatrixXd k(r.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t j = 0; j < keep.size(); ++j) k.col(static_cast<Eigen::Index>(j)) = r.col(keep[j]);
  double bound = 1.0;
  for (Eigen::Index i = 0; i < k.rows(); ++i) bound *= k.row(i).norm();
  if (k.rows() != k.cols() || bound == 0.0) return 0.0;
  return std::abs(k.partialPivLu().determinant()) / bound;
}

double surface_polynomial(const BarFramework& fw) {
  double value = isostatic_determinant(fw.positions(), fw.bars());
  for (const BlockFill& fill : fw.fills()) {
    auto [x, bars] = block_subframework(fw, fw.positions(), fill.block);
    value /= isostatic_determinant(x, bars);
  }
  return value;
}

mpq_class surface_polynomial(const BarFramework& fw, const ExactConfiguration& positions) {
  if (static_cast<int>(positions.size()) != fw.vertex_count())
    throw Error(ErrorCode::MissingConfiguration, "positions do not match the framework");
  mpq_class value = isostatic_determinant(positions, fw.bars());
  for (const BlockFill& fill : fw.fills()) {
    auto [x, bars] = block_subframework(fw, positions, fill.block);
    const mpq_class block = isostatic_determinant(x, bars);
    if (sgn(block) == 0) throw Error(ErrorCode::DegenerateConfiguration, "block subframework is dependent");
    value /= block;
  }
  return value;
}

SurfaceRoot tower44_surface_root(const Configuration& base, int hole_offset) {
  const ExactConfiguration x = to_exact(base);
  const int n = static_cast<int>(x.size());
  std::optional<SurfaceRoot> best;
  double best_shift = 0.0;
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId a = 0; a < n; ++a) {
      for (VertexId b = a + 1; b < n; ++b) {
        if (a == u || b == u) continue;
        for (int quarter = 0; quarter < 4; ++quarter) {
          ExactConfiguration y = x;
          const mpq_class mix(quarter, 4);
          for (int k = 0; k < 4; ++k) y[u][k] = mix * x[a][k] + (1 - mix) * x[b][k];
          const ExactPoint4 target = y[u];
          auto at = [&](const mpq_class& s) {
            ExactConfiguration z = x;
            for (int k = 0; k < 4; ++k) z[u][k] = x[u][k] + s * target[k];
            return z;
          };
          const mpq_class t0 = tower44_surface(at(0), hole_offset);
          const mpq_class t1 = tower44_surface(at(1), hole_offset);
          const mpq_class t2 = tower44_surface(at(2), hole_offset);
          if (t1 == t0 || t2 - 2 * t1 + t0 != 0) continue;
          const mpq_class root = -t0 / (t1 - t0);
          ExactConfiguration z = at(root);
          if (sgn(z[u][3]) == 0 || !general_position_violations(tower(4, 4), to_double(z)).empty()) continue;
          const auto from = affine_coordinates(base[u]);
          const auto to = affine_coordinates(to_double(z[u]));
          double shift = 0.0;
          for (int k = 0; k < 3; ++k) shift += ((*to)[k] - (*from)[k]) * ((*to)[k] - (*from)[k]);
          if (!best || shift < best_shift) {
            best = SurfaceRoot{std::move(z), root, u, target};
            best_shift = shift;
          }
        }
      }
    }
  }
  if (!best) throw Error(ErrorCode::DegenerateConfiguration, "no line with a rational surface root");
  return *best;
}

RankDropReport tower44_block_coplanarity_crossing(const Configuration& base) {
  const BarFramework fw = tower44_frame(base);
  const Tower44Labels labels = tower44_labels(kTower44HoleOffset);
  const ExactConfiguration x = to_exact(base);
  const VertexId moved = labels.block[3];
  Family family = [&](const mpq_class& s) {
    ExactConfiguration y = x;
    y[moved][2] = x[moved][2] + s * x[moved][3];
    return y;
  };
  auto block = [&](const ExactConfiguration& y) { return block_bracket_t<mpq_class>(y, labels.block); };
  const mpq_class b0 = block(family(0));
  const mpq_class b1 = block(family(1));
  if (b1 == b0) throw Error(ErrorCode::DegenerateConfiguration, "block bracket is constant along the path");
  const mpq_class root = -b0 / (b1 - b0);
  // Shrink the window until the surface factor keeps one sign across it.
  mpq_class delta(1, 64);
  for (int k = 0; k < 20; ++k) {
    const int s_lo = sgn(tower44_surface(family(root - delta)));
    const int s_mid = sgn(tower44_surface(family(root)));
    const int s_hi = sgn(tower44_surface(family(root + delta * 3 / 2)));
    if (s_mid != 0 && s_lo == s_mid && s_hi == s_mid) break;
    delta /= 2;
  }
  Condition condition = [](const ExactConfiguration& y) { return tower44_condition(y); };
  RankDropReport report = crossing(fw, family, condition, root - delta, root + delta * 3 / 2, root);
  const ExactConfiguration at_root = family(root);
  report.surface_nonzero = sgn(tower44_surface(at_root)) != 0;
  report.block_brackets_nonzero = sgn(block_bracket_t<mpq_class>(at_root, labels.hole)) != 0;
  return report;
}

RankDropReport tower44_surface_crossing(const Configuration& base, int hole_offset) {
  const BarFramework fw = tower44_frame(base);
  const Tower44Labels labels = tower44_labels(hole_offset);
  const SurfaceRoot sr = tower44_surface_root(base, hole_offset);
  const ExactConfiguration x = to_exact(base);
  Family family = [&](const mpq_class& s) {
    ExactConfiguration y = x;
    for (int k = 0; k < 4; ++k) y[sr.moved_vertex][k] = x[sr.moved_vertex][k] + s * sr.direction[k];
    return y;
  };
  Condition condition = [hole_offset](const ExactConfiguration& y) { return tower44_condition(y, hole_offset); };
  const mpq_class delta(1, 16);
  RankDropReport report = crossing(fw, family, condition, sr.parameter - delta, sr.parameter + delta * 3 / 2, sr.parameter);
  report.block_brackets_nonzero = sgn(block_bracket_t<mpq_class>(sr.config, labels.block)) != 0 &&
                                  sgn(block_bracket_t<mpq_class>(sr.config, labels.hole)) != 0;
  report.surface_nonzero = sgn(tower44_surface(sr.config, hole_offset)) != 0;
  return report;
}

AlignmentCalibration calibrate_tower44_alignment(int samples, std::uint64_t seed) {
  std::vector<Configuration> configs;
  std::vector<double> determinants;
  for (int i = 0; i < samples; ++i) {
    configs.push_back(tower_configuration(4, 4, derive_seed(seed, {kProbeStream, static_cast<std::uint64_t>(i)})));
    const BarFramework fw = tower44_frame(configs.back());
    determinants.push_back(isostatic_determinant(fw.positions(), fw.bars()));
  }
  AlignmentCalibration out;
  for (int offset = 0; offset < 4; ++offset) {
    AlignmentTrial trial;
    trial.hole_offset = offset;
    std::vector<double> ratios;
    for (int i = 0; i < samples; ++i) ratios.push_back(determinants[i] / tower44_condition(configs[i], offset));
    trial.ratio_spread = relative_spread(ratios);
    try {
      const SurfaceRoot root = tower44_surface_root(configs.front(), offset);
      const BarFramework fw = tower44_frame(configs.front());
      trial.root_rank_drop = exact_rank_at(fw, root.config) < fw.bar_count();
    } catch (const Error&) {
      trial.root_rank_drop = false;
    }
    trial.accepted = trial.ratio_spread < 1e-8 && trial.root_rank_drop;
    out.trials.push_back(trial);
    if (trial.accepted) {
      out.hole_offset = offset;
      break;
    }
  }
  return out;
}

Configuration sample_configuration(const BlockHolePolyhedron& p, std::uint64_t seed, int sample) {
  const int n = p.polyhedron().vertex_count();
  for (std::uint64_t attempt = 0; attempt < 100; ++attempt) {
    Configuration x =
        random_configuration(n, derive_seed(seed, {kProbeStream, static_cast<std::uint64_t>(sample), attempt}));
    if (general_position_violations(p, x).empty()) return x;
  }
  throw Error(ErrorCode::NoGeneralPositionFound, "no general-position sample after 100 attempts");
}

VanishingReport vanishing_rank_probe(const BlockHolePolyhedron& input, FillStrategy fill, int samples,
                                     std::uint64_t seed, ConditionSource source) {
  const BlockHolePolyhedron p = triangulate_surfaces(input);
  if (source == ConditionSource::Tower44Formula && !(p == tower(4, 4)))
    throw Error(ErrorCode::NotGenericallyIsostatic, "the printed condition is specific to tower(4, 4)");
  FillOptions options;
  options.strategy = fill;
  options.seed = seed;

  VanishingReport report;
  for (int i = 0; i < samples; ++i) {
    const Configuration x = sample_configuration(p, seed, i);
    const BarFramework fw = fill_blocks(p, x, options);
    if (fw.bar_count() != 3 * fw.vertex_count() - 6)
      throw Error(ErrorCode::NotGenericallyIsostatic,
                  std::to_string(fw.bar_count()) + " bars on " + std::to_string(fw.vertex_count()) + " joints");
    VanishingSample s;
    if (source == ConditionSource::Tower44Formula) {
      s.condition = tower44_condition(x);
      s.normalized = tower44_condition_normalized(x);
    } else {
      s.condition = isostatic_determinant(fw.positions(), fw.bars());
      s.normalized = isostatic_determinant_normalized(fw.positions(), fw.bars());
    }
    const RankDecision decision = numeric_rank_decision(bar_load_matrix(fw));
    const StaticDims dims = static_dims(fw);
    s.stress_dim = dims.stress_dim;
    s.unresolved_dim = dims.unresolved_dim;
    s.isostatic = dims.stress_dim == 0 && dims.unresolved_dim == 0;
    const bool clear_nonzero = s.normalized > 1e-8 && decision.smallest_kept > 1e-8 && s.isostatic;
    const bool clear_zero = s.normalized < 1e-14 && decision.largest_dropped < 1e-14 && !s.isostatic;
    if (clear_nonzero || clear_zero) {
      s.agrees = true;
    } else {
      s.exact_used = true;
      ++report.exact_checks;
      const ExactConfiguration ex = to_exact(fw.positions());
      const mpq_class c = source == ConditionSource::Tower44Formula ? tower44_condition(ex)
                                                                   : isostatic_determinant(ex, fw.bars());
      const bool full = exact_rank(bar_load_matrix_exact(fw)) == fw.bar_count();
      s.agrees = (sgn(c) != 0) == full;
      s.isostatic = full;
    }
    if (s.agrees) ++report.agreements;
    report.samples.push_back(s);
  }
  if (samples > 0 && std::none_of(report.samples.begin(), report.samples.end(),
                                  [](const VanishingSample& s) { return s.isostatic; }))
    throw Error(ErrorCode::NotGenericallyIsostatic, "no sampled configuration is isostatic");
  return report;
}

ConjectureReport conjecture_probe(int samples, std::uint64_t seed) {
  const BlockHolePolyhedron p = tower(4, 4);
  const BlockHolePolyhedron q = swapped(p);
  const Tower44Labels labels = tower44_labels(kTower44HoleOffset);
  FillOptions options;
  options.strategy = FillStrategy::Chords;

  ConjectureReport report;
  report.samples = samples;
  std::vector<double> formula_ratios;
  std::optional<Configuration> first;
  for (int i = 0; i < samples; ++i) {
    const Configuration x = tower_configuration(4, 4, derive_seed(seed, {kProbeStream, static_cast<std::uint64_t>(i)}));
    const double vb = normalized_bracket(x[labels.block[0]], x[labels.block[1]], x[labels.block[2]], x[labels.block[3]]);
    const double ub = normalized_bracket(x[labels.hole[0]], x[labels.hole[1]], x[labels.hole[2]], x[labels.hole[3]]);
    if (vb < 1e-9 || ub < 1e-9) {
      report.skipped.push_back("sample " + std::to_string(i) + ": block bracket vanishes");
      continue;
    }
    const double tp = surface_polynomial(fill_blocks(p, x, options));
    const double tq = surface_polynomial(fill_blocks(q, x, options));
    if (tq == 0.0) {
      report.skipped.push_back("sample " + std::to_string(i) + ": swapped surface polynomial is zero");
      continue;
    }
    if (!first) first = x;
    report.ratios.push_back(tp / tq);
    formula_ratios.push_back(tp / tower44_surface(x));
  }
  if (!report.ratios.empty()) {
    for (double r : report.ratios) report.mean_ratio += r / static_cast<double>(report.ratios.size());
    report.max_relative_deviation = relative_spread(report.ratios);
    report.formula_deviation = relative_spread(formula_ratios);
  }
  if (first) {
    const SurfaceRoot root = tower44_surface_root(*first);
    const mpq_class tp = surface_polynomial(fill_blocks(p, *first, options), root.config);
    const mpq_class tq = surface_polynomial(fill_blocks(q, *first, options), root.config);
    report.zero_sets_agree = sgn(tp) == 0 && sgn(tq) == 0;
  }
  return report;
}

GenericDims generic_dims(const BlockHolePolyhedron& input, FillStrategy fill, int samples, std::uint64_t seed) {
  const BlockHolePolyhedron p = triangulate_surfaces(input);
  FillOptions options;
  options.strategy = fill;
  options.seed = seed;
  GenericDims out;
  out.samples = samples;
  std::vector<std::pair<int, int>> seen;
  for (int i = 0; i < samples; ++i) {
    const Configuration x = sample_configuration(p, seed, i);
    const StaticDims d = static_dims(fill_blocks(p, x, options));
    seen.emplace_back(d.stress_dim, d.unresolved_dim);
    ++out.histogram[seen.back()];
  }
  std::pair<int, int> modal{0, 0};
  int best = -1;
  for (const auto& [dims, count] : out.histogram)
    if (count > best) {
      best = count;
      modal = dims;
    }
  out.stress_dim = modal.first;
  out.unresolved_dim = modal.second;
  for (int i = 0; i < samples; ++i)
    if (seen[i] != modal) out.outliers.push_back(i);
  return out;
}

}  // namespace rigidswap
