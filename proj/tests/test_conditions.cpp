#include <gtest/gtest.h>

#include <numeric>

#include "rigidswap/conditions.hpp"
#include "rigidswap/random.hpp"
#include "test_util.hpp"

using namespace rigidswap;

namespace {

Eigen::Matrix4d rows(const Point4& a, const Point4& b, const Point4& c, const Point4& d) {
  Eigen::Matrix4d m;
  for (int j = 0; j < 4; ++j) {
    m(0, j) = a[j];
    m(1, j) = b[j];
    m(2, j) = c[j];
    m(3, j) = d[j];
  }
  return m;
}

Configuration tower44_sample(std::uint64_t seed) { return sample_configuration(tower(4, 4), seed, 0); }

BarFramework tower44_frame(const Configuration& c) {
  return fill_blocks(tower(4, 4), c, {.strategy = FillStrategy::Chords});
}

/// det(R without the pinned columns) / det(trivial motions on the pinned
/// coordinates), sign-adjusted to the pin set {0, 1, 2, 3, 4, 6}.
double pinned_determinant(const BarFramework& fw, const std::array<int, 6>& pinned) {
  const int n = fw.vertex_count();
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(fw.bar_count(), 3 * n);
  for (int e = 0; e < fw.bar_count(); ++e) {
    const Bar& b = fw.bars()[e];
    const auto pa = *affine_coordinates(fw.positions()[b.a]);
    const auto pb = *affine_coordinates(fw.positions()[b.b]);
    for (int k = 0; k < 3; ++k) {
      r(e, 3 * b.a + k) = pa[k] - pb[k];
      r(e, 3 * b.b + k) = pb[k] - pa[k];
    }
  }
  Eigen::MatrixXd kept(fw.bar_count(), 3 * n - 6);
  Eigen::Matrix<double, 6, 6> motions;
  int col = 0;
  for (int c = 0; c < 3 * n; ++c) {
    const auto at = std::find(pinned.begin(), pinned.end(), c);
    if (at == pinned.end()) {
      kept.col(col++) = r.col(c);
      continue;
    }
    const int k = static_cast<int>(at - pinned.begin());
    const auto q = *affine_coordinates(fw.positions()[c / 3]);
    const Eigen::Vector3d point(q[0], q[1], q[2]);
    const int axis = c % 3;
    for (int t = 0; t < 3; ++t) motions(t, k) = t == axis;
    for (int a = 0; a < 3; ++a) motions(3 + a, k) = Eigen::Vector3d::Unit(a).cross(point)[axis];
  }
  const int parity = std::accumulate(pinned.begin(), pinned.end(), 0) - (0 + 1 + 2 + 3 + 4 + 6);
  const double value = kept.determinant() / motions.determinant();
  return parity % 2 == 0 ? value : -value;
}

}  // namespace

TEST(Bracket, UnitTetrahedron) {
  const Point4 a{0, 0, 0, 1}, b{1, 0, 0, 1}, c{0, 1, 0, 1}, d{0, 0, 1, 1};
  EXPECT_DOUBLE_EQ(std::abs(bracket4(a, b, c, d)), 1.0);
  EXPECT_DOUBLE_EQ(bracket4(a, b, c, d), rows(a, b, c, d).determinant());
  EXPECT_EQ(bracket4(to_exact(a), to_exact(b), to_exact(c), to_exact(d)), mpq_class(rows(a, b, c, d).determinant()));
}

TEST(Bracket, MatchesDeterminantAndAlternates) {
  Rng rng(21);
  auto pt = [&] { return Point4{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(0.5, 1.5)}; };
  for (int i = 0; i < 40; ++i) {
    const Point4 a = pt(), b = pt(), c = pt(), d = pt();
    const double x = bracket4(a, b, c, d);
    EXPECT_NEAR(x, rows(a, b, c, d).determinant(), 1e-13);
    EXPECT_NEAR(bracket4(b, a, c, d), -x, 1e-13);
    EXPECT_NEAR(bracket4(a, b, d, c), -x, 1e-13);
    EXPECT_NEAR(bracket4(a, b, c, a), 0.0, 1e-14);
  }
}

TEST(Bracket, CoplanarIsZero) {
  const Point4 a{0, 0, 1, 1}, b{1, 0, 1, 1}, c{0, 1, 1, 1}, d{3, -2, 1, 1};
  EXPECT_EQ(bracket4(a, b, c, d), 0.0);
  EXPECT_EQ(normalized_bracket(a, b, c, d), 0.0);
}

TEST(Tower44, SurfaceIsQuadraticInEveryPoint) {
  const Configuration base = tower44_sample(3);
  const double t = tower44_surface(base);
  const double c = tower44_condition(base);
  ASSERT_GT(std::abs(t), 1e-6);
  for (VertexId v = 0; v < 8; ++v) {
    Configuration scaled = base;
    for (double& x : scaled[v]) x *= 3.0;
    EXPECT_NEAR(tower44_surface(scaled), 9.0 * t, 1e-9 * std::abs(t)) << v;
    const double degree = v < 4 ? 27.0 : 9.0;
    EXPECT_NEAR(tower44_condition(scaled), degree * c, 1e-9 * std::abs(degree * c)) << v;
  }
}

TEST(Tower44, ExactAgreesWithDouble) {
  const Configuration c = tower44_sample(4);
  const ExactConfiguration x = to_exact(c);
  EXPECT_NEAR(tower44_surface(x).get_d(), tower44_surface(c), 1e-12 * std::abs(tower44_surface(c)));
  EXPECT_NEAR(tower44_condition(x).get_d(), tower44_condition(c), 1e-12 * std::abs(tower44_condition(c)));
}

TEST(Tower44, LabelsFollowOffset) {
  const auto l = tower44_labels(kTower44HoleOffset);
  EXPECT_EQ(l.block, (std::array<VertexId, 4>{0, 1, 2, 3}));
  for (int i = 0; i < 4; ++i) EXPECT_EQ(l.hole[i], 4 + (i + kTower44HoleOffset) % 4);
}

TEST(Tower44, CoplanarBlockKillsCondition) {
  Configuration c = tower44_sample(5);
  for (int i = 0; i < 4; ++i) c[i][2] = c[i][3];
  EXPECT_EQ(tower44_condition(to_exact(c)), 0);
  EXPECT_NE(tower44_surface(to_exact(c)), 0);
}

TEST(Tower44, GenericConfigurationIsIsostatic) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Configuration c = tower44_sample(seed);
    EXPECT_NE(tower44_condition(to_exact(c)), 0);
    const StaticDims d = static_dims(tower44_frame(c));
    EXPECT_EQ(d.stress_dim, 0);
    EXPECT_EQ(d.unresolved_dim, 0);
  }
}

TEST(Tower44, CalibrationPicksOffset) {
  const auto cal = calibrate_tower44_alignment(10, 1);
  ASSERT_TRUE(cal.hole_offset.has_value());
  EXPECT_EQ(*cal.hole_offset, kTower44HoleOffset);
}

TEST(Determinant, IndependentOfPinnedColumns) {
  const BarFramework fw = tower44_frame(tower44_sample(2));
  const double reference = isostatic_determinant(fw.positions(), fw.bars());
  ASSERT_GT(std::abs(reference), 1e-9);
  const std::vector<std::array<int, 6>> pins{{0, 1, 2, 3, 4, 6}, {0, 1, 2, 3, 5, 7}, {1, 2, 3, 4, 5, 9},
                                             {0, 2, 4, 6, 8, 10}, {3, 4, 5, 6, 7, 9}, {0, 1, 3, 5, 8, 11}};
  for (const auto& p : pins) EXPECT_NEAR(pinned_determinant(fw, p), reference, 1e-8 * std::abs(reference));
}

TEST(Determinant, ExactAgreesWithDouble) {
  const BarFramework fw = tower44_frame(tower44_sample(6));
  const double d = isostatic_determinant(fw.positions(), fw.bars());
  EXPECT_NEAR(isostatic_determinant(to_exact(fw.positions()), fw.bars()).get_d(), d, 1e-9 * std::abs(d));
}

TEST(Determinant, DegenerateFirstJointsHandled) {
  // Joints 0 and 1 at equal height make the default pins singular.
  Configuration c = tower44_sample(7);
  c[1][2] = c[0][2];
  const BarFramework fw = tower44_frame(c);
  const double d = isostatic_determinant(fw.positions(), fw.bars());
  EXPECT_NEAR(pinned_determinant(fw, {0, 1, 2, 3, 5, 7}), d, 1e-8 * std::abs(d));
}

TEST(Determinant, NeedsSquareSystem) {
  const BarFramework fw = fill_blocks(tower(4, 3), tower_configuration(4, 3, 0));
  EXPECT_ERROR_CODE(isostatic_determinant(fw.positions(), fw.bars()), ErrorCode::NotGenericallyIsostatic);
}

TEST(SurfaceRoot, ExactZeroWithRankDrop) {
  const Configuration base = tower44_sample(0);
  const SurfaceRoot root = tower44_surface_root(base);
  EXPECT_EQ(tower44_surface(root.config), 0);
  EXPECT_NE(bracket4(root.config[0], root.config[1], root.config[2], root.config[3]), 0);
  const BarFramework fw = tower44_frame(base);
  const int rank = exact_rank(bar_load_matrix_exact(root.config, fw.bars()));
  EXPECT_LT(rank, fw.bar_count());
}

TEST(Crossing, BlockCoplanarity) {
  const RankDropReport r = tower44_block_coplanarity_crossing(tower44_sample(1));
  EXPECT_TRUE(r.root_bracketed);
  EXPECT_GT(r.bisection_steps, 0);
  EXPECT_LT(r.rank_at_root, r.full_rank);
  EXPECT_EQ(r.rank_below, r.full_rank);
  EXPECT_EQ(r.rank_above, r.full_rank);
  EXPECT_LT(std::abs(r.condition_at_located), 1e-12);
}

TEST(Crossing, SurfaceZero) {
  const RankDropReport r = tower44_surface_crossing(tower44_sample(1));
  EXPECT_TRUE(r.root_bracketed);
  EXPECT_TRUE(r.block_brackets_nonzero);
  EXPECT_LT(r.rank_at_root, r.full_rank);
  EXPECT_EQ(r.rank_below, r.full_rank);
  EXPECT_EQ(r.rank_above, r.full_rank);
}

TEST(Vanishing, AgreesOnEverySample) {
  for (auto source : {ConditionSource::RigidityDeterminant, ConditionSource::Tower44Formula}) {
    const auto r = vanishing_rank_probe(tower(4, 4), FillStrategy::Chords, 100, 1, source);
    EXPECT_EQ(r.samples.size(), 100u);
    EXPECT_EQ(r.agreements, 100);
  }
}

TEST(Vanishing, NonSquareTowerRejected) {
  EXPECT_ERROR_CODE(vanishing_rank_probe(tower(4, 3), FillStrategy::Chords, 5, 1), ErrorCode::NotGenericallyIsostatic);
}

TEST(Conjecture, RatioIsConstant) {
  const auto r = conjecture_probe(50, 1);
  EXPECT_EQ(r.samples, 50);
  EXPECT_GE(r.ratios.size() + r.skipped.size(), 50u);
  EXPECT_LT(r.max_relative_deviation, 1e-8);
  EXPECT_LT(r.formula_deviation, 1e-8);
  EXPECT_TRUE(r.zero_sets_agree);
}

TEST(GenericDims, Towers) {
  EXPECT_EQ(generic_dims(tower(5, 3), FillStrategy::Auto, 10, 1).stress_dim, 2);
  EXPECT_EQ(generic_dims(tower(3, 5), FillStrategy::Auto, 10, 1).unresolved_dim, 2);
  const auto oct = generic_dims(label_faces(octahedron(), {}, {}), FillStrategy::Auto, 10, 1);
  EXPECT_EQ(oct.histogram.size(), 1u);
  EXPECT_EQ(oct.stress_dim, 0);
  EXPECT_EQ(oct.unresolved_dim, 0);
  EXPECT_TRUE(oct.outliers.empty());
}

TEST(GenericDims, SamplesAreInGeneralPosition) {
  const auto p = tower(4, 4);
  for (int s = 0; s < 20; ++s) EXPECT_TRUE(general_position_violations(p, sample_configuration(p, 2, s)).empty());
}
