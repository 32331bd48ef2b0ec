#include <gtest/gtest.h>

#include "rigidswap/error.hpp"
#include "rigidswap/fixtures.hpp"
#include "rigidswap/random.hpp"
#include "rigidswap/statics.hpp"
#include "test_util.hpp"

using namespace rigidswap;

namespace {

Point4 random_point(Rng& rng) { return {rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(0.5, 1.5)}; }

double max_abs(const Extensor2& e) {
  double m = 0;
  for (double x : e.c) m = std::max(m, std::abs(x));
  return m;
}

BarFramework octahedron_frame() {
  return fill_blocks(label_faces(octahedron(), {}, {}), octahedron_configuration());
}

}  // namespace

TEST(Join, UnitExample) {
  const Extensor2 e = join(Point4{0, 0, 0, 1}, Point4{1, 0, 0, 1});
  EXPECT_EQ(e, (Extensor2{{-1, 0, 0, 0, 0, 0}}));
}

TEST(Join, AntisymmetricAndDecomposable) {
  Rng rng(11);
  for (int i = 0; i < 50; ++i) {
    const Point4 a = random_point(rng), b = random_point(rng);
    const Extensor2 ab = join(a, b), ba = join(b, a);
    EXPECT_LT(max_abs(ab + ba), 1e-15);
    EXPECT_EQ(join(a, a), Extensor2{});
    EXPECT_NEAR(grassmann_plucker(ab), 0.0, 1e-14);
    for (double x : join_with_point(ab, a)) EXPECT_NEAR(x, 0.0, 1e-14);
    for (double x : join_with_point(ab, b)) EXPECT_NEAR(x, 0.0, 1e-14);
  }
}

TEST(Join, ExtensorMinorMatchesDirectMinor) {
  Rng rng(12);
  const Point4 a = random_point(rng), b = random_point(rng);
  const Extensor2 e = join(a, b);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) EXPECT_NEAR(extensor_minor(e, i, j), a[i] * b[j] - a[j] * b[i], 1e-15);
}

TEST(Join, SumOfLinesIsNotDecomposable) {
  const Extensor2 s = join(Point4{1, 0, 0, 1}, Point4{0, 1, 0, 1}) + join(Point4{0, 0, 1, 1}, Point4{1, 1, 1, 1});
  EXPECT_GT(std::abs(grassmann_plucker(s)), 1e-3);
}

TEST(BarLoad, EquilibriumAndAntisymmetry) {
  Rng rng(3);
  Configuration pos{random_point(rng), random_point(rng), random_point(rng)};
  const BarFramework forward(pos, {Bar{0, 1}, Bar{1, 2}});
  const BarFramework backward(pos, {Bar{1, 0}, Bar{2, 1}});
  for (int bar = 0; bar < 2; ++bar) {
    const LoadAssignment l = bar_load(forward, bar);
    EXPECT_TRUE(is_equilibrium(l));
    EXPECT_TRUE(loads_pass_through_joints(l, pos));
    // Relabelling the endpoints negates the load at the first endpoint and
    // leaves the assignment as a whole unchanged.
    const LoadAssignment r = bar_load(backward, bar);
    const Bar& b = forward.bars()[bar];
    EXPECT_EQ(r.loads[b.b], -l.loads[b.a]);
    EXPECT_EQ(r.flatten(), l.flatten());
  }
  const Eigen::VectorXd both = bar_load(forward, 0).flatten() - 2.5 * bar_load(forward, 1).flatten();
  EXPECT_TRUE(is_equilibrium(LoadAssignment::unflatten(both)));

  LoadAssignment single = bar_load(forward, 0);
  single.loads[1] = Extensor2{};
  EXPECT_FALSE(is_equilibrium(single));
}

TEST(BarLoad, MatrixRowsAreBarLoads) {
  const BarFramework fw = octahedron_frame();
  const Eigen::MatrixXd m = bar_load_matrix(fw);
  ASSERT_EQ(m.rows(), fw.bar_count());
  ASSERT_EQ(m.cols(), 6 * fw.vertex_count());
  for (int b = 0; b < fw.bar_count(); ++b) EXPECT_LT((m.row(b).transpose() - bar_load(fw, b).flatten()).norm(), 1e-15);
}

TEST(Fill, ChordsOnSquareBlockIsK4) {
  const auto p = tower(4, 4);
  const BarFramework fw = fill_blocks(p, tower_configuration(4, 4, 1), {.strategy = FillStrategy::Chords});
  const BlockFill* fill = fw.fill_for(0);
  ASSERT_NE(fill, nullptr);
  EXPECT_EQ(fill->vertex_count(), 4);
  EXPECT_EQ(fill->edge_count(), 6);
  EXPECT_EQ(fw.bar_count(), p.polyhedron().edge_count() + 2);
}

TEST(Fill, TriangleBlockAddsNothing) {
  const auto p = label_faces(octahedron(), {0}, {});
  for (auto strategy : {FillStrategy::Auto, FillStrategy::Chords}) {
    const BarFramework fw = fill_blocks(p, octahedron_configuration(), {.strategy = strategy});
    EXPECT_EQ(fw.vertex_count(), 6);
    EXPECT_EQ(fw.bar_count(), 12);
  }
}

TEST(Fill, CoplanarSquareNeedsApex) {
  const auto p = tower(4, 4);
  const Configuration flat = tower_configuration(4, 4, 0, 0.0);
  const std::vector<VertexId> boundary = p.polyhedron().face(0);
  ASSERT_TRUE(coplanar({flat[0], flat[1], flat[2], flat[3]}));
  EXPECT_ERROR_CODE(make_fill(0, boundary, flat, FillStrategy::Chords, {}), ErrorCode::FillDependentAfterRetries);

  const BlockFill cone = make_fill(0, boundary, flat, FillStrategy::ConeOverFan, {.seed = 5});
  ASSERT_EQ(cone.added_positions.size(), 1u);
  EXPECT_GT(normalized_bracket(flat[0], flat[1], flat[2], cone.added_positions[0]), 1e-3);
  EXPECT_TRUE(fill_is_isostatic(cone, flat));
  EXPECT_EQ(make_fill(0, boundary, flat, FillStrategy::Auto, {.seed = 5}).strategy, FillStrategy::ConeOverFan);
}

TEST(Fill, CollinearBoundaryRejected) {
  const auto p = tower(4, 4);
  Configuration c = tower_configuration(4, 4, 0, 0.0);
  c[1] = {0.5 * (c[0][0] + c[2][0]), 0.5 * (c[0][1] + c[2][1]), 1, 1};
  EXPECT_ERROR_CODE(make_fill(0, p.polyhedron().face(0), c, FillStrategy::ConeOverFan, {}),
                    ErrorCode::CollinearBlockBoundary);
}

TEST(Fill, EveryStrategyIsIsostatic) {
  for (int s = 4; s <= 7; ++s)
    for (auto strategy : {FillStrategy::Chords, FillStrategy::ConeOverFan}) {
      const auto p = tower(s, 3);
      const Configuration c = tower_configuration(s, 3, 2);
      const BlockFill fill = make_fill(0, p.polyhedron().face(0), c, strategy, {.seed = 9});
      EXPECT_TRUE(fill_is_isostatic(fill, c)) << s;
      EXPECT_EQ(fill.edge_count(), 3 * fill.vertex_count() - 6) << s;
    }
}

TEST(SelfStress, KnownDimensions) {
  EXPECT_EQ(self_stress_basis(octahedron_frame()).cols(), 0);
  const BarFramework t43 = fill_blocks(tower(4, 3), tower_configuration(4, 3, 4));
  EXPECT_EQ(self_stress_basis(t43).cols(), 1);
  Rng rng(1);
  EXPECT_EQ(self_stress_basis(BarFramework({random_point(rng), random_point(rng)}, {Bar{0, 1}})).cols(), 0);
}

TEST(SelfStress, BasisVectorsAreInEquilibrium) {
  for (const auto& f : fixture_catalog()) {
    const BarFramework fw = fill_blocks(f.polyhedron, f.configuration(3));
    const Eigen::MatrixXd basis = self_stress_basis(fw);
    const double scale = bar_extensor_scale(fw);
    for (int k = 0; k < basis.cols(); ++k) EXPECT_LT(equilibrium_residual(fw, basis.col(k)), 1e-10 * scale) << f.name;
  }
}

TEST(Resolve, NegatedBarLoad) {
  const BarFramework fw = octahedron_frame();
  for (int b = 0; b < fw.bar_count(); ++b) {
    LoadAssignment l = bar_load(fw, b);
    for (auto& x : l.loads) x = -x;
    const Eigen::VectorXd lambda = resolve_load(fw, l);
    Eigen::VectorXd expected = Eigen::VectorXd::Zero(fw.bar_count());
    expected[b] = 1;
    EXPECT_LT((lambda - expected).norm(), 1e-10) << b;
  }
}

TEST(Resolve, ZeroLoad) {
  const BarFramework fw = octahedron_frame();
  LoadAssignment zero{std::vector<Extensor2>(6)};
  EXPECT_LT(resolve_load(fw, zero).norm(), 1e-15);
}

TEST(Resolve, GenericEquilibriumLoad) {
  // Combination of loads along the three diagonals the octahedron lacks.
  const BarFramework fw = octahedron_frame();
  const BarFramework diagonals(fw.positions(), {Bar{0, 1}, Bar{2, 3}, Bar{4, 5}});
  Rng rng(8);
  Eigen::VectorXd l = Eigen::VectorXd::Zero(36);
  for (int b = 0; b < 3; ++b) l += rng.uniform(-1, 1) * bar_load(diagonals, b).flatten();
  const LoadAssignment load = LoadAssignment::unflatten(l);
  ASSERT_TRUE(is_equilibrium(load));
  const Eigen::VectorXd lambda = resolve_load(fw, load);
  const Eigen::VectorXd residual = l + bar_load_matrix(fw).transpose() * lambda;
  EXPECT_LT(residual.norm(), 1e-9);
}

TEST(Resolve, NonEquilibriumRejected) {
  const BarFramework fw = octahedron_frame();
  LoadAssignment l = bar_load(fw, 0);
  l.loads[fw.bars()[0].a] = Extensor2{};
  EXPECT_ERROR_CODE(resolve_load(fw, l), ErrorCode::NotEquilibrium);
}

TEST(Resolve, UnresolvableOnFlexibleFramework) {
  const BarFramework t34 = fill_blocks(tower(3, 4), tower_configuration(3, 4, 4));
  // Loads of bars that the missing degree of freedom cannot carry.
  const auto extra = BarFramework(t34.positions(), {Bar{0, 4}, Bar{1, 5}, Bar{2, 6}, Bar{0, 5}, Bar{1, 6}, Bar{2, 3},
                                                    Bar{0, 6}, Bar{1, 3}, Bar{2, 4}});
  bool some_unresolvable = false;
  for (int b = 0; b < extra.bar_count(); ++b) {
    try {
      (void)resolve_load(t34, bar_load(extra, b));
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::Unresolvable);
      some_unresolvable = true;
    }
  }
  EXPECT_TRUE(some_unresolvable);
}

TEST(StaticDims, KnownCases) {
  EXPECT_EQ(static_dims(octahedron_frame()), (StaticDims{12, 0, 0}));
  const auto t43 = static_dims(fill_blocks(tower(4, 3), tower_configuration(4, 3, 1)));
  EXPECT_EQ(t43.stress_dim, 1);
  EXPECT_EQ(t43.unresolved_dim, 0);
  const auto t34 = static_dims(fill_blocks(tower(3, 4), tower_configuration(3, 4, 1)));
  EXPECT_EQ(t34.stress_dim, 0);
  EXPECT_EQ(t34.unresolved_dim, 1);
}

TEST(StaticDims, AgreesWithEuclideanRigidity) {
  for (const auto& f : fixture_catalog())
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      const BarFramework fw = fill_blocks(f.polyhedron, f.configuration(seed));
      const StaticDims d = static_dims(fw);
      const auto oracle = testutil::euclidean_dims(fw);
      EXPECT_EQ(d.stress_dim, oracle.stress_dim) << f.name << " seed " << seed;
      EXPECT_EQ(d.unresolved_dim, oracle.motion_dim) << f.name << " seed " << seed;
    }
}

TEST(StaticDims, ExactMatchesNumeric) {
  for (const auto& f : fixture_catalog()) {
    const BarFramework fw = fill_blocks(f.polyhedron, f.configuration(2));
    EXPECT_EQ(static_dims(fw), static_dims_exact(fw)) << f.name;
  }
}

TEST(StaticDims, RankNullity) {
  for (const auto& f : fixture_catalog()) {
    const BarFramework fw = fill_blocks(f.polyhedron, f.configuration(5));
    const StaticDims d = static_dims(fw);
    EXPECT_EQ(d.stress_dim - d.unresolved_dim, fw.bar_count() - (3 * fw.vertex_count() - 6)) << f.name;
  }
}

TEST(StaticDims, ProjectiveInvariance) {
  for (const auto& f : fixture_catalog()) {
    const Configuration c = f.configuration(1);
    const BarFramework fw = fill_blocks(f.polyhedron, c);
    const StaticDims before = static_dims(fw);
    for (std::uint64_t s = 0; s < 3; ++s) {
      const Eigen::Matrix4d m = random_projective_transform(s);
      const BarFramework moved(apply_projective(m, fw.positions()), fw.bars());
      const StaticDims after = static_dims(moved);
      EXPECT_EQ(after.stress_dim, before.stress_dim) << f.name;
      EXPECT_EQ(after.unresolved_dim, before.unresolved_dim) << f.name;
    }
  }
}

TEST(StaticDims, CollinearJointsRejected) {
  const BarFramework fw({{0, 0, 0, 1}, {1, 0, 0, 1}, {2, 0, 0, 1}}, {Bar{0, 1}, Bar{1, 2}});
  EXPECT_ERROR_CODE(static_dims(fw), ErrorCode::DegenerateConfiguration);
}

TEST(CutSet, StressesBalanceAcrossCuts) {
  for (const char* name : {"tower-4-3", "tower-5-3", "cube-two-blocks"}) {
    const Fixture& f = fixture(name);
    const BarFramework fw = fill_blocks(f.polyhedron, f.configuration(6));
    const Eigen::MatrixXd basis = self_stress_basis(fw);
    ASSERT_GT(basis.cols(), 0) << name;
    const auto cuts = face_cycle_cuts(f.polyhedron, fw, 10, 3);
    ASSERT_FALSE(cuts.empty()) << name;
    const double scale = bar_extensor_scale(fw);
    for (const auto& cut : cuts) {
      for (int k = 0; k < basis.cols(); ++k) EXPECT_LT(norm(cut_set_sum(fw, basis.col(k), cut)), 1e-9 * scale) << name;
      EXPECT_EQ(cut_set_sum(fw, Eigen::VectorXd::Zero(fw.bar_count()), cut), Extensor2{});
    }
  }
}

TEST(CutSet, NonStressGivesNonzeroSum) {
  const Fixture& f = fixture("tower-4-3");
  const BarFramework fw = fill_blocks(f.polyhedron, f.configuration(6));
  const auto cuts = face_cycle_cuts(f.polyhedron, fw, 5, 1);
  Rng rng(4);
  Eigen::VectorXd junk(fw.bar_count());
  for (auto& x : junk) x = rng.uniform(-1, 1);
  int nonzero = 0;
  for (const auto& cut : cuts) nonzero += norm(cut_set_sum(fw, junk, cut)) > 1e-6;
  EXPECT_GT(nonzero, 0);
}

TEST(CutSet, NotACutRejected) {
  const BarFramework fw = octahedron_frame();
  EXPECT_ERROR_CODE(cut_set_sum(fw, Eigen::VectorXd::Zero(12), {0}), ErrorCode::NotACutSet);
}

TEST(Substitution, PreservesStressDim) {
  for (const char* name : {"tower-4-4", "tower-4-3", "tower-5-3", "cube-two-blocks"}) {
    const Fixture& f = fixture(name);
    const Configuration c = f.configuration(2);
    const BarFramework chords = fill_blocks(f.polyhedron, c, {.strategy = FillStrategy::Chords});
    const int before = static_dims(chords).stress_dim;
    BarFramework current = chords;
    for (FaceId b : f.polyhedron.blocks()) {
      const BlockFill cone =
          make_fill(b, f.polyhedron.polyhedron().face(b), c, FillStrategy::ConeOverFan, {.seed = 13});
      current = substitute_block(f.polyhedron, current, b, cone);
      EXPECT_EQ(static_dims(current).stress_dim, before) << name;
    }
  }
}

TEST(Substitution, SameFillIsIdentity) {
  const Fixture& f = fixture("tower-4-4");
  const BarFramework fw = fill_blocks(f.polyhedron, f.configuration(0));
  const BarFramework same = substitute_block(f.polyhedron, fw, 0, *fw.fill_for(0));
  EXPECT_EQ(same.positions(), fw.positions());
  ASSERT_EQ(same.bar_count(), fw.bar_count());
  for (int b = 0; b < fw.bar_count(); ++b) {
    EXPECT_EQ(same.bars()[b].a, fw.bars()[b].a);
    EXPECT_EQ(same.bars()[b].b, fw.bars()[b].b);
  }
}

TEST(Substitution, DependentFillRejected) {
  const Fixture& f = fixture("tower-4-4");
  const Configuration c = f.configuration(0);
  const BarFramework fw = fill_blocks(f.polyhedron, c);
  BlockFill bad = *fw.fill_for(0);
  bad.added_edges.pop_back();
  EXPECT_ERROR_CODE(substitute_block(f.polyhedron, fw, 0, bad), ErrorCode::NewFillNotIsostatic);
}

TEST(CutSet, CyclesThroughBlocksFillShortfall) {
  // Keeping the block triangle whole leaves only seven cuts on this octahedron.
  const Fixture& f = fixture("oct-block-hole");
  const BarFramework fw = fill_blocks(f.polyhedron, f.configuration(0));
  const auto cuts = face_cycle_cuts(f.polyhedron, fw, 10, 0);
  ASSERT_EQ(cuts.size(), 10u);
  const auto& block = f.polyhedron.polyhedron().face(f.polyhedron.blocks()[0]);
  int splitting = 0;
  for (const auto& cut : cuts)
    for (int e : cut) {
      const Bar& b = fw.bars()[e];
      const bool a_in = std::count(block.begin(), block.end(), b.a) > 0;
      const bool b_in = std::count(block.begin(), block.end(), b.b) > 0;
      if (a_in && b_in) {
        ++splitting;
        break;
      }
    }
  EXPECT_EQ(splitting, 3);
  EXPECT_NO_THROW((void)cut_set_sum(fw, Eigen::VectorXd::Zero(fw.bar_count()), cuts.back()));
}
