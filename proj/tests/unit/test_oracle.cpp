// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "fbf/oracle.hpp"
#include "fbf/saddle.hpp"
#include "support.hpp"

using fbf::BepInstance;
using fbf::BoxSet;
using fbf::MonotoneMap;
using fbf::Point;
using fbf::ProxBifunction;
using fbf_test::pt;

namespace {

const BoxSet kUnit = BoxSet::cube(2, 0.0, 1.0);

BepInstance saddle_with(const fbf::EquilibriumBifunction& g) {
  return fbf::build_saddle_bep(fbf::example_problem(), g);
}

fbf::BifunctionFn lower_of(const BepInstance& inst) {
  return [&inst](const Point& x, const Point& y) { return inst.f(x, y); };
}

double zero_f(const Point&, const Point&) { return 0.0; }

}  // namespace

TEST(EpResidual, ExampleSolutionAndInterior) {
  const BepInstance inst = saddle_with(ProxBifunction::zero(kUnit));
  EXPECT_EQ(fbf::ep_residual(lower_of(inst), pt({0, 1}), kUnit, 101), 0.0);
  EXPECT_GT(fbf::ep_residual(lower_of(inst), pt({0.5, 0.5}), kUnit, 101), 0.0);
  EXPECT_EQ(fbf::ep_residual(zero_f, pt({0.3, 0.3}), kUnit, 11), 0.0);
}

TEST(DualEpResidual, VanishesAtSolution) {
  const BepInstance inst = saddle_with(ProxBifunction::zero(kUnit));
  EXPECT_EQ(fbf::dual_ep_residual(lower_of(inst), pt({0, 1}), kUnit, 101), 0.0);
  EXPECT_EQ(fbf::dual_ep_residual(zero_f, pt({0.7, 0.1}), kUnit, 11), 0.0);
  for (const Point& x : {pt({0.5, 0.5}), pt({1, 0}), pt({0.2, 0.9})}) {
    EXPECT_LE(fbf::dual_ep_residual(lower_of(inst), x, kUnit, 21),
              fbf::ep_residual(lower_of(inst), x, kUnit, 21) + 1e-12);
  }
}

TEST(SolveEpGrid, ExampleSingleton) {
  const BepInstance inst = saddle_with(ProxBifunction::zero(kUnit));
  const auto s = fbf::solve_ep_grid(lower_of(inst), kUnit, 101, 1e-9);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0], pt({0, 1}));
  for (const Point& x : s) EXPECT_EQ(fbf::dual_ep_residual(lower_of(inst), x, kUnit, 101), 0.0);
}

TEST(SolveEpGrid, ZeroBifunctionKeepsEveryPointInOrder) {
  const auto s = fbf::solve_ep_grid(zero_f, kUnit, 5, 1e-9);
  ASSERT_EQ(s.size(), 25u);
  EXPECT_EQ(s.front(), pt({0, 0}));
  EXPECT_EQ(s[1], pt({0, 0.25}));
  EXPECT_EQ(s.back(), pt({1, 1}));
}

TEST(SolveEpGrid, DimensionGuard) {
  EXPECT_THROW(fbf::solve_ep_grid(zero_f, BoxSet::cube(5, 0, 1), 3, 1e-9), fbf::UsageError);
}

TEST(SolveBepGrid, ProxSelectionPicksNearestGridPoint) {
  const BepInstance inst(MonotoneMap::zero(2), ProxBifunction(pt({0.3, 0.7}), 1.0, kUnit));
  const auto s = fbf::solve_bep_grid(inst, 101, 1e-9);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_NEAR(s[0][0], 0.3, 1e-15);
  EXPECT_NEAR(s[0][1], 0.7, 1e-15);
  // spacing 0.2: the center is equidistant from four grid points
  const auto coarse = fbf::solve_bep_grid(inst, 6, 1e-9);
  ASSERT_EQ(coarse.size(), 4u);
  EXPECT_NEAR(coarse[0][0], 0.2, 1e-15);
  EXPECT_NEAR(coarse[0][1], 0.6, 1e-15);
  EXPECT_NEAR(coarse[3][0], 0.4, 1e-15);
  EXPECT_NEAR(coarse[3][1], 0.8, 1e-15);
}

TEST(SolveBepGrid, SingletonLowerLevelIgnoresUpper) {
  const auto s = fbf::solve_bep_grid(saddle_with(ProxBifunction(pt({0.5, 0.5}), 1.0, kUnit)),
                                     101, 1e-9);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0], pt({0, 1}));
}

TEST(SolveBepGrid, ZeroUpperReturnsStageOne) {
  const BepInstance inst(MonotoneMap::zero(2), ProxBifunction::zero(kUnit));
  EXPECT_EQ(fbf::solve_bep_grid(inst, 7, 1e-9).size(), 49u);
}

TEST(SolveBepGrid, EmptyStageOneIsAnError) {
  // interior saddle point at (0.35, 0.35) misses the 3-point grid
  fbf::DenseMatrix m(1, 1);
  m << 1;
  const fbf::SaddleProblem sp(m, pt({-0.35}), pt({-0.35}), BoxSet::cube(1, 0, 1),
                              BoxSet::cube(1, 0, 1));
  const auto inst = fbf::build_saddle_bep(sp, ProxBifunction::zero(kUnit));
  EXPECT_THROW(fbf::solve_bep_grid(inst, 3, 1e-9), fbf::OracleError);
}

TEST(GridSpacing, WidestAxis) {
  EXPECT_DOUBLE_EQ(fbf::grid_spacing(BoxSet(pt({0, 0}), pt({1, 2})), 101), 0.02);
}
