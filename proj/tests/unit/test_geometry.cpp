// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fbf/geometry.hpp"
#include "support.hpp"

using fbf::BoxSet;
using fbf::DenseMatrix;
using fbf::Point;
using fbf_test::pt;

TEST(Inner, OrthogonalAndNorm) {
  EXPECT_EQ(fbf::inner(pt({1, 0}), pt({0, 1})), 0.0);
  EXPECT_EQ(fbf::inner(pt({1, 2}), pt({1, 2})), 5.0);
  EXPECT_EQ(fbf::inner(pt({0.5, 0.5}), pt({1.5, -1.5})), 0.0);
}

TEST(Inner, DimensionMismatchThrows) {
  EXPECT_THROW(fbf::inner(pt({1, 2}), pt({1})), fbf::UsageError);
}

TEST(Inner, CauchySchwarzOnSamples) {
  std::mt19937_64 rng(7);
  const BoxSet region = BoxSet::cube(4, -3.0, 3.0);
  for (int s = 0; s < 10'000; ++s) {
    const Point a = region.sample(rng);
    const Point b = region.sample(rng);
    EXPECT_LE(std::abs(fbf::inner(a, b)), a.norm() * b.norm() * (1.0 + 1e-12));
  }
}

TEST(ProjectBox, Clamps) {
  const BoxSet unit = BoxSet::cube(2, 0.0, 1.0);
  EXPECT_EQ(fbf::project_box(pt({-0.25, 1.25}), unit), pt({0, 1}));
  EXPECT_EQ(fbf::project_box(pt({0.5, 0.5}), unit), pt({0.5, 0.5}));
  const BoxSet mixed(pt({0, -1}), pt({1, 0}));
  EXPECT_EQ(fbf::project_box(pt({2, -3}), mixed), pt({1, -1}));
}

TEST(ProjectBox, FirmlyNonexpansiveAndIdempotent) {
  std::mt19937_64 rng(11);
  const BoxSet k(pt({0, -1, 2}), pt({1, 0, 5}));
  const BoxSet region = k.inflated(3.0);
  for (int s = 0; s < 10'000; ++s) {
    const Point x = region.sample(rng);
    const Point y = region.sample(rng);
    const Point d = k.project(x) - k.project(y);
    EXPECT_LE(d.squaredNorm(), d.dot(x - y) + 1e-14);
    EXPECT_EQ(k.project(k.project(x)), k.project(x));
    EXPECT_TRUE(k.contains(k.project(x)));
  }
}

TEST(BoxSet, RejectsEmptyAndMismatched) {
  EXPECT_THROW(BoxSet(pt({1}), pt({0})), fbf::UsageError);
  EXPECT_THROW(BoxSet(pt({0, 0}), pt({1})), fbf::UsageError);
  EXPECT_THROW(BoxSet(pt({NAN}), pt({1})), fbf::UsageError);
}

TEST(BoxSet, VerticesAreLexicographic) {
  const BoxSet k(pt({0, 10}), pt({1, 20}));
  const auto v = k.vertices();
  ASSERT_EQ(v.size(), 4u);
  EXPECT_EQ(v[0], pt({0, 10}));
  EXPECT_EQ(v[1], pt({0, 20}));
  EXPECT_EQ(v[2], pt({1, 10}));
  EXPECT_EQ(v[3], pt({1, 20}));
}

TEST(BoxSet, GridIncludesEndpointsAndCollapsesDegenerateAxes) {
  const BoxSet k(pt({0, 2}), pt({1, 2}));
  const auto g = k.grid(5);
  ASSERT_EQ(g.size(), 5u);
  EXPECT_EQ(g.front(), pt({0, 2}));
  EXPECT_EQ(g.back(), pt({1, 2}));
  EXPECT_EQ(g[2], pt({0.5, 2}));
  EXPECT_THROW(k.grid(1), fbf::UsageError);
}

TEST(BoxSet, SupportFunction) {
  const BoxSet k(pt({0, -1}), pt({1, 2}));
  EXPECT_DOUBLE_EQ(k.support(pt({1, 1})), 3.0);
  EXPECT_DOUBLE_EQ(k.support(pt({-1, -2})), 2.0);
}

TEST(BoxSet, InflatedKeepsCenter) {
  const BoxSet k = BoxSet::cube(2, 0.0, 1.0).inflated(2.0);
  EXPECT_EQ(k.lower(), pt({-0.5, -0.5}));
  EXPECT_EQ(k.upper(), pt({1.5, 1.5}));
}

TEST(SpectralNorm, ClosedFormCases) {
  DenseMatrix one(1, 1);
  one << 1;
  EXPECT_NEAR(fbf::spectral_norm(one), 1.0, 1e-10);
  DenseMatrix diag = DenseMatrix::Zero(2, 2);
  diag(0, 0) = 3;
  diag(1, 1) = 4;
  EXPECT_NEAR(fbf::spectral_norm(diag), 4.0, 4e-10);
  DenseMatrix rot(2, 2);
  rot << 0, 1, -1, 0;
  EXPECT_NEAR(fbf::spectral_norm(rot), 1.0, 1e-10);
  EXPECT_EQ(fbf::spectral_norm(DenseMatrix::Zero(3, 2)), 0.0);
}

TEST(SpectralNorm, OnesStartIsNotDominant) {
  // ones is the eigenvector of the smaller eigenvalue 2
  DenseMatrix m(2, 2);
  m << 3, -1, -1, 3;
  EXPECT_NEAR(fbf::spectral_norm(m), 4.0, 4e-10);
}

TEST(SpectralNorm, RectangularReference) {
  DenseMatrix m(2, 3);
  m << 1, 2, 0, 0.5, -1, 3;
  EXPECT_NEAR(fbf::spectral_norm(m), 3.2631804509729396, 3.3e-10);
}

TEST(SpectralNorm, BoundsSampledRatios) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n01;
  DenseMatrix m(4, 3);
  for (int i = 0; i < m.size(); ++i) m.data()[i] = n01(rng);
  const double s = fbf::spectral_norm(m);
  for (int t = 0; t < 1000; ++t) {
    Point v(3);
    for (int i = 0; i < 3; ++i) v[i] = n01(rng);
    EXPECT_LE((m * v).norm() / v.norm(), s * (1.0 + 1e-10));
  }
}

TEST(SpectralNorm, BadArguments) {
  DenseMatrix m = DenseMatrix::Identity(2, 2);
  EXPECT_THROW(fbf::spectral_norm(m, 0.0), fbf::UsageError);
  EXPECT_THROW(fbf::spectral_norm(m, 1e-10, 0), fbf::UsageError);
}

TEST(SpectralNorm, ExhaustedIterationsCarryEstimate) {
  DenseMatrix m(2, 2);
  m << 1, 0.999, 0.999, 1.001;
  try {
    fbf::spectral_norm(m, 1e-15, 1);
    FAIL() << "expected ConvergenceError";
  } catch (const fbf::ConvergenceError& e) {
    EXPECT_EQ(e.last().size(), 1);
    EXPECT_GT(e.last()[0], 0.0);
  }
}
