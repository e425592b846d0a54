#include <cmath>

#include <gtest/gtest.h>

#include "kantian/equilibrium.hpp"
#include "kantian/error.hpp"
#include "test_util.hpp"

using namespace kantian;
using kantian::testing::qpg;
using kantian::testing::vec;

TEST(MkeResidual, Examples) {
  EXPECT_EQ(mke_residual(qpg(), vec({1.5, 1.5})).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_DOUBLE_EQ(mke_residual(qpg(), vec({1.25, 2}))[0], 0.6875);
  EXPECT_EQ(mke_residual(qpg(), vec({0, 0})).cwiseAbs().maxCoeff(), 0.0);
}

TEST(VerifyMke, SymmetricPointVerified) {
  const EquilibriumReport r = verify_mke(qpg(), vec({1.5, 1.5}), SolverConfig{});
  EXPECT_TRUE(r.verified());
  EXPECT_NEAR(r.oracle_argmax[0], 1.0, 1e-4);
  EXPECT_NEAR(r.oracle_argmax[1], 1.0, 1e-4);
}

TEST(VerifyMke, PositiveResidualFails) {
  const EquilibriumReport r = verify_mke(qpg(), vec({1.25, 2}), SolverConfig{});
  EXPECT_FALSE(r.verified());
  EXPECT_GT(r.oracle_argmax[0], 1.0 + 1e-3);
}

TEST(VerifyMke, NashIsNotMke) {
  EXPECT_FALSE(verify_mke(qpg(), vec({1, 1}), SolverConfig{}).verified());
}

TEST(SolveMke, QuadraticFromHalf) {
  const EquilibriumReport r = solve_mke(qpg(), vec({0.5, 0.5}), SolverConfig{});
  EXPECT_TRUE(r.verified());
  EXPECT_NEAR(r.x[0], 1.5, 1e-9);
  EXPECT_NEAR(r.x[1], 1.5, 1e-9);
}

TEST(SolveMke, StartAtRoot) {
  const EquilibriumReport r = solve_mke(qpg(), vec({1.5, 1.5}), SolverConfig{});
  EXPECT_LE(r.iterations, 1);
  EXPECT_TRUE(r.verified());
}

TEST(SolveMke, CournotSymmetricMatchesBisection) {
  const Game g = Game::linear_cournot(2, 10, 1, 1);
  // Symmetric residual t(10 - 2t - 1) - t^2 - t^2 = t(9 - 4t): bisection on [1, 4].
  auto r1 = [&](double t) { return mke_residual(g, vec({t, t}))[0]; };
  double lo = 1.0, hi = 4.0;
  for (int k = 0; k < 200; ++k) {
    const double mid = 0.5 * (lo + hi);
    (r1(mid) > 0 ? lo : hi) = mid;
  }
  const EquilibriumReport r = solve_mke(g, vec({2, 2}), SolverConfig{});
  EXPECT_TRUE(r.verified());
  EXPECT_NEAR(r.x[0], lo, 1e-9);
  EXPECT_NEAR(r.x[1], lo, 1e-9);
  EXPECT_NEAR(lo, 2.25, 1e-12);
}

TEST(SolveNash, Quadratic) {
  const EquilibriumReport r = solve_nash(qpg(), vec({0.3, 2}), SolverConfig{});
  EXPECT_TRUE(r.verified());
  EXPECT_NEAR(r.x[0], 1.0, 1e-9);
  EXPECT_NEAR(r.x[1], 1.0, 1e-9);
  EXPECT_NEAR(r.payoffs[0], 1.0, 1e-9);
}

TEST(SolveNash, NoExternalitiesCoincidesWithMke) {
  const Game g = Game::quadratic_public_goods(2, 1, 1, 0.0);
  const EquilibriumReport n = solve_nash(g, vec({0.5, 0.5}), SolverConfig{});
  const EquilibriumReport m = solve_mke(g, vec({0.5, 0.5}), SolverConfig{});
  EXPECT_NEAR((n.x - m.x).norm(), 0.0, 1e-8);
}

TEST(SolveNash, Cournot) {
  const EquilibriumReport r = solve_nash(Game::linear_cournot(2, 10, 1, 1), vec({1, 1}), SolverConfig{});
  EXPECT_TRUE(r.verified());
  EXPECT_NEAR(r.x[0], 3.0, 1e-6);
  EXPECT_NEAR(r.x[1], 3.0, 1e-6);
}

TEST(SolveNash, Commons) {
  const EquilibriumReport r = solve_nash(Game::commons(2, 0.5, 0.5), vec({1, 1}), SolverConfig{});
  EXPECT_TRUE(r.verified());
  EXPECT_NEAR(r.x.sum(), 2.25, 1e-6);
}

TEST(Names, KindAndVerdict) {
  EXPECT_EQ(kind_name(EquilibriumKind::MKE), "MKE");
  EXPECT_EQ(verdict_name(Verdict::Verified), "verified");
}
