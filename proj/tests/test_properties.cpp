#include <random>

#include <gtest/gtest.h>

#include "kantian/equilibrium.hpp"
#include "kantian/pareto.hpp"
#include "kantian/shift.hpp"
#include "test_util.hpp"

using namespace kantian;
using kantian::testing::vec;

namespace {

std::vector<Game> bundled() {
  return {Game::quadratic_public_goods(2, 1, 1, 0.5),
          Game::quadratic_public_goods(vec({1, 1.5, 2}), vec({1, 1, 2}), 0.3),
          Game::linear_cournot(2, 10, 1, 1),
          Game::linear_cournot(12, 1, vec({1, 1.5, 2})),
          Game::commons(2, 0.5, 0.5),
          Game::commons(3, 0.5, 0.5)};
}

}  // namespace

TEST(Properties, ShiftInvariantsAcrossTheta) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.02, 0.98);
  for (const Game& g : bundled()) {
    const FrontierSweep s = sweep_frontier(g, 6, SolverConfig{});
    ASSERT_FALSE(s.points.empty());
    for (const ParetoPoint& p : s.points) {
      const double theta = u(rng);
      const ShiftPlan plan = build_shift(g, p, theta, SolverConfig{});
      EXPECT_LE(plan.orthogonality, 1e-9);
      EXPECT_GE(plan.c.minCoeff(), 0.0);
      EXPECT_TRUE((plan.c.array() < plan.x_p.array()).all());
      EXPECT_TRUE(((plan.c + plan.z_star).array() == plan.x_p.array()).all());
      EXPECT_TRUE(plan.verified()) << family_name(g.family());
    }
  }
}

TEST(Properties, SweepHasNoDominatedPairs) {
  for (const Game& g : bundled()) {
    const FrontierSweep s = sweep_frontier(g, 12, SolverConfig{});
    for (const auto& a : s.points)
      for (const auto& b : s.points) EXPECT_FALSE(dominates(a.payoffs, b.payoffs, 1e-9));
  }
}

TEST(Properties, PositiveMkeIsEfficient) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.2, 3.0);
  int found = 0;
  for (const Game& g : bundled()) {
    for (int s = 0; s < 5; ++s) {
      Vector x0(g.players());
      for (auto& xi : x0) xi = u(rng);
      try {
        const EquilibriumReport r = solve_mke(g, x0, SolverConfig{});
        ++found;
        EXPECT_TRUE(certify_efficiency(g, r.x, 1e-5).accepted) << family_name(g.family());
      } catch (const Error&) {
      }
    }
  }
  // Cournot with unequal costs has no interior MKE; the other games do.
  EXPECT_GT(found, 0);
}

TEST(Properties, SweepDeterministic) {
  for (const Game& g : bundled()) {
    const FrontierSweep a = sweep_frontier(g, 7, SolverConfig{});
    const FrontierSweep b = sweep_frontier(g, 7, SolverConfig{});
    ASSERT_EQ(a.points.size(), b.points.size());
    for (std::size_t k = 0; k < a.points.size(); ++k)
      EXPECT_TRUE((a.points[k].x.array() == b.points[k].x.array()).all());
  }
}
