#include <cmath>

#include <gtest/gtest.h>

#include "kantian/error.hpp"
#include "kantian/select.hpp"
#include "test_util.hpp"

using namespace kantian;
using kantian::testing::qpg;
using kantian::testing::vec;

TEST(Select, UtilitarianQuadratic) {
  const Selection s = select_point(qpg(), Criterion{CriterionKind::Utilitarian, {}}, 25, SolverConfig{});
  EXPECT_NEAR(s.point.x[0], 1.5, 1e-8);
  EXPECT_NEAR(s.point.x[1], 1.5, 1e-8);
}

TEST(Select, SymmetricGamesPickSymmetricPoint) {
  const Game games[] = {qpg(), Game::linear_cournot(2, 10, 1, 1), Game::commons(2, 0.5, 0.5)};
  for (const Game& g : games)
    for (CriterionKind k : {CriterionKind::Maximin, CriterionKind::NashBargaining,
                            CriterionKind::KalaiSmorodinsky}) {
      const Selection s = select_point(g, Criterion{k, {}}, 25, SolverConfig{});
      EXPECT_NEAR(s.point.payoffs[0], s.point.payoffs[1], 1e-5)
          << family_name(g.family()) << " " << criterion_name(k);
    }
}

TEST(Select, NashBargainingFromNashPayoffs) {
  const Selection s = select_point(qpg(), Criterion{CriterionKind::NashBargaining, vec({1, 1})}, 25,
                                   SolverConfig{});
  EXPECT_NEAR(s.point.x[0], 1.5, 1e-5);
  EXPECT_NEAR(s.point.x[1], 1.5, 1e-5);
  EXPECT_NEAR(s.objective, 2 * std::log(0.125), 1e-8);
}

TEST(Select, DefaultDisagreementIsNash) {
  const Selection s = select_point(qpg(), Criterion{CriterionKind::NashBargaining, {}}, 9, SolverConfig{});
  EXPECT_NEAR(s.disagreement[0], 1.0, 1e-8);
  EXPECT_NEAR(s.disagreement[1], 1.0, 1e-8);
}

TEST(Select, InadmissibleDisagreement) {
  EXPECT_THROW(select_point(qpg(), Criterion{CriterionKind::NashBargaining, vec({5, 5})}, 9, SolverConfig{}),
               InadmissibleError);
}

TEST(Select, MaximinMonotoneInOwnProductivity) {
  double last = -1.0;
  for (double a1 : {0.8, 1.0, 1.3, 1.7}) {
    const Game g = Game::quadratic_public_goods(vec({a1, 1.0}), vec({1, 1}), 0.5);
    const Selection s = select_point(g, Criterion{CriterionKind::Maximin, {}}, 25, SolverConfig{});
    EXPECT_GE(s.point.payoffs[0], last - 1e-9);
    last = s.point.payoffs[0];
  }
}

TEST(Select, CriterionNames) {
  EXPECT_EQ(parse_criterion("rawlsian"), CriterionKind::Maximin);
  EXPECT_EQ(parse_criterion("ks"), CriterionKind::KalaiSmorodinsky);
  EXPECT_THROW(parse_criterion("egalitarian"), DomainError);
}
