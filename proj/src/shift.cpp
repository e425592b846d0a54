#include "kantian/shift.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "kantian/error.hpp"

namespace kantian {

namespace {

constexpr double kMargin = 1e-9;

// z with fl(c + z) == x; fl(x - c) is off by at most one ulp in rare ties.
Vector exact_split(const Vector& x, const Vector& c) {
  Vector z = x - c;
  for (int i = 0; i < x.size(); ++i) {
    for (int tries = 0; tries < 4 && c[i] + z[i] != x[i]; ++tries)
      z[i] = std::nextafter(z[i], c[i] + z[i] < x[i] ? std::numeric_limits<double>::infinity()
                                                      : -std::numeric_limits<double>::infinity());
  }
  return z;
}

std::shared_ptr<const GameModel> borrow(const GameModel& game) {
  return std::shared_ptr<const GameModel>(&game, [](const GameModel*) {});
}

}  // namespace

ShiftVerificationError::ShiftVerificationError(ShiftPlan plan)
    : InconsistencyError(fmt::format(
          "shifted profile failed MKE verification (residual {:.3e})", plan.orthogonality)),
      plan_(std::move(plan)) {}

Vector tangent_direction(const GameModel& game, const ParetoPoint& p, double rank_tol) {
  require_profile(game, p.x);
  if (!is_interior(p.x)) throw DomainError("tangent_direction needs an interior point");
  const std::vector<Vector> basis = nullspace(game.gradient(p.x), rank_tol);
  if (basis.empty())
    throw NotEfficientError("gradient matrix has full rank: the point is not efficient");

  Vector v;
  if (basis.size() == 1) {
    v = basis.front();
    if (v.sum() < 0.0) v = -v;
  } else {
    // Gordan: either some v in span(B) is > 0, or some y >= 0, y != 0 is
    // orthogonal to span(B). The min-norm point of conv{P e_i} decides it and,
    // when nonzero, has every component >= its squared norm.
    Matrix b(p.x.size(), static_cast<int>(basis.size()));
    for (int k = 0; k < b.cols(); ++k) b.col(k) = basis[k];
    const Matrix proj = b * b.transpose();
    const Vector y = simplex_least_squares(proj);
    v = proj * y;
    if (v.norm() <= 1e-12) throw NoShiftDirectionError("no strictly positive tangent direction");
    v.normalize();
  }
  if (v.minCoeff() < kMargin)
    throw NoShiftDirectionError(fmt::format(
        "common tangent has a non-positive component ({:.3g}); no interior shift exists",
        v.minCoeff()));
  return v;
}

ShiftPlan build_shift(const GameModel& game, const ParetoPoint& p, double theta,
                      const SolverConfig& cfg, const MkeCheck& check) {
  if (!(theta > 0.0 && theta < 1.0)) throw DomainError("theta must lie in (0, 1)");
  require_profile(game, p.x);
  if (!is_interior(p.x)) throw DomainError("build_shift needs an interior point");

  const int n = game.players();
  const GradientMatrix g = game.gradient(p.x);
  ShiftPlan plan;
  plan.x_p = p.x;
  plan.theta = theta;

  if (relative_residual(g, p.x) <= check.residual_tol) {
    plan.origin_tangent = true;
    plan.eps = p.x.norm();
    plan.v = p.x / plan.eps;
    plan.c = Vector::Zero(n);
  } else {
    plan.v = tangent_direction(game, p, cfg.rank_tol);
    double eps_max = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) eps_max = std::min(eps_max, p.x[i] / plan.v[i]);
    plan.eps = theta * eps_max;
    plan.c = (p.x - plan.eps * plan.v).cwiseMax(0.0);
  }
  plan.z_star = exact_split(p.x, plan.c);
  plan.orthogonality = relative_residual(g, p.x - plan.c);

  const TransformedGame shifted = shifted_game(borrow(game), plan.c);
  plan.verification = verify_mke(shifted, plan.z_star, cfg, check);
  if (!plan.verified()) throw ShiftVerificationError(std::move(plan));
  return plan;
}

TangentLine tangent_line_2d(const GameModel& game, const ParetoPoint& p) {
  if (game.players() != 2) throw DomainError("tangent_line_2d is defined for two players");
  require_profile(game, p.x);
  const GradientMatrix g = game.gradient(p.x);
  if (g(0, 0) == 0.0) throw DomainError("player 1's own partial vanishes: vertical tangent");
  const double ratio = g(0, 1) / g(0, 0);
  return {-ratio, p.x[0] + ratio * p.x[1]};
}

}  // namespace kantian
