#pragma once

// Lower-bound shifts that make a chosen interior Pareto point an MKE.
//
// At an interior efficient point every payoff gradient is orthogonal to a
// common tangent direction v. Moving the origin to c = x_p - eps*v, with
// 0 <= c < x_p, makes z* = x_p - c parallel to v, so grad U_i(x_p) . z* = 0 for
// every player: the residual condition holds in the coordinates z = x - c.

#include <memory>

#include "kantian/equilibrium.hpp"
#include "kantian/error.hpp"
#include "kantian/pareto.hpp"

namespace kantian {

struct ShiftPlan {
  Vector x_p;
  Vector v;            // unit common-tangent direction, all components > 0
  double eps = 0.0;
  double theta = 0.0;  // eps / eps_max
  Vector c;            // lower bounds
  Vector z_star;       // x_p - c; c + z_star reproduces x_p exactly
  bool origin_tangent = false;  // tangent already passes through 0, c = 0
  double orthogonality = 0.0;   // relative_residual(grad U(x_p), x_p - c)
  EquilibriumReport verification;  // verify_mke on z_star in the shifted game

  bool verified() const { return verification.verified(); }
};

/// Thrown by build_shift when the shifted profile fails verify_mke; carries
/// the full plan.
class ShiftVerificationError : public InconsistencyError {
 public:
  explicit ShiftVerificationError(ShiftPlan plan);
  const ShiftPlan& plan() const noexcept { return plan_; }

 private:
  ShiftPlan plan_;
};

/// Unit vector in the nullspace of the gradient matrix with every component
/// strictly positive. Throws NotEfficientError when the nullspace is empty
/// and NoShiftDirectionError when no positive direction exists.
Vector tangent_direction(const GameModel& game, const ParetoPoint& p, double rank_tol);

/// Builds and verifies the shift for theta in (0, 1). When the residual
/// condition already holds at x_p (relative residual <= check.residual_tol)
/// the plan has c = 0.
ShiftPlan build_shift(const GameModel& game, const ParetoPoint& p, double theta,
                      const SolverConfig& cfg, const MkeCheck& check = {});

/// Two-player tangent line x_1 = slope * x_2 + intercept through x_p,
/// orthogonal to player 1's gradient.
struct TangentLine {
  double slope = 0.0;
  double intercept = 0.0;
};

TangentLine tangent_line_2d(const GameModel& game, const ParetoPoint& p);

}  // namespace kantian
