#pragma once

// Multiplicative Kantian equilibrium: the first-order residual, the
// definition-level check U_i(x) >= U_i(a x) for all a >= 0, a Newton solver for
// the residual system, and the Nash baseline.

#include <string_view>

#include "kantian/game.hpp"
#include "kantian/solve.hpp"

namespace kantian {

enum class EquilibriumKind { MKE, Nash };
enum class Verdict { Verified, Failed };

std::string_view kind_name(EquilibriumKind k);
std::string_view verdict_name(Verdict v);

struct EquilibriumReport {
  EquilibriumKind kind = EquilibriumKind::MKE;
  Vector x;
  Vector payoffs;
  /// MKE: grad U_i(x) . x. Nash: projected own-derivative.
  Vector residuals;
  /// MKE: argmax over a in [0, a_hi] of U_i(a x). Nash: best response of player i.
  Vector oracle_argmax;
  /// Best point of the dense grid behind each oracle_argmax entry.
  Vector grid_argmax;
  double grid_cell = 0.0;
  /// MKE: max_i |grad U_i . x| / (||grad U_i|| ||x||). Nash: max residual.
  double residual_max = 0.0;
  int iterations = 0;
  Verdict verdict = Verdict::Failed;

  bool verified() const { return verdict == Verdict::Verified; }
};

struct MkeCheck {
  double a_hi = 3.0;           // scan a over [0, a_hi]
  double delta = 1e-3;         // accepted distance of each argmax from a = 1
  double residual_tol = 1e-9;  // relative first-order residual
};

/// residual_i = grad U_i(x) . x.
Vector mke_residual(const GameModel& game, const Vector& x);

/// max_i |grad U_i . z| / (||grad U_i|| ||z||); rows or z of zero norm contribute 0.
double relative_residual(const GradientMatrix& g, const Vector& z);

/// Scans each player's payoff along the ray a -> a x. Throws DomainError for a
/// zero or invalid profile or a_hi <= 1; propagates NonUnimodalError.
EquilibriumReport verify_mke(const GameModel& game, const Vector& x, const SolverConfig& cfg,
                             const MkeCheck& check = {});

/// Damped Newton on F(x) = (grad U_i(x) . x)_i with a finite-difference
/// Jacobian and minimum-norm steps, then verify_mke. Throws DegenerateRootError
/// for roots with a zero coordinate and NonConvergenceError otherwise.
EquilibriumReport solve_mke(const GameModel& game, const Vector& x0, const SolverConfig& cfg,
                            const MkeCheck& check = {});

/// Gauss-Seidel best-response iteration; each response is a 1-D maximization
/// over the player's own strategy.
EquilibriumReport solve_nash(const GameModel& game, const Vector& x0, const SolverConfig& cfg);

}  // namespace kantian
