#pragma once

#include <optional>
#include <vector>

#include "kantian/game.hpp"
#include "kantian/solve.hpp"

namespace kantian {

enum class Scalarization {
  WeightedSum,           // max sum m_i U_i
  WeightedNashProduct,   // max sum m_i log(U_i - U_i(0)), for flat frontiers
};

/// An interior profile certified Pareto efficient by positive multipliers m
/// with sum_i m_i grad U_i(x) ~ 0.
struct ParetoPoint {
  Vector x;
  Vector m;               // normalized to sum 1
  Vector payoffs;
  double cert_residual = 0.0;
  Scalarization method = Scalarization::WeightedSum;
  Vector weights;         // the scalarization weights that produced x
};

struct EfficiencyCertificate {
  bool accepted = false;
  Vector m;
  double residual = 0.0;
};

/// ||sum_i m_i grad U_i|| / max_i ||grad U_i||.
double certification_residual(const GradientMatrix& g, const Vector& m);

/// Finds multipliers on the simplex minimizing the weighted gradient sum.
/// Accepts when the scale-free residual is <= tol and every m_i >= floor.
/// Throws DomainError when x is not interior.
EfficiencyCertificate certify_efficiency(const GameModel& game, const Vector& x, double tol,
                                         double floor = 1e-6);

/// Maximizes sum_i m_i U_i from x0 (ones when empty). Throws
/// NonInteriorError when the maximizer has a zero coordinate.
ParetoPoint scalarize(const GameModel& game, const Vector& m, const SolverConfig& cfg,
                      const Vector& x0 = Vector());

/// Maps weight vectors to frontier points: weighted sum first, and the
/// weighted Nash product relative to the zero-profile payoffs when the
/// weighted-sum optimum is not interior (payoffs of the form x_i * phi(X)
/// make the weighted sum degenerate).
class FrontierSampler {
 public:
  FrontierSampler(const GameModel& game, SolverConfig cfg);

  /// Throws NonInteriorError when neither scalarization gives an interior
  /// certified point.
  ParetoPoint at(const Vector& weights) const;

  const GameModel& game() const { return game_; }
  const SolverConfig& config() const { return cfg_; }

 private:
  ParetoPoint nash_product(const Vector& weights) const;

  const GameModel& game_;
  SolverConfig cfg_;
  Vector status_quo_;               // payoffs at the zero profile
  std::optional<Vector> np_start_;  // a profile where every player beats the status quo
};

/// k interior simplex weights: uniform grid j/(k+1) for two players, the
/// barycenter plus Halton points otherwise; uniform weights when k = 1.
/// Sorted lexicographically.
std::vector<Vector> sweep_weights(int n, int k);

struct FrontierSweep {
  std::vector<ParetoPoint> points;
  int boundary_rejections = 0;
  int duplicates = 0;
};

/// Deduplicates points within L-infinity distance 1e-6; output follows the
/// weight order.
FrontierSweep sweep_frontier(const GameModel& game, int k, const SolverConfig& cfg);

/// Weak Pareto dominance check used by tests: true when u >= v componentwise
/// with at least one strict inequality beyond tol.
bool dominates(const Vector& u, const Vector& v, double tol = 1e-12);

}  // namespace kantian
