#pragma once

// Small dense numerical kernels shared by the equilibrium, frontier and shift
// code: orthant-constrained concave maximization, 1-D maximization with a
// grid cross-check, nullspaces and simplex-constrained least squares.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "kantian/game.hpp"

namespace kantian {

struct SolverConfig {
  double tol_grad = 1e-9;     // projected-gradient / residual tolerance
  double tol_step = 1e-12;    // step and bracket-width floor
  int max_iter = 500;
  int grid_points = 300001;   // dense grid used by argmax_1d's oracle
  std::uint64_t seed = 0;
  double fd_step = 1e-5;      // central finite-difference step
  double rank_tol = 1e-8;     // relative singular-value threshold

  /// Throws DomainError on non-positive tolerances, max_iter < 1 or grid_points < 3.
  void validate() const;
};

using Objective = std::function<double(const Vector&)>;
using ObjectiveGradient = std::function<Vector(const Vector&)>;
using IterateObserver = std::function<void(const Vector&)>;

struct MaximizeResult {
  Vector x;
  int iterations = 0;
  double projected_gradient_norm = 0.0;
};

/// Projected gradient ascent with Armijo backtracking over x >= 0, finished
/// by Newton steps on the free coordinates once the projected gradient is
/// small. Throws NonConvergenceError (carrying the last iterate) when the
/// projected gradient does not reach cfg.tol_grad.
MaximizeResult maximize_concave(const Objective& f, const ObjectiveGradient& grad,
                                const Vector& x0, const SolverConfig& cfg,
                                const IterateObserver& observer = {});

/// A 1-D objective, optionally with a vectorized evaluator over the uniform
/// grid t_k = lo + k*step.
struct LineObjective {
  std::function<double(double)> value;
  std::function<void(double lo, double step, std::span<double> out)> grid;
};

struct LineMaximum {
  double location = 0.0;       // golden-section result
  double grid_location = 0.0;  // best grid point
  double cell = 0.0;           // grid spacing
};

/// Golden-section search to bracket width cfg.tol_step, cross-checked against
/// a cfg.grid_points uniform grid. Throws NonUnimodalError when the two
/// disagree by more than one grid cell.
LineMaximum maximize_on_interval(const LineObjective& g, double lo, double hi,
                                 const SolverConfig& cfg);

double argmax_1d(const std::function<double(double)>& g, double lo, double hi,
                 const SolverConfig& cfg);

/// Orthonormal basis of {v : G v = 0}; singular values at or below
/// rank_tol * sigma_max count as zero. Empty when G has full rank.
std::vector<Vector> nullspace(const Matrix& g, double rank_tol);

/// min ||A y - b|| subject to y >= 0 (Lawson-Hanson active set).
Vector nnls(const Matrix& a, const Vector& b);

/// min ||A y|| subject to y >= 0 and sum(y) = 1.
Vector simplex_least_squares(const Matrix& a);

}  // namespace kantian
