#include "kantian/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "kantian/error.hpp"
#include "kantian/kernels.hpp"

namespace kantian {

std::string_view kind_name(EquilibriumKind k) { return k == EquilibriumKind::MKE ? "MKE" : "Nash"; }

std::string_view verdict_name(Verdict v) { return v == Verdict::Verified ? "verified" : "failed"; }

Vector mke_residual(const GameModel& game, const Vector& x) {
  require_profile(game, x);
  const Matrix gt = game.gradient(x).transpose();  // column i is grad U_i
  Vector r(game.players());
  for (int i = 0; i < game.players(); ++i)
    r[i] = kernels::dot({gt.col(i).data(), static_cast<std::size_t>(gt.rows())},
                        {x.data(), static_cast<std::size_t>(x.size())});
  return r;
}

double relative_residual(const GradientMatrix& g, const Vector& z) {
  const double zn = z.norm();
  double worst = 0.0;
  for (int i = 0; i < g.rows(); ++i) {
    const double scale = g.row(i).norm() * zn;
    if (scale > 0.0) worst = std::max(worst, std::abs(g.row(i).dot(z)) / scale);
  }
  return worst;
}

EquilibriumReport verify_mke(const GameModel& game, const Vector& x, const SolverConfig& cfg,
                             const MkeCheck& check) {
  require_profile(game, x);
  if (!(x.array() > 0.0).any()) throw DomainError("verify_mke needs a nonzero profile");
  if (!(check.a_hi > 1.0)) throw DomainError("verify_mke needs a_hi > 1");

  const int n = game.players();
  EquilibriumReport rep;
  rep.kind = EquilibriumKind::MKE;
  rep.x = x;
  rep.payoffs = game.payoffs(x);
  rep.residuals = mke_residual(game, x);
  rep.residual_max = relative_residual(game.gradient(x), x);
  rep.oracle_argmax.resize(n);
  rep.grid_argmax.resize(n);

  const Vector origin = Vector::Zero(n);
  bool located = true;
  for (int i = 0; i < n; ++i) {
    LineObjective g{
        [&](double a) { return game.payoff(a * x, i); },
        [&](double lo, double step, std::span<double> out) {
          game.line_payoffs(i, origin, x, lo, step, out);
        }};
    const LineMaximum m = maximize_on_interval(g, 0.0, check.a_hi, cfg);
    rep.oracle_argmax[i] = m.location;
    rep.grid_argmax[i] = m.grid_location;
    rep.grid_cell = m.cell;
    located = located && std::abs(m.location - 1.0) <= check.delta;
  }
  rep.verdict = located && rep.residual_max <= check.residual_tol ? Verdict::Verified
                                                                   : Verdict::Failed;
  return rep;
}

namespace {

// Residual system for Newton; NaN when the gradient is undefined at x.
Vector residual_or_nan(const GameModel& game, const Vector& x) {
  try {
    return game.gradient(x) * x;
  } catch (const DomainError&) {
    return Vector::Constant(x.size(), std::numeric_limits<double>::quiet_NaN());
  }
}

template <class F>
Matrix fd_jacobian(const F& fun, const Vector& x, const Vector& fx, double h0) {
  const int n = static_cast<int>(x.size());
  Matrix j(fx.size(), n);
  for (int c = 0; c < n; ++c) {
    const double h = h0 * std::max(1.0, std::abs(x[c]));
    Vector xp = x, xm = x;
    xp[c] += h;
    if (x[c] - h >= 0.0) {
      xm[c] -= h;
      j.col(c) = (fun(xp) - fun(xm)) / (2.0 * h);
    } else {
      j.col(c) = (fun(xp) - fx) / h;
    }
  }
  return j;
}

// Damped Newton with minimum-norm steps; iterates stay in the orthant. Stops
// when no halving of the step lowers ||F||.
template <class F>
Vector damped_newton(const F& fun, Vector x, const SolverConfig& cfg, int& iterations) {
  Vector fx = fun(x);
  if (!fx.allFinite()) throw DomainError("residual is undefined at the starting point");
  for (iterations = 0; iterations < cfg.max_iter; ++iterations) {
    const double norm = fx.norm();
    if (norm == 0.0) break;
    const Matrix j = fd_jacobian(fun, x, fx, cfg.fd_step);
    if (!j.allFinite()) break;
    const Vector d = -j.completeOrthogonalDecomposition().solve(fx);
    if (!d.allFinite()) break;
    double t = 1.0;
    bool moved = false;
    for (int halving = 0; halving <= 40; ++halving, t *= 0.5) {
      const Vector xn = x + t * d;
      if ((xn.array() < 0.0).any()) continue;
      const Vector fn = fun(xn);
      if (fn.allFinite() && fn.norm() < norm) {
        x = xn;
        fx = fn;
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }
  return x;
}

}  // namespace

EquilibriumReport solve_mke(const GameModel& game, const Vector& x0, const SolverConfig& cfg,
                            const MkeCheck& check) {
  cfg.validate();
  require_profile(game, x0);
  if (!is_interior(x0)) throw DomainError("solve_mke needs a strictly positive start");

  // The zero profile always solves the residual system. Newton runs on the
  // deflated residual (1 + 1/|x|^2) F(x), which shares every other root of F
  // but grows without bound as x -> 0.
  int iterations = 0;
  auto fun = [&](const Vector& x) { return residual_or_nan(game, x); };
  auto deflated = [&](const Vector& x) -> Vector {
    const double sq = x.squaredNorm();
    if (sq == 0.0) return Vector::Constant(x.size(), std::numeric_limits<double>::quiet_NaN());
    return (1.0 + 1.0 / sq) * fun(x);
  };
  const Vector x = damped_newton(deflated, x0, cfg, iterations);

  const double floor = 1e-8 * std::max(1.0, x.cwiseAbs().maxCoeff());
  if ((x.array() <= floor).any())
    throw DegenerateRootError(fmt::format("Newton reached a root with a zero coordinate (min {:.3g})",
                                          x.minCoeff()));
  const Vector fx = fun(x);
  const double scale = std::max(1.0, game.gradient(x).rowwise().norm().maxCoeff() * x.norm());
  if (!fx.allFinite() || fx.cwiseAbs().maxCoeff() > cfg.tol_grad * scale)
    throw NonConvergenceError(
        fmt::format("MKE residual stalled at {:.3e}", fx.cwiseAbs().maxCoeff()), x);

  EquilibriumReport rep = verify_mke(game, x, cfg, check);
  rep.iterations = iterations;
  return rep;
}

namespace {

double own_derivative(const GameModel& game, const Vector& x, int i) {
  return game.gradient(x)(i, i);
}

LineMaximum best_response(const GameModel& game, const Vector& x, int i, const SolverConfig& cfg) {
  const int n = game.players();
  Vector origin = x;
  origin[i] = 0.0;
  const Vector dir = Vector::Unit(n, i);

  double hi = std::max({1.0, 2.0 * x[i], 2.0 * origin.sum()});
  for (int k = 0;; ++k) {
    Vector probe = origin;
    probe[i] = hi;
    if (own_derivative(game, probe, i) <= 0.0) break;
    if (k == 60) throw NonConvergenceError("best response is unbounded", x);
    hi *= 2.0;
  }
  LineObjective g{
      [&](double s) {
        Vector y = origin;
        y[i] = s;
        return game.payoff(y, i);
      },
      [&](double lo, double step, std::span<double> out) {
        game.line_payoffs(i, origin, dir, lo, step, out);
      }};
  return maximize_on_interval(g, 0.0, hi, cfg);
}

double nash_residual(double derivative, double xi) {
  return xi > 0.0 ? std::abs(derivative) : std::max(derivative, 0.0);
}

}  // namespace

EquilibriumReport solve_nash(const GameModel& game, const Vector& x0, const SolverConfig& cfg) {
  cfg.validate();
  require_profile(game, x0);
  const int n = game.players();
  Vector x = x0;

  int sweeps = 0;
  bool settled = false;
  for (; sweeps < cfg.max_iter && !settled; ++sweeps) {
    double change = 0.0;
    for (int i = 0; i < n; ++i) {
      const double br = best_response(game, x, i, cfg).location;
      change = std::max(change, std::abs(br - x[i]));
      x[i] = br;
    }
    settled = change <= 1e-7 * std::max(1.0, x.cwiseAbs().maxCoeff());
  }
  if (!settled) throw NonConvergenceError("best-response iteration did not settle", x);

  // Golden section pins each response only to ~sqrt(machine eps); finish with
  // Newton on the own first-order conditions of the active players.
  for (int i = 0; i < n; ++i)
    if (x[i] < 1e-9 * std::max(1.0, x.cwiseAbs().maxCoeff())) x[i] = 0.0;
  std::vector<int> active;
  for (int i = 0; i < n; ++i)
    if (x[i] > 0.0) active.push_back(i);
  if (!active.empty()) {
    const Vector frozen = x;
    auto embed = [&](const Vector& y) {
      Vector full = frozen;
      for (std::size_t k = 0; k < active.size(); ++k) full[active[k]] = y[k];
      return full;
    };
    auto fun = [&](const Vector& y) {
      Vector r(active.size());
      try {
        const GradientMatrix g = game.gradient(embed(y));
        for (std::size_t k = 0; k < active.size(); ++k) r[k] = g(active[k], active[k]);
      } catch (const DomainError&) {
        r.setConstant(std::numeric_limits<double>::quiet_NaN());
      }
      return r;
    };
    Vector y(active.size());
    for (std::size_t k = 0; k < active.size(); ++k) y[k] = x[active[k]];
    int polish_iters = 0;
    x = embed(damped_newton(fun, y, cfg, polish_iters));
  }

  EquilibriumReport rep;
  rep.kind = EquilibriumKind::Nash;
  rep.x = x;
  rep.payoffs = game.payoffs(x);
  rep.residuals.resize(n);
  rep.oracle_argmax.resize(n);
  rep.grid_argmax.resize(n);
  rep.iterations = sweeps;
  const GradientMatrix g = game.gradient(x);
  bool ok = true;
  for (int i = 0; i < n; ++i) {
    rep.residuals[i] = nash_residual(g(i, i), x[i]);
    const LineMaximum br = best_response(game, x, i, cfg);
    rep.oracle_argmax[i] = br.location;
    rep.grid_argmax[i] = br.grid_location;
    rep.grid_cell = std::max(rep.grid_cell, br.cell);
    const double scale = std::max(1.0, g.row(i).norm());
    ok = ok && rep.residuals[i] <= cfg.tol_grad * scale &&
         std::abs(br.location - x[i]) <= br.cell + 1e-6 * std::max(1.0, x[i]);
  }
  rep.residual_max = rep.residuals.cwiseAbs().maxCoeff();
  rep.verdict = ok ? Verdict::Verified : Verdict::Failed;
  return rep;
}

}  // namespace kantian
