#include "kantian/solve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "kantian/error.hpp"
#include "kantian/kernels.hpp"

namespace kantian {

void SolverConfig::validate() const {
  if (!(tol_grad > 0.0) || !(tol_step > 0.0) || !(fd_step > 0.0) || !(rank_tol > 0.0))
    throw DomainError("solver tolerances must be positive");
  if (max_iter < 1) throw DomainError("max_iter must be at least 1");
  if (grid_points < 3) throw DomainError("grid_points must be at least 3");
}

namespace {

Vector project(const Vector& x) { return x.cwiseMax(0.0); }

Vector projected_gradient(const Vector& x, const Vector& g) {
  Vector pg = g;
  for (int i = 0; i < x.size(); ++i)
    if (x[i] <= 0.0) pg[i] = std::max(g[i], 0.0);
  return pg;
}

// One Newton step on the coordinates that are free at x. Returns false when
// the finite-difference Hessian is unusable or not negative definite.
bool newton_direction(const ObjectiveGradient& grad, const Vector& x, const Vector& g,
                      double h0, Vector& step) {
  const int n = static_cast<int>(x.size());
  std::vector<int> free;
  for (int i = 0; i < n; ++i)
    if (x[i] > 0.0 || g[i] > 0.0) free.push_back(i);
  if (free.empty()) return false;

  const int m = static_cast<int>(free.size());
  Matrix h(m, m);
  for (int c = 0; c < m; ++c) {
    const int j = free[c];
    const double hj = h0 * std::max(1.0, std::abs(x[j]));
    Vector xp = x, xm = x;
    xp[j] += hj;
    Vector col;
    if (x[j] - hj > 0.0) {
      xm[j] -= hj;
      col = (grad(xp) - grad(xm)) / (2.0 * hj);
    } else {
      col = (grad(xp) - g) / hj;
    }
    if (!col.allFinite()) return false;
    for (int r = 0; r < m; ++r) h(r, c) = col[free[r]];
  }
  const Matrix neg = -0.5 * (h + h.transpose());
  Eigen::LDLT<Matrix> ldlt(neg);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive()) return false;
  if ((ldlt.vectorD().array() <= 0.0).any()) return false;

  Vector gf(m);
  for (int r = 0; r < m; ++r) gf[r] = g[free[r]];
  const Vector d = ldlt.solve(gf);
  if (!d.allFinite()) return false;
  step = Vector::Zero(n);
  for (int r = 0; r < m; ++r) step[free[r]] = d[r];
  return true;
}

}  // namespace

MaximizeResult maximize_concave(const Objective& f, const ObjectiveGradient& grad,
                                const Vector& x0, const SolverConfig& cfg,
                                const IterateObserver& observer) {
  cfg.validate();
  Vector x = project(x0);
  double fx = f(x);
  Vector g = grad(x);
  if (!std::isfinite(fx) || !g.allFinite())
    throw DomainError("objective or gradient is not finite at the starting point");

  double t = 1.0;
  int polish = 0;
  MaximizeResult result;
  for (int iter = 0; iter < cfg.max_iter; ++iter) {
    if (observer) observer(x);
    const double pgn = projected_gradient(x, g).norm();
    result = {x, iter, pgn};
    const bool converged = pgn <= cfg.tol_grad;
    if (converged && (polish++ == 2 || pgn == 0.0)) return result;

    // Projected Newton on the free coordinates, backtracking on the Armijo
    // condition. Close to the optimum f differences are at rounding level, so
    // a full step that lowers the projected gradient is accepted too.
    const bool near = converged || pgn <= 1e-3 * std::max(1.0, g.norm());
    Vector d;
    if (newton_direction(grad, x, g, cfg.fd_step, d)) {
      bool stepped = false;
      double s = 1.0;
      for (int halving = 0; halving < 30 && !stepped; ++halving, s *= 0.5) {
        const Vector xn = project(x + s * d);
        if ((xn - x).norm() <= cfg.tol_step * (1.0 + x.norm()) && !near) break;
        const double fn = f(xn);
        if (!std::isfinite(fn)) continue;
        const bool armijo = fn >= fx + 1e-4 * g.dot(xn - x) && fn > fx;
        const bool flat = near && halving == 0 && fn >= fx - 1e-13 * (1.0 + std::abs(fx));
        if (!armijo && !flat) continue;
        const Vector gn = grad(xn);
        if (!gn.allFinite()) continue;
        if (!armijo && projected_gradient(xn, gn).norm() >= pgn) break;
        x = xn;
        fx = fn;
        g = gn;
        stepped = true;
      }
      if (stepped) continue;
    }
    if (converged) return result;

    // Armijo backtracking along the projection arc. Candidates where the
    // objective or its gradient is undefined are treated as too long a step.
    t = std::min(2.0 * t, 1e8);
    bool moved = false;
    while (t > 1e-20) {
      const Vector xn = project(x + t * g);
      if ((xn - x).norm() <= cfg.tol_step * (1.0 + x.norm())) break;
      const double fn = f(xn);
      if (std::isfinite(fn) && fn >= fx + 1e-4 * g.dot(xn - x)) {
        const Vector gn = grad(xn);
        if (gn.allFinite()) {
          x = xn;
          fx = fn;
          g = gn;
          moved = true;
          break;
        }
      }
      t *= 0.5;
    }
    if (!moved) break;
  }
  if (result.projected_gradient_norm <= cfg.tol_grad) return result;
  throw NonConvergenceError(
      fmt::format("projected gradient stalled at {:.3e} (tolerance {:.1e})",
                  result.projected_gradient_norm, cfg.tol_grad),
      x);
}

LineMaximum maximize_on_interval(const LineObjective& g, double lo, double hi,
                                 const SolverConfig& cfg) {
  cfg.validate();
  if (!(lo < hi)) throw DomainError("argmax_1d needs lo < hi");

  auto value = [&](double t) {
    const double v = g.value(t);
    return std::isnan(v) ? -std::numeric_limits<double>::infinity() : v;
  };

  // Golden section.
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - kInvPhi * (b - a), d = a + kInvPhi * (b - a);
  double fc = value(c), fd = value(d);
  while (b - a > cfg.tol_step) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = value(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = value(d);
    }
    if (c >= d) break;  // bracket collapsed below rounding
  }

  // Grid oracle.
  const auto points = static_cast<std::size_t>(cfg.grid_points);
  const double cell = (hi - lo) / static_cast<double>(points - 1);
  thread_local std::vector<double> buffer;
  buffer.resize(points);
  std::span<double> out(buffer.data(), points);
  if (g.grid) {
    g.grid(lo, cell, out);
  } else {
    for (std::size_t k = 0; k < points; ++k) out[k] = g.value(lo + static_cast<double>(k) * cell);
  }
  const std::size_t best = kernels::argmax(out);
  if (best >= points) throw NonUnimodalError("objective is NaN on the whole grid");

  LineMaximum m;
  m.location = 0.5 * (a + b);
  // Golden section never evaluates the endpoints themselves.
  const double inner = value(m.location);
  if (b >= hi - cfg.tol_step && value(hi) >= inner) m.location = hi;
  if (a <= lo + cfg.tol_step && value(lo) > inner) m.location = lo;
  m.grid_location = best + 1 == points ? hi : lo + static_cast<double>(best) * cell;
  m.cell = cell;
  if (std::abs(m.location - m.grid_location) > cell + cfg.tol_step)
    throw NonUnimodalError(fmt::format(
        "golden section ({:.9g}) and grid ({:.9g}) maxima differ by more than one cell ({:.3g})",
        m.location, m.grid_location, cell));
  return m;
}

double argmax_1d(const std::function<double(double)>& g, double lo, double hi,
                 const SolverConfig& cfg) {
  return maximize_on_interval(LineObjective{g, {}}, lo, hi, cfg).location;
}

std::vector<Vector> nullspace(const Matrix& g, double rank_tol) {
  if (!g.allFinite()) throw DomainError("nullspace: matrix has non-finite entries");
  const Eigen::JacobiSVD<Matrix> svd(g, Eigen::ComputeFullV);
  const Vector& sv = svd.singularValues();
  const double top = sv.size() > 0 ? sv[0] : 0.0;
  const double threshold = rank_tol * top;
  int rank = 0;
  if (top > 0.0)
    for (int k = 0; k < sv.size(); ++k)
      if (sv[k] > threshold) ++rank;

  std::vector<Vector> basis;
  const Matrix& v = svd.matrixV();
  for (int k = rank; k < v.cols(); ++k) basis.emplace_back(v.col(k));
  return basis;
}

Vector nnls(const Matrix& a, const Vector& b) {
  const int n = static_cast<int>(a.cols());
  Vector x = Vector::Zero(n);
  std::vector<bool> passive(n, false);
  const double tol = 10.0 * std::numeric_limits<double>::epsilon() *
                     std::max(1.0, a.norm()) * std::max<double>(a.rows(), n);

  auto solve_passive = [&](Vector& s) {
    std::vector<int> idx;
    for (int j = 0; j < n; ++j)
      if (passive[j]) idx.push_back(j);
    Matrix ap(a.rows(), static_cast<int>(idx.size()));
    for (int c = 0; c < static_cast<int>(idx.size()); ++c) ap.col(c) = a.col(idx[c]);
    const Vector sp = ap.colPivHouseholderQr().solve(b);
    s = Vector::Zero(n);
    for (int c = 0; c < static_cast<int>(idx.size()); ++c) s[idx[c]] = sp[c];
  };

  Vector w = a.transpose() * (b - a * x);
  for (int outer = 0; outer < 3 * n + 3; ++outer) {
    int t = -1;
    double wmax = tol;
    for (int j = 0; j < n; ++j)
      if (!passive[j] && w[j] > wmax) {
        wmax = w[j];
        t = j;
      }
    if (t < 0) break;
    passive[t] = true;

    Vector s;
    for (int inner = 0; inner < 3 * n + 3; ++inner) {
      solve_passive(s);
      double alpha = std::numeric_limits<double>::infinity();
      for (int j = 0; j < n; ++j)
        if (passive[j] && s[j] <= 0.0) alpha = std::min(alpha, x[j] / (x[j] - s[j]));
      if (!std::isfinite(alpha)) break;
      x += alpha * (s - x);
      for (int j = 0; j < n; ++j)
        if (passive[j] && x[j] <= tol) {
          passive[j] = false;
          x[j] = 0.0;
        }
    }
    x = s.cwiseMax(0.0);
    w = a.transpose() * (b - a * x);
  }
  return x;
}

Vector simplex_least_squares(const Matrix& a) {
  // The minimizer of ||A y||^2 + w^2 (sum y - 1)^2 over y >= 0 is a positive
  // multiple of the simplex-constrained minimizer for any w > 0.
  const int n = static_cast<int>(a.cols());
  const double w = std::max(1.0, a.norm());
  Matrix aug(a.rows() + 1, n);
  aug.topRows(a.rows()) = a;
  aug.row(a.rows()).setConstant(w);
  Vector rhs = Vector::Zero(a.rows() + 1);
  rhs[a.rows()] = w;
  Vector y = nnls(aug, rhs);
  const double s = y.sum();
  if (!(s > 0.0)) return Vector::Constant(n, 1.0 / n);
  return y / s;
}

}  // namespace kantian
