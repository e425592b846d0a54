#include "kantian/game.hpp"

#include <cmath>
#include <utility>

#include <fmt/format.h>

#include "kantian/error.hpp"
#include "kantian/kernels.hpp"

namespace kantian {

std::string_view family_name(Family f) {
  switch (f) {
    case Family::QuadraticPublicGoods: return "QuadraticPublicGoods";
    case Family::LinearCournot: return "LinearCournot";
    case Family::Commons: return "Commons";
    case Family::CustomQuadratic: return "CustomQuadratic";
  }
  return "?";
}

Family parse_family(std::string_view name) {
  for (Family f : {Family::QuadraticPublicGoods, Family::LinearCournot, Family::Commons,
                   Family::CustomQuadratic})
    if (family_name(f) == name) return f;
  throw GameSpecError(fmt::format("unknown game family '{}'", name));
}

Vector GameModel::payoffs(const Vector& x) const {
  Vector u(players());
  for (int i = 0; i < players(); ++i) u[i] = payoff(x, i);
  return u;
}

void GameModel::line_payoffs(int i, const Vector& origin, const Vector& direction,
                             double lo, double step, std::span<double> out) const {
  Vector x(origin.size());
  for (std::size_t k = 0; k < out.size(); ++k) {
    const double t = lo + static_cast<double>(k) * step;
    x = origin + t * direction;
    out[k] = payoff(x, i);
  }
}

namespace {

void require_positive(const Vector& v, int n, const char* name) {
  if (v.size() != n)
    throw GameSpecError(fmt::format("parameter '{}' needs {} entries, got {}", name, n, v.size()));
  for (double e : v)
    if (!(e > 0.0) || !std::isfinite(e))
      throw GameSpecError(fmt::format("parameter '{}' must be positive and finite", name));
}

void require_finite(const Vector& v, int n, const char* name) {
  if (v.size() != n)
    throw GameSpecError(fmt::format("parameter '{}' needs {} entries, got {}", name, n, v.size()));
  for (double e : v)
    if (!std::isfinite(e)) throw GameSpecError(fmt::format("parameter '{}' must be finite", name));
}

void check_index(const Vector& x, int n, int i) {
  if (x.size() != n)
    throw DomainError(fmt::format("profile has {} entries, game has {} players", x.size(), n));
  if (i < 0 || i >= n)
    throw DomainError(fmt::format("player index {} out of range [1, {}]", i + 1, n));
}

}  // namespace

Game::Game(int n, Family family, GameParams params, int externality_sign)
    : n_(n), family_(family), params_(std::move(params)), sign_(externality_sign) {
  if (n < 2 || n > kMaxPlayers)
    throw GameSpecError(fmt::format("player count must be in [2, {}], got {}", kMaxPlayers, n));
  if (sign_ != 1 && sign_ != -1)
    throw GameSpecError("externality_sign must be +1 or -1");
  auto& p = params_;
  switch (family_) {
    case Family::QuadraticPublicGoods:
      require_finite(p.a, n, "a");
      require_positive(p.b, n, "b");
      if (!std::isfinite(p.gamma)) throw GameSpecError("parameter 'gamma' must be finite");
      break;
    case Family::CustomQuadratic:
      require_finite(p.a, n, "a");
      require_positive(p.b, n, "b");
      if (p.gamma_matrix.rows() != n || p.gamma_matrix.cols() != n)
        throw GameSpecError(fmt::format("parameter 'gamma' must be a {0}x{0} matrix", n));
      if (!p.gamma_matrix.allFinite()) throw GameSpecError("parameter 'gamma' must be finite");
      break;
    case Family::LinearCournot:
      if (!(p.p0 > 0.0) || !(p.p1 > 0.0) || !std::isfinite(p.p0) || !std::isfinite(p.p1))
        throw GameSpecError("parameters 'p0' and 'p1' must be positive");
      require_finite(p.cost, n, "c");
      break;
    case Family::Commons:
      if (!(p.beta > 0.0 && p.beta < 1.0)) throw GameSpecError("parameter 'beta' must lie in (0, 1)");
      if (!(p.alpha > 0.0) || !std::isfinite(p.alpha))
        throw GameSpecError("parameter 'alpha' must be positive");
      break;
  }
}

Game Game::quadratic_public_goods(int n, double a, double b, double gamma) {
  return quadratic_public_goods(Vector::Constant(n, a), Vector::Constant(n, b), gamma);
}

Game Game::quadratic_public_goods(Vector a, Vector b, double gamma) {
  GameParams p;
  const int n = static_cast<int>(a.size());
  p.a = std::move(a);
  p.b = std::move(b);
  p.gamma = gamma;
  return Game(n, Family::QuadraticPublicGoods, std::move(p), gamma < 0.0 ? -1 : 1);
}

Game Game::linear_cournot(int n, double p0, double p1, double cost) {
  return linear_cournot(p0, p1, Vector::Constant(n, cost));
}

Game Game::linear_cournot(double p0, double p1, Vector cost) {
  GameParams p;
  const int n = static_cast<int>(cost.size());
  p.p0 = p0;
  p.p1 = p1;
  p.cost = std::move(cost);
  return Game(n, Family::LinearCournot, std::move(p), -1);
}

Game Game::commons(int n, double alpha, double beta) {
  GameParams p;
  p.alpha = alpha;
  p.beta = beta;
  return Game(n, Family::Commons, std::move(p), -1);
}

Game Game::custom_quadratic(Vector a, Vector b, Matrix gamma, int externality_sign) {
  GameParams p;
  const int n = static_cast<int>(a.size());
  p.a = std::move(a);
  p.b = std::move(b);
  p.gamma_matrix = std::move(gamma);
  return Game(n, Family::CustomQuadratic, std::move(p), externality_sign);
}

double Game::payoff(const Vector& x, int i) const {
  check_index(x, n_, i);
  const auto& p = params_;
  switch (family_) {
    case Family::QuadraticPublicGoods: {
      const double others = x.sum() - x[i];
      return p.a[i] * x[i] - 0.5 * p.b[i] * x[i] * x[i] + p.gamma * others;
    }
    case Family::CustomQuadratic: {
      double spill = 0.0;
      for (int j = 0; j < n_; ++j)
        if (j != i) spill += p.gamma_matrix(i, j) * x[j];
      return p.a[i] * x[i] - 0.5 * p.b[i] * x[i] * x[i] + spill;
    }
    case Family::LinearCournot:
      return x[i] * (p.p0 - p.p1 * x.sum()) - p.cost[i] * x[i];
    case Family::Commons: {
      const double total = x.sum();
      // x_i X^(beta-1) <= X^beta -> 0 as X -> 0.
      if (total <= 0.0) return -p.alpha * x[i];
      return x[i] * std::pow(total, p.beta - 1.0) - p.alpha * x[i];
    }
  }
  return 0.0;
}

GradientMatrix Game::gradient(const Vector& x) const {
  check_index(x, n_, 0);
  const auto& p = params_;
  GradientMatrix g(n_, n_);
  switch (family_) {
    case Family::QuadraticPublicGoods:
      g.setConstant(p.gamma);
      for (int i = 0; i < n_; ++i) g(i, i) = p.a[i] - p.b[i] * x[i];
      break;
    case Family::CustomQuadratic:
      g = p.gamma_matrix;
      for (int i = 0; i < n_; ++i) g(i, i) = p.a[i] - p.b[i] * x[i];
      break;
    case Family::LinearCournot: {
      const double price = p.p0 - p.p1 * x.sum();
      for (int i = 0; i < n_; ++i) {
        g.row(i).setConstant(-p.p1 * x[i]);
        g(i, i) = price - p.p1 * x[i] - p.cost[i];
      }
      break;
    }
    case Family::Commons: {
      const double total = x.sum();
      if (!(total > 0.0))
        throw DomainError("commons payoff gradient is singular at zero total extraction");
      const double avg = std::pow(total, p.beta - 1.0);
      const double slope = (p.beta - 1.0) * std::pow(total, p.beta - 2.0);
      for (int i = 0; i < n_; ++i) {
        g.row(i).setConstant(x[i] * slope);
        g(i, i) = avg + x[i] * slope - p.alpha;
      }
      break;
    }
  }
  return g;
}

void Game::line_payoffs(int i, const Vector& origin, const Vector& direction, double lo,
                        double step, std::span<double> out) const {
  check_index(origin, n_, i);
  check_index(direction, n_, i);
  const auto& p = params_;
  // Quadratic-in-t restrictions go through the polynomial grid kernel.
  switch (family_) {
    case Family::QuadraticPublicGoods:
    case Family::CustomQuadratic: {
      double lin = p.a[i] * direction[i] - p.b[i] * origin[i] * direction[i];
      for (int j = 0; j < n_; ++j) {
        if (j == i) continue;
        const double gij = family_ == Family::CustomQuadratic ? p.gamma_matrix(i, j) : p.gamma;
        lin += gij * direction[j];
      }
      const double quad = -0.5 * p.b[i] * direction[i] * direction[i];
      kernels::poly2_grid(payoff(origin, i), lin, quad, lo, step, out);
      return;
    }
    case Family::LinearCournot: {
      const double margin = p.p0 - p.cost[i] - p.p1 * origin.sum();
      const double drop = -p.p1 * direction.sum();
      kernels::poly2_grid(origin[i] * margin, origin[i] * drop + direction[i] * margin,
                          direction[i] * drop, lo, step, out);
      return;
    }
    case Family::Commons:
      GameModel::line_payoffs(i, origin, direction, lo, step, out);
      return;
  }
}

// ---------------------------------------------------------------------------

TransformedGame::TransformedGame(std::shared_ptr<const GameModel> base, Vector scale,
                                 Vector offset)
    : base_(std::move(base)), scale_(std::move(scale)), offset_(std::move(offset)) {
  const int n = base_->players();
  if (scale_.size() != n || offset_.size() != n)
    throw DomainError(fmt::format("reparametrization vectors need {} entries", n));
}

Vector TransformedGame::to_base(const Vector& z) const {
  return offset_ + scale_.cwiseProduct(z);
}

Vector TransformedGame::from_base(const Vector& x) const {
  return (x - offset_).cwiseQuotient(scale_);
}

double TransformedGame::payoff(const Vector& z, int i) const {
  if (z.size() != players())
    throw DomainError(fmt::format("profile has {} entries, game has {} players", z.size(), players()));
  return base_->payoff(to_base(z), i);
}

GradientMatrix TransformedGame::gradient(const Vector& z) const {
  if (z.size() != players())
    throw DomainError(fmt::format("profile has {} entries, game has {} players", z.size(), players()));
  return base_->gradient(to_base(z)) * scale_.asDiagonal();
}

void TransformedGame::line_payoffs(int i, const Vector& origin, const Vector& direction,
                                   double lo, double step, std::span<double> out) const {
  base_->line_payoffs(i, to_base(origin), scale_.cwiseProduct(direction), lo, step, out);
}

TransformedGame shifted_game(std::shared_ptr<const GameModel> base, const Vector& c) {
  const int n = base->players();
  return TransformedGame(std::move(base), Vector::Ones(n), c);
}

TransformedGame reparametrize_affine(std::shared_ptr<const GameModel> base, const Vector& scale,
                                     const Vector& offset) {
  for (double s : scale)
    if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("reparametrization scale must be positive");
  for (double o : offset)
    if (!(o >= 0.0) || !std::isfinite(o)) throw DomainError("reparametrization offset must be nonnegative");
  return TransformedGame(std::move(base), scale, offset);
}

void require_profile(const GameModel& game, const Vector& x) {
  if (x.size() != game.players())
    throw DomainError(
        fmt::format("profile has {} entries, game has {} players", x.size(), game.players()));
  for (int j = 0; j < x.size(); ++j)
    if (!std::isfinite(x[j]) || x[j] < 0.0)
      throw DomainError(fmt::format("strategy {} must be finite and nonnegative, got {}", j + 1, x[j]));
}

bool is_interior(const Vector& x) { return x.size() > 0 && (x.array() > 0.0).all(); }

GradientMatrix finite_difference_gradient(const GameModel& game, const Vector& x, double h) {
  const int n = game.players();
  GradientMatrix g(n, n);
  Vector xp = x, xm = x;
  for (int j = 0; j < n; ++j) {
    xp[j] = x[j] + h;
    xm[j] = x[j] - h;
    for (int i = 0; i < n; ++i) g(i, j) = (game.payoff(xp, i) - game.payoff(xm, i)) / (2.0 * h);
    xp[j] = xm[j] = x[j];
  }
  return g;
}

Matrix finite_difference_hessian(const GameModel& game, const Vector& x, int i, double h) {
  const int n = game.players();
  Matrix hess(n, n);
  Vector xp = x, xm = x;
  for (int j = 0; j < n; ++j) {
    xp[j] = x[j] + h;
    xm[j] = x[j] - h;
    hess.col(j) = (game.gradient(xp).row(i) - game.gradient(xm).row(i)).transpose() / (2.0 * h);
    xp[j] = xm[j] = x[j];
  }
  return 0.5 * (hess + hess.transpose());
}

}  // namespace kantian
