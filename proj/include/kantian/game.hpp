#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace kantian {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Row i holds the gradient of player i's payoff.
using GradientMatrix = Eigen::MatrixXd;

inline constexpr int kMaxPlayers = 64;

enum class Family { QuadraticPublicGoods, LinearCournot, Commons, CustomQuadratic };

std::string_view family_name(Family f);
Family parse_family(std::string_view name);

/// Common interface for anything that maps a strategy profile to payoffs:
/// a base game or a reparametrized view of one. Implementations are immutable.
class GameModel {
 public:
  virtual ~GameModel() = default;

  virtual int players() const = 0;

  /// Payoff of player i (0-based) at profile x.
  virtual double payoff(const Vector& x, int i) const = 0;

  /// All payoffs at x.
  Vector payoffs(const Vector& x) const;

  virtual GradientMatrix gradient(const Vector& x) const = 0;

  /// Declared sign of the cross-partials (+1 or -1).
  virtual int externality_sign() const = 0;

  /// Fills out[k] with U_i(origin + t_k * direction), t_k = lo + k*step.
  /// The default evaluates payoff() point by point; families with a
  /// closed-form line restriction override it.
  virtual void line_payoffs(int i, const Vector& origin, const Vector& direction,
                            double lo, double step, std::span<double> out) const;
};

/// Family parameters. Vectors are per player; unused fields stay empty.
struct GameParams {
  Vector a;      // QuadraticPublicGoods / CustomQuadratic: linear own term
  Vector b;      // QuadraticPublicGoods / CustomQuadratic: own curvature, > 0
  double gamma = 0.0;  // QuadraticPublicGoods: spillover
  Matrix gamma_matrix; // CustomQuadratic: gamma(i, j) is player j's effect on i
  double p0 = 0.0;     // LinearCournot: demand intercept
  double p1 = 0.0;     // LinearCournot: demand slope
  Vector cost;         // LinearCournot: marginal costs
  double alpha = 0.0;  // Commons: unit effort cost
  double beta = 0.0;   // Commons: returns exponent in (0, 1)
};

/// A game from one of the four built-in payoff families.
class Game final : public GameModel {
 public:
  /// Throws GameSpecError when parameters are missing or out of range.
  Game(int n, Family family, GameParams params, int externality_sign);

  static Game quadratic_public_goods(int n, double a, double b, double gamma);
  static Game quadratic_public_goods(Vector a, Vector b, double gamma);
  static Game linear_cournot(int n, double p0, double p1, double cost);
  static Game linear_cournot(double p0, double p1, Vector cost);
  static Game commons(int n, double alpha, double beta);
  static Game custom_quadratic(Vector a, Vector b, Matrix gamma, int externality_sign);

  int players() const override { return n_; }
  Family family() const { return family_; }
  const GameParams& params() const { return params_; }
  int externality_sign() const override { return sign_; }

  double payoff(const Vector& x, int i) const override;
  GradientMatrix gradient(const Vector& x) const override;
  void line_payoffs(int i, const Vector& origin, const Vector& direction, double lo,
                    double step, std::span<double> out) const override;

 private:
  int n_;
  Family family_;
  GameParams params_;
  int sign_;
};

/// Strategies z mapped to base strategies by x = offset + scale .* z.
/// With unit scale this is the lower-bound shift z = x - c.
class TransformedGame final : public GameModel {
 public:
  TransformedGame(std::shared_ptr<const GameModel> base, Vector scale, Vector offset);

  int players() const override { return base_->players(); }
  int externality_sign() const override { return base_->externality_sign(); }
  double payoff(const Vector& z, int i) const override;
  GradientMatrix gradient(const Vector& z) const override;
  void line_payoffs(int i, const Vector& origin, const Vector& direction, double lo,
                    double step, std::span<double> out) const override;

  Vector to_base(const Vector& z) const;
  Vector from_base(const Vector& x) const;

  const GameModel& base() const { return *base_; }
  const Vector& scale() const { return scale_; }
  const Vector& offset() const { return offset_; }

 private:
  std::shared_ptr<const GameModel> base_;
  Vector scale_;
  Vector offset_;
};

/// Shift game: payoff_shifted(z) = payoff_base(z + c).
TransformedGame shifted_game(std::shared_ptr<const GameModel> base, const Vector& c);

/// General affine strategy reparametrization z = (x - offset) ./ scale.
/// Throws DomainError unless scale > 0 and offset >= 0.
TransformedGame reparametrize_affine(std::shared_ptr<const GameModel> base,
                                     const Vector& scale, const Vector& offset);

// Checks shared by the public operations.
void require_profile(const GameModel& game, const Vector& x);
bool is_interior(const Vector& x);

/// Central finite-difference gradient of every payoff.
GradientMatrix finite_difference_gradient(const GameModel& game, const Vector& x,
                                          double h = 1e-5);

/// Finite-difference Hessian of player i's payoff from the analytic gradient,
/// symmetrized.
Matrix finite_difference_hessian(const GameModel& game, const Vector& x, int i,
                                 double h = 1e-5);

// ---------------------------------------------------------------------------
// Structural validation of the game class.

enum class ViolationKind {
  OwnConcavity,       // own second derivative not strictly negative
  RayConcavity,       // a -> U_i(a x) not concave at a = 1
  NonUnidirectional,  // cross-partials of mixed sign, zero, or opposite to the declared sign
  JointConcavity,     // full Hessian not negative semidefinite (reported as a note)
};

std::string_view violation_name(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  int player;       // 0-based; -1 when not player-specific
  Vector profile;   // offending sample
  double value;     // the offending quantity (second derivative, eigenvalue, partial)
};

struct ValidationReport {
  int samples = 0;
  int declared_sign = 0;
  /// Sign seen in every sampled cross-partial, 0 when mixed or zero.
  int detected_sign = 0;
  std::vector<Violation> violations;  // any of these fails the game
  std::vector<Violation> notes;       // joint-concavity failures
  bool passed() const { return violations.empty(); }
};

/// Samples interior profiles and checks strict own-concavity, concavity along
/// rays through the origin, unidirectional externalities matching the declared
/// sign, and (as a note) joint concavity.
ValidationReport validate_game(const GameModel& game, int samples, std::uint64_t seed,
                               double fd_step = 1e-5);

}  // namespace kantian
