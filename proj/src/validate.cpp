#include <algorithm>
#include <cmath>
#include <random>

#include "kantian/game.hpp"

namespace kantian {

std::string_view violation_name(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::OwnConcavity: return "own-concavity";
    case ViolationKind::RayConcavity: return "ray-concavity";
    case ViolationKind::NonUnidirectional: return "non-unidirectional";
    case ViolationKind::JointConcavity: return "joint-concavity";
  }
  return "?";
}

ValidationReport validate_game(const GameModel& game, int samples, std::uint64_t seed,
                               double fd_step) {
  const int n = game.players();
  ValidationReport report;
  report.samples = std::max(samples, 1);
  report.declared_sign = game.externality_sign();

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> draw(0.05, 4.0);

  bool saw_pos = false, saw_neg = false, saw_zero = false;
  Vector x(n);
  for (int s = 0; s < report.samples; ++s) {
    for (int j = 0; j < n; ++j) x[j] = draw(rng);
    const GradientMatrix g = game.gradient(x);

    for (int i = 0; i < n; ++i) {
      const double row_scale = std::max(1.0, g.row(i).cwiseAbs().maxCoeff());
      bool flagged = false;
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        const double v = g(i, j);
        int sgn = 0;
        if (std::abs(v) > 1e-12 * row_scale) sgn = v > 0.0 ? 1 : -1;
        saw_pos |= sgn > 0;
        saw_neg |= sgn < 0;
        saw_zero |= sgn == 0;
        if (sgn != report.declared_sign && !flagged) {
          report.violations.push_back({ViolationKind::NonUnidirectional, i, x, v});
          flagged = true;
        }
      }

      const Matrix h = finite_difference_hessian(game, x, i, fd_step);
      const double h_scale = std::max(1.0, h.cwiseAbs().maxCoeff());
      if (!(h(i, i) < -1e-8 * h_scale))
        report.violations.push_back({ViolationKind::OwnConcavity, i, x, h(i, i)});

      const double along_ray = x.dot(h * x);
      if (along_ray > 1e-6 * h_scale * x.squaredNorm())
        report.violations.push_back({ViolationKind::RayConcavity, i, x, along_ray});

      const double top = Eigen::SelfAdjointEigenSolver<Matrix>(h, Eigen::EigenvaluesOnly)
                             .eigenvalues()
                             .maxCoeff();
      if (top > 1e-6 * h_scale) report.notes.push_back({ViolationKind::JointConcavity, i, x, top});
    }
  }
  if (!saw_zero && saw_pos != saw_neg) report.detected_sign = saw_pos ? 1 : -1;
  return report;
}

}  // namespace kantian
