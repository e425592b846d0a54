#pragma once

#include <optional>
#include <string_view>

#include "kantian/pareto.hpp"

namespace kantian {

enum class CriterionKind { Utilitarian, Maximin, NashBargaining, KalaiSmorodinsky };

std::string_view criterion_name(CriterionKind k);

/// Accepts utilitarian, maximin, nash-bargaining (or nash), kalai-smorodinsky
/// (or ks). Throws DomainError otherwise.
CriterionKind parse_criterion(std::string_view name);

struct Criterion {
  CriterionKind kind = CriterionKind::Utilitarian;
  /// Disagreement payoffs for the bargaining criteria; Nash equilibrium
  /// payoffs when empty.
  std::optional<Vector> disagreement;
};

struct Selection {
  ParetoPoint point;
  double objective = 0.0;
  Vector disagreement;  // empty for Utilitarian and Maximin
};

/// Picks a frontier point by the criterion: the best of k sampled weight
/// vectors (first wins ties, i.e. the lexicographically smallest), refined by
/// golden-section search on the weight for two players or a pairwise
/// weight-transfer search otherwise. Utilitarian is exact (uniform weights).
/// Throws InadmissibleError when no sample dominates the disagreement point.
Selection select_point(const GameModel& game, const Criterion& crit, int k, const SolverConfig& cfg);

}  // namespace kantian
