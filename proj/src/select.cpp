#include "kantian/select.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include <fmt/format.h>

#include "kantian/equilibrium.hpp"
#include "kantian/error.hpp"

namespace kantian {

std::string_view criterion_name(CriterionKind k) {
  switch (k) {
    case CriterionKind::Utilitarian: return "utilitarian";
    case CriterionKind::Maximin: return "maximin";
    case CriterionKind::NashBargaining: return "nash-bargaining";
    case CriterionKind::KalaiSmorodinsky: return "kalai-smorodinsky";
  }
  return "?";
}

CriterionKind parse_criterion(std::string_view name) {
  if (name == "utilitarian") return CriterionKind::Utilitarian;
  if (name == "maximin" || name == "rawlsian") return CriterionKind::Maximin;
  if (name == "nash-bargaining" || name == "nash") return CriterionKind::NashBargaining;
  if (name == "kalai-smorodinsky" || name == "ks") return CriterionKind::KalaiSmorodinsky;
  throw DomainError(fmt::format("unknown criterion '{}'", name));
}

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

using Score = std::function<double(const Vector& payoffs)>;

double evaluate(const FrontierSampler& sampler, const Score& score, const Vector& w,
                ParetoPoint* out = nullptr) {
  try {
    ParetoPoint p = sampler.at(w);
    const double s = score(p.payoffs);
    if (out) *out = std::move(p);
    return s;
  } catch (const Error&) {
    return kNegInf;
  }
}

Vector refine_two_players(const FrontierSampler& sampler, const Score& score,
                          const std::vector<Vector>& weights, std::size_t best) {
  auto at = [](double t) { return (Vector(2) << t, 1.0 - t).finished(); };
  const double lo = best == 0 ? 1e-6 : weights[best - 1][0];
  const double hi = best + 1 == weights.size() ? 1.0 - 1e-6 : weights[best + 1][0];
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - kInvPhi * (b - a), d = a + kInvPhi * (b - a);
  double fc = evaluate(sampler, score, at(c)), fd = evaluate(sampler, score, at(d));
  while (b - a > 1e-10) {
    if (fc >= fd) {
      b = d, d = c, fd = fc;
      c = b - kInvPhi * (b - a);
      fc = evaluate(sampler, score, at(c));
    } else {
      a = c, c = d, fc = fd;
      d = a + kInvPhi * (b - a);
      fd = evaluate(sampler, score, at(d));
    }
  }
  const Vector mid = at(0.5 * (a + b));
  const double f_mid = evaluate(sampler, score, mid);
  const double f_best = evaluate(sampler, score, weights[best]);
  return f_mid >= f_best ? mid : weights[best];
}

Vector refine_many_players(const FrontierSampler& sampler, const Score& score, Vector w) {
  const int n = static_cast<int>(w.size());
  double f = evaluate(sampler, score, w);
  double delta = 0.25 * w.minCoeff();
  for (int evals = 0; delta > 1e-9 && evals < 4000;) {
    bool improved = false;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j || w[j] - delta <= 1e-9) continue;
        Vector trial = w;
        trial[i] += delta;
        trial[j] -= delta;
        const double ft = evaluate(sampler, score, trial);
        ++evals;
        if (ft > f) {
          w = trial;
          f = ft;
          improved = true;
        }
      }
    if (!improved) delta *= 0.5;
  }
  return w;
}

}  // namespace

Selection select_point(const GameModel& game, const Criterion& crit, int k, const SolverConfig& cfg) {
  const int n = game.players();
  const FrontierSampler sampler(game, cfg);
  Selection sel;

  if (crit.kind == CriterionKind::Utilitarian) {
    sel.point = sampler.at(Vector::Constant(n, 1.0 / n));
    sel.objective = sel.point.payoffs.sum();
    return sel;
  }
  if (k < 2) throw DomainError("selection needs at least two frontier samples");

  const bool bargaining = crit.kind == CriterionKind::NashBargaining ||
                          crit.kind == CriterionKind::KalaiSmorodinsky;
  if (bargaining) {
    if (crit.disagreement) {
      if (crit.disagreement->size() != n)
        throw DomainError(fmt::format("disagreement point needs {} entries", n));
      sel.disagreement = *crit.disagreement;
    } else {
      sel.disagreement = solve_nash(game, Vector::Ones(n), cfg).payoffs;
    }
  }
  const Vector d = sel.disagreement;

  const std::vector<Vector> weights = sweep_weights(n, k);
  std::vector<std::optional<ParetoPoint>> samples;
  for (const Vector& w : weights) {
    try {
      samples.emplace_back(sampler.at(w));
    } catch (const Error&) {
      samples.emplace_back();
    }
  }

  Score score;
  switch (crit.kind) {
    case CriterionKind::Maximin:
      score = [](const Vector& u) { return u.minCoeff(); };
      break;
    case CriterionKind::NashBargaining:
      score = [d](const Vector& u) {
        const Vector gain = u - d;
        if ((gain.array() <= 0.0).any()) return kNegInf;
        return gain.array().log().sum();
      };
      break;
    case CriterionKind::KalaiSmorodinsky: {
      Vector ideal = Vector::Constant(n, kNegInf);
      for (const auto& s : samples)
        if (s) ideal = ideal.cwiseMax(s->payoffs);
      const Vector span = ideal - d;
      if (!(span.array() > 0.0).all())
        throw InadmissibleError("no sampled point improves every player on the disagreement point");
      score = [d, span](const Vector& u) {
        const Vector gain = u - d;
        if ((gain.array() <= 0.0).any()) return kNegInf;
        return gain.cwiseQuotient(span).minCoeff();
      };
      break;
    }
    case CriterionKind::Utilitarian:
      break;
  }

  std::size_t best = weights.size();
  double best_score = kNegInf;
  for (std::size_t j = 0; j < samples.size(); ++j) {
    if (!samples[j]) continue;
    const double s = score(samples[j]->payoffs);
    if (s > best_score) {
      best_score = s;
      best = j;
    }
  }
  if (best == weights.size())
    throw InadmissibleError(bargaining ? "no sampled frontier point dominates the disagreement point"
                                       : "no interior frontier point was found");

  const Vector w = n == 2 ? refine_two_players(sampler, score, weights, best)
                          : refine_many_players(sampler, score, weights[best]);
  sel.objective = evaluate(sampler, score, w, &sel.point);
  if (!std::isfinite(sel.objective)) {
    sel.point = *samples[best];
    sel.objective = best_score;
  }

  const EfficiencyCertificate cert = certify_efficiency(game, sel.point.x, 1e-6);
  if (!cert.accepted)
    throw InconsistencyError(fmt::format("selected point fails certification ({:.3e})", cert.residual));
  return sel;
}

}  // namespace kantian
