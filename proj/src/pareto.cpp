#include "kantian/pareto.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "kantian/error.hpp"

namespace kantian {

namespace {

constexpr double kCertifyTol = 1e-6;

Vector normalized(const Vector& m) {
  for (double e : m)
    if (!(e > 0.0) || !std::isfinite(e)) throw DomainError("scalarization weights must be positive");
  return m / m.sum();
}

double interior_floor(const Vector& x) { return 1e-8 * std::max(1.0, x.cwiseAbs().maxCoeff()); }

bool comfortably_interior(const Vector& x) { return (x.array() > interior_floor(x)).all(); }

// Gradient that reports an undefined point as NaN instead of throwing, so the
// line search can back off.
Vector safe_gradient_sum(const GameModel& game, const Vector& x, const Vector& w) {
  try {
    return game.gradient(x).transpose() * w;
  } catch (const DomainError&) {
    return Vector::Constant(x.size(), std::numeric_limits<double>::quiet_NaN());
  }
}

std::string format_vector(const Vector& v) {
  std::string s = "(";
  for (int i = 0; i < v.size(); ++i) s += fmt::format("{}{:.6g}", i ? ", " : "", v[i]);
  return s + ")";
}

}  // namespace

double certification_residual(const GradientMatrix& g, const Vector& m) {
  const double scale = g.rowwise().norm().maxCoeff();
  const double r = (g.transpose() * m).norm();
  return scale > 0.0 ? r / scale : r;
}

EfficiencyCertificate certify_efficiency(const GameModel& game, const Vector& x, double tol,
                                         double floor) {
  require_profile(game, x);
  if (!is_interior(x)) throw DomainError("certify_efficiency needs an interior profile");
  const GradientMatrix g = game.gradient(x);
  EfficiencyCertificate cert;
  cert.m = simplex_least_squares(g.transpose());
  cert.residual = certification_residual(g, cert.m);
  cert.accepted = cert.residual <= tol && cert.m.minCoeff() >= floor;
  return cert;
}

ParetoPoint scalarize(const GameModel& game, const Vector& m, const SolverConfig& cfg,
                      const Vector& x0) {
  const int n = game.players();
  if (m.size() != n) throw DomainError(fmt::format("need {} weights, got {}", n, m.size()));
  const Vector w = normalized(m);
  const Vector start = x0.size() == n ? x0 : Vector::Ones(n);

  auto f = [&](const Vector& x) { return w.dot(game.payoffs(x)); };
  auto grad = [&](const Vector& x) { return safe_gradient_sum(game, x, w); };
  const MaximizeResult r = maximize_concave(f, grad, start, cfg);

  if (!comfortably_interior(r.x))
    throw NonInteriorError(
        fmt::format("weighted-sum optimum {} lies on the boundary", format_vector(r.x)));

  ParetoPoint p;
  p.x = r.x;
  p.m = w;
  p.weights = w;
  p.payoffs = game.payoffs(r.x);
  p.cert_residual = certification_residual(game.gradient(r.x), w);
  p.method = Scalarization::WeightedSum;
  if (p.cert_residual > kCertifyTol)
    throw InconsistencyError(fmt::format("scalarized point fails re-certification ({:.3e})",
                                         p.cert_residual));
  return p;
}

// ---------------------------------------------------------------------------

FrontierSampler::FrontierSampler(const GameModel& game, SolverConfig cfg)
    : game_(game), cfg_(std::move(cfg)) {
  const int n = game_.players();
  status_quo_ = game_.payoffs(Vector::Zero(n));

  auto beats_status_quo = [&](const Vector& x) {
    return ((game_.payoffs(x) - status_quo_).array() > 0.0).all();
  };
  try {
    const ParetoPoint util = scalarize(game_, Vector::Ones(n), cfg_);
    if (beats_status_quo(util.x)) np_start_ = util.x;
  } catch (const Error&) {
  }
  for (int k = 0; !np_start_ && k < 40; ++k) {
    const Vector x = Vector::Constant(n, std::ldexp(1.0, -k));
    if (beats_status_quo(x)) np_start_ = x;
  }
}

ParetoPoint FrontierSampler::nash_product(const Vector& weights) const {
  if (!np_start_)
    throw NonInteriorError("no profile improves every player on the zero profile");
  const Vector w = normalized(weights);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  auto f = [&](const Vector& x) {
    const Vector gain = game_.payoffs(x) - status_quo_;
    if ((gain.array() <= 0.0).any()) return -std::numeric_limits<double>::infinity();
    return w.dot(gain.array().log().matrix());
  };
  auto grad = [&](const Vector& x) {
    const Vector gain = game_.payoffs(x) - status_quo_;
    if ((gain.array() <= 0.0).any()) return Vector(Vector::Constant(x.size(), nan));
    return safe_gradient_sum(game_, x, w.cwiseQuotient(gain));
  };
  const MaximizeResult r = maximize_concave(f, grad, *np_start_, cfg_);
  if (!comfortably_interior(r.x))
    throw NonInteriorError(
        fmt::format("Nash-product optimum {} lies on the boundary", format_vector(r.x)));

  const EfficiencyCertificate cert = certify_efficiency(game_, r.x, kCertifyTol);
  if (!cert.accepted)
    throw NotEfficientError(fmt::format("Nash-product optimum fails certification ({:.3e})",
                                        cert.residual));
  ParetoPoint p;
  p.x = r.x;
  p.m = cert.m;
  p.weights = w;
  p.payoffs = game_.payoffs(r.x);
  p.cert_residual = cert.residual;
  p.method = Scalarization::WeightedNashProduct;
  return p;
}

ParetoPoint FrontierSampler::at(const Vector& weights) const {
  try {
    return scalarize(game_, weights, cfg_);
  } catch (const NonInteriorError&) {
  } catch (const NonConvergenceError&) {
  }
  return nash_product(weights);
}

// ---------------------------------------------------------------------------

namespace {

std::vector<int> first_primes(int count) {
  std::vector<int> primes;
  for (int c = 2; static_cast<int>(primes.size()) < count; ++c) {
    bool prime = true;
    for (int p : primes)
      if (c % p == 0) {
        prime = false;
        break;
      }
    if (prime) primes.push_back(c);
  }
  return primes;
}

double radical_inverse(int index, int base) {
  double inv = 1.0 / base, f = inv, r = 0.0;
  while (index > 0) {
    r += f * (index % base);
    index /= base;
    f *= inv;
  }
  return r;
}

}  // namespace

std::vector<Vector> sweep_weights(int n, int k) {
  if (n < 2) throw DomainError("sweep needs at least two players");
  if (k < 1) throw DomainError("sweep needs at least one point");
  std::vector<Vector> out;
  if (k == 1) {
    out.push_back(Vector::Constant(n, 1.0 / n));
    return out;
  }
  if (n == 2) {
    for (int j = 1; j <= k; ++j) {
      const double m1 = static_cast<double>(j) / (k + 1);
      out.push_back((Vector(2) << m1, 1.0 - m1).finished());
    }
    return out;
  }
  out.push_back(Vector::Constant(n, 1.0 / n));
  const std::vector<int> bases = first_primes(n - 1);
  for (int index = 1; static_cast<int>(out.size()) < k; ++index) {
    std::vector<double> u(n - 1);
    for (int d = 0; d < n - 1; ++d) u[d] = radical_inverse(index, bases[d]);
    std::sort(u.begin(), u.end());
    Vector w(n);
    double prev = 0.0;
    for (int d = 0; d < n - 1; ++d) {
      w[d] = u[d] - prev;
      prev = u[d];
    }
    w[n - 1] = 1.0 - prev;
    if (w.minCoeff() <= 1e-9) continue;
    out.push_back(w);
  }
  std::sort(out.begin(), out.end(), [](const Vector& a, const Vector& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  });
  return out;
}

FrontierSweep sweep_frontier(const GameModel& game, int k, const SolverConfig& cfg) {
  const FrontierSampler sampler(game, cfg);
  FrontierSweep sweep;
  for (const Vector& w : sweep_weights(game.players(), k)) {
    ParetoPoint p;
    try {
      p = sampler.at(w);
    } catch (const NonInteriorError&) {
      ++sweep.boundary_rejections;
      continue;
    } catch (const NotEfficientError&) {
      ++sweep.boundary_rejections;
      continue;
    }
    const bool duplicate = std::any_of(sweep.points.begin(), sweep.points.end(),
                                       [&](const ParetoPoint& q) {
                                         return (q.x - p.x).cwiseAbs().maxCoeff() <= 1e-6;
                                       });
    if (duplicate) {
      ++sweep.duplicates;
      continue;
    }
    sweep.points.push_back(std::move(p));
  }
  return sweep;
}

bool dominates(const Vector& u, const Vector& v, double tol) {
  return ((u - v).array() >= -tol).all() && ((u - v).array() > tol).any();
}

}  // namespace kantian
