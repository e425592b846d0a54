#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace kantian {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed game description (unknown family, missing or out-of-range parameters).
class GameSpecError : public Error {
 public:
  using Error::Error;
};

/// An argument outside an operation's domain: wrong dimension, bad index,
/// negative strategy, singular derivative.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Iterative method stopped without meeting its tolerance.
class NonConvergenceError : public Error {
 public:
  NonConvergenceError(const std::string& what, Eigen::VectorXd last_iterate)
      : Error(what), last_iterate_(std::move(last_iterate)) {}
  const Eigen::VectorXd& last_iterate() const noexcept { return last_iterate_; }

 private:
  Eigen::VectorXd last_iterate_;
};

/// Golden-section and grid maximizers disagree: the objective is not unimodal.
class NonUnimodalError : public Error {
 public:
  using Error::Error;
};

/// A scalarized or selected optimum has a zero coordinate.
class NonInteriorError : public Error {
 public:
  using Error::Error;
};

/// The MKE system converged to a root with a non-positive coordinate.
class DegenerateRootError : public Error {
 public:
  using Error::Error;
};

/// No strictly positive common-tangent direction at the requested point.
class NoShiftDirectionError : public Error {
 public:
  using Error::Error;
};

/// The requested point is not Pareto efficient within tolerance.
class NotEfficientError : public Error {
 public:
  using Error::Error;
};

/// A bargaining criterion has no sampled point dominating the disagreement payoffs.
class InadmissibleError : public Error {
 public:
  using Error::Error;
};

/// A result that should hold by construction failed its own check.
class InconsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace kantian
