#pragma once

#include <stdexcept>
#include <string>

namespace morrey {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Grid construction arguments out of range.
class GridError : public Error {
 public:
  using Error::Error;
};

/// Two grid objects that must share a GridSpec do not.
class SpecMismatch : public Error {
 public:
  using Error::Error;
};

/// NaN or Inf produced where finite values are required.
class NonFiniteError : public Error {
 public:
  using Error::Error;
};

/// Evaluation at a genuine singularity without a policy to resolve it.
class SingularEvaluation : public Error {
 public:
  using Error::Error;
};

/// A compactly supported function does not fit inside the sampling box.
class SupportError : public Error {
 public:
  using Error::Error;
};

/// The complex Gamma function was asked for a value at a pole.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// A real parameter lies outside the admissible range of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// No lattice point lies in the requested ball.
class EmptyBallError : public Error {
 public:
  using Error::Error;
};

/// An exponent hypothesis of one of the inequalities is violated.
class HypothesisError : public Error {
 public:
  HypothesisError(std::string relation, const std::string& detail)
      : Error("hypothesis violated: " + relation + " (" + detail + ")"), relation_(std::move(relation)) {}

  const std::string& relation() const noexcept { return relation_; }

 private:
  std::string relation_;
};

/// Quadrature could not reach its requested accuracy.
class QuadratureError : public Error {
 public:
  using Error::Error;
};

/// Malformed configuration, descriptor or command line.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace morrey
