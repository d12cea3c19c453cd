#pragma once

#include <stdexcept>
#include <string>

namespace dnb {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (negative or
/// non-finite input, point outside the open unit disk, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A bracketing or iterative procedure failed to converge.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Exponent / scenario parameters violate an admissible range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

class DensityError : public Error {
 public:
  using Error::Error;
};

class MeshError : public Error {
 public:
  using Error::Error;
};

class SolverError : public Error {
 public:
  SolverError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Invalid quadrature orders, malformed configuration and similar setup errors.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace dnb
