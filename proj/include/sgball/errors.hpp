#pragma once

#include <stdexcept>
#include <string>

namespace sgball {

/// Argument outside the mathematical domain of an operation (t outside
/// [-1, 1], a point outside the closed ball, alpha <= -1, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Structurally invalid input: bad index, degree too small, unknown case.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure failed (non-convergence, non-finite data, a grid
/// too coarse for the requested exactness).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConvergenceError : public NumericalError {
 public:
  ConvergenceError(const std::string& what, int index)
      : NumericalError(what), index_(index) {}
  int index() const noexcept { return index_; }

 private:
  int index_;
};

class GridTooCoarse : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NonFiniteSample : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace sgball
