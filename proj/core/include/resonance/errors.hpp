#pragma once

#include <stdexcept>
#include <string>

namespace resonance {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A bracketing search found no sign change.
class SearchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Quadrature could not reach the requested tolerance.
class AccuracyError : public std::runtime_error {
 public:
  AccuracyError(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_(achieved) {}
  double achieved_bound() const noexcept { return achieved_; }

 private:
  double achieved_;
};

// Newton iteration did not converge.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double last_residual)
      : std::runtime_error(what), last_residual_(last_residual) {}
  double last_residual() const noexcept { return last_residual_; }

 private:
  double last_residual_;
};

// The problem violates the hypotheses the solver relies on.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace resonance
