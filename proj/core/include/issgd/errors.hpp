#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace issgd {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed arguments: wrong shapes, non-finite entries, missing fields.
class InputError : public Error {
 public:
  using Error::Error;
};

/// An iterative numerical kernel failed to converge.
class NumericError : public Error {
 public:
  NumericError(const std::string& what, std::size_t iterations)
      : Error(what + " (after " + std::to_string(iterations) + " iterations)"),
        iterations_(iterations) {}

  std::size_t iterations() const noexcept { return iterations_; }

 private:
  std::size_t iterations_;
};

/// A linear system is singular to working tolerance.
class ConditioningError : public Error {
 public:
  ConditioningError(const std::string& what, double condition_estimate)
      : Error(what + " (estimated condition number " +
              std::to_string(condition_estimate) + ")"),
        condition_estimate_(condition_estimate) {}

  double condition_estimate() const noexcept { return condition_estimate_; }

 private:
  double condition_estimate_;
};

/// A matrix that must be Hurwitz is not (gain outside the admissible set).
class StabilityError : public Error {
 public:
  StabilityError(const std::string& what, double max_real_part)
      : Error(what + " (max real part " + std::to_string(max_real_part) + ")"),
        max_real_part_(max_real_part) {}

  double max_real_part() const noexcept { return max_real_part_; }

 private:
  double max_real_part_;
};

/// Kleinman-Newton (or another outer iteration) ran out of iterations.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double last_residual)
      : Error(what + " (last residual " + std::to_string(last_residual) + ")"),
        last_residual_(last_residual) {}

  double last_residual() const noexcept { return last_residual_; }

 private:
  double last_residual_;
};

/// Argument outside the domain on which a quantity is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Disturbance budget at or above the supremum of the comparison function.
class DisturbanceTooLargeError : public Error {
 public:
  DisturbanceTooLargeError(const std::string& what, double budget, double supremum)
      : Error(what), budget_(budget), supremum_(supremum) {}

  double budget() const noexcept { return budget_; }
  double supremum() const noexcept { return supremum_; }

 private:
  double budget_;
  double supremum_;
};

/// Random problem generation gave up after the attempt limit.
class GenerationError : public Error {
 public:
  using Error::Error;
};

}  // namespace issgd
