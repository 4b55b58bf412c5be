#pragma once

#include <stdexcept>
#include <string>

namespace dischull {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Adaptive quadrature gave up. Carries the best estimate reached so far.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double best_value, double best_error)
      : std::runtime_error(what), best_value_(best_value), best_error_(best_error) {}

  double best_value() const noexcept { return best_value_; }
  double best_error() const noexcept { return best_error_; }

 private:
  double best_value_;
  double best_error_;
};

/// The requested (configuration, quantity) pair has no known closed form.
class NoClosedForm : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The requested route does not apply to the configuration.
class UnsupportedMethod : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Hull construction input is degenerate (coplanar, collinear, too few points).
class DegenerateInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dischull
