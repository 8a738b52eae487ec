#pragma once

#include <stdexcept>
#include <string>

namespace frachh {

// Bad mathematical input: parameters outside an operator's domain
// (alpha <= 0, a >= b, negative base with fractional r, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A function produced a non-finite value where a finite one was required.
// Carries the abscissa at which the evaluation failed.
class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(const std::string& what, double abscissa)
      : std::runtime_error(what + " (at x = " + std::to_string(abscissa) + ")"),
        abscissa_(abscissa) {}

  double abscissa() const noexcept { return abscissa_; }

 private:
  double abscissa_;
};

// A quadrature or iteration failed to reach the requested tolerance
// within its budget.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A theorem's hypothesis failed its sampled check (eta-convexity,
// positivity, ...); the conclusion is not asserted.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed sweep configuration or CLI input.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Filesystem failure writing or reading an artifact.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace frachh
