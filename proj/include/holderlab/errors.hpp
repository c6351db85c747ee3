#pragma once

#include <stdexcept>
#include <string>

namespace holderlab {

/// Input that violates an operation's precondition (bad grid, bad exponent,
/// mismatched fields, malformed configuration, ...).
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

/// Time step above the advective limit. Carries the largest admissible step.
class CflViolation : public InvalidInput {
 public:
  CflViolation(const std::string& what, double admissible)
      : InvalidInput(what), admissible_dt_(admissible) {}
  double admissible_dt() const noexcept { return admissible_dt_; }

 private:
  double admissible_dt_;
};

/// A computation produced non-finite values or otherwise broke down.
class NumericalFailure : public std::runtime_error {
 public:
  explicit NumericalFailure(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace holderlab
