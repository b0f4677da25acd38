#pragma once

#include <numbers>
#include <stdexcept>
#include <string>

namespace bandlimit {

inline constexpr double kPi = std::numbers::pi;

// Invalid numeric parameter (non-positive width, bad family parameter, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A documented precondition of an operation does not hold for its input.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An object's internal invariant is violated (e.g. non-Hermitian coefficients).
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// An iterative procedure exhausted its budget before reaching the requested
// tolerance. Carries the error estimate that was achieved.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double achieved)
      : std::runtime_error(what + " (achieved error estimate " + std::to_string(achieved) + ")"),
        achieved_(achieved) {}

  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

// A measure integral does not settle within the scan budget: the integrand is
// not absolutely integrable (or decays too slowly to certify).
class IntegrabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void require_positive(double value, const char* name) {
  if (!(value > 0.0)) {
    throw ParameterError(std::string(name) + " must be positive, got " + std::to_string(value));
  }
}

}  // namespace detail
}  // namespace bandlimit
