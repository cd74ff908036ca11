#pragma once

#include <stdexcept>
#include <string>

namespace ringgyro {

/// Invalid user-facing configuration: bad grid sizes, unknown scheme ids,
/// malformed config files, out-of-range parameters.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two objects that must live on the same ring grid do not.
class GridMismatchError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An iterative procedure (imaginary-time relaxation, barrier bisection)
/// failed to reach its target.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace ringgyro
