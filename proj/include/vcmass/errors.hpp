#pragma once

#include <stdexcept>
#include <string>

namespace vcmass {

/// Requested element kind / polynomial degree combination is not available.
class UnsupportedConfigError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Mesh file could not be parsed; message carries the 1-based line number.
class MeshParseError : public std::runtime_error {
public:
  MeshParseError(const std::string& message, int line)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        message_(message),
        line_(line) {}
  int line() const { return line_; }
  const std::string& raw_message() const { return message_; }

private:
  std::string message_;
  int line_;
};

/// A matrix that must be symmetric positive definite failed its factorization.
/// `pivot` is the index at which the Cholesky decomposition broke down.
class DefinitenessError : public std::runtime_error {
public:
  DefinitenessError(const std::string& what, int pivot)
      : std::runtime_error(what + " (pivot " + std::to_string(pivot) + ")"), pivot_(pivot) {}
  int pivot() const { return pivot_; }

private:
  int pivot_;
};

/// All degrees of freedom were eliminated by essential boundary conditions.
class EmptySystemError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Explicit time stepping diverged (non-finite state or energy blowup).
/// `step` is the index of the step at which divergence was detected.
class InstabilityError : public std::runtime_error {
public:
  InstabilityError(const std::string& what, long step)
      : std::runtime_error(what + " at step " + std::to_string(step)), step_(step) {}
  long step() const { return step_; }

private:
  long step_;
};

}  // namespace vcmass
