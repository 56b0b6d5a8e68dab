#pragma once

#include <stdexcept>
#include <string>

namespace chsh {

/// Raised for non-finite angles, outcomes outside their alphabet, and other
/// malformed arguments.
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

/// The augmented marginal system has higher rank than the coefficient matrix.
class NoSolution : public std::runtime_error {
 public:
  explicit NoSolution(const std::string& what) : std::runtime_error(what) {}
};

/// An estimator was asked to divide by a zero event count.
class UndefinedEstimate : public std::domain_error {
 public:
  explicit UndefinedEstimate(const std::string& what) : std::domain_error(what) {}
};

/// An output file could not be written.
class OutputError : public std::runtime_error {
 public:
  explicit OutputError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace chsh
