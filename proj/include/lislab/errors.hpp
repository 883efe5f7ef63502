#pragma once

#include <stdexcept>
#include <string>

namespace lislab {

// Argument outside the documented domain of a function or operator.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Malformed configuration or unsupported combination of options.
struct ArgumentError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A computation did not reach its tolerance (non-convergence, singular system,
// residual too large, non-integral exact count).
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// File could not be read, written or parsed.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace lislab
