#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace modhom {

// Non-finite or out-of-domain arguments.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Operation called outside its precondition (wrong pump regime, tau != 0, ...).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Sampling grid too coarse or too narrow for the requested accuracy.
class ResolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Integration window truncates a measurable fraction of the integrand.
class WindowError : public ResolutionError {
 public:
  using ResolutionError::ResolutionError;
};

// A search (dip location, tau0 design) found no admissible answer.
class NotFound : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline double require_finite(double value, const char* what) {
  if (!std::isfinite(value)) {
    throw InvalidInput(std::string(what) + " must be finite");
  }
  return value;
}

inline double require_positive(double value, const char* what) {
  require_finite(value, what);
  if (!(value > 0.0)) {
    throw InvalidInput(std::string(what) + " must be > 0");
  }
  return value;
}

}  // namespace modhom
