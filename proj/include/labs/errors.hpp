#pragma once

#include <stdexcept>
#include <string>

namespace labsolve {

/// Malformed or out-of-domain argument (bad sequence text, N < 2, index out of range).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An exhaustive routine was asked for a size above its enumeration cap.
class CapExceeded : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Γ₂ vanished, so the counterdiabatic coefficient is undefined.
class SingularCoefficient : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Not enough data points or groups for a statistic.
class InsufficientData : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Two fits with equal slopes never cross.
class NoCrossover : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace labsolve
