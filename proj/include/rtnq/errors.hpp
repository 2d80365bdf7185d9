#pragma once

#include <stdexcept>
#include <string>

namespace rtnq {

// Physical units with a non-positive coupling amplitude.
class InvalidUnits : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Negative, non-finite or all-zero switching rates.
class InvalidRates : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A time argument outside the simulated horizon.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// A matrix that fails the density-matrix contract (hermiticity, trace, positivity).
class InvariantViolation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// |Lambda| too small for the Kraus phase Lambda/|Lambda| to be defined.
class DegeneratePhase : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace rtnq
