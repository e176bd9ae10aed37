#pragma once

#include <stdexcept>

namespace ctap {

// Invalid user-supplied parameters, lengths, or config values.
struct ValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A numerical invariant was violated mid-computation (degenerate spectrum,
// density-matrix drift, positivity loss).
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ctap
