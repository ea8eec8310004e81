#pragma once

#include <stdexcept>

namespace dra {

// Ambient-dimension disagreement between operands.
struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Requested object does not exist (empty solution set, impossible instance).
struct InfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An internal identity that must hold to tolerance failed to.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input file or parameter set.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace dra
