#pragma once

#include <stdexcept>

namespace soroute {

// Input file could not be understood (message carries file:line context).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Structurally well-formed input that violates a model invariant.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace soroute
