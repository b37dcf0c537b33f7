#pragma once

#include <stdexcept>
#include <string>

namespace mdbench {

// Invalid game, configuration, or policy input. The CLI maps this to exit code 1.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Numerical failure in an iterative solver. The CLI maps this to exit code 2.
struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace mdbench
