#pragma once

#include <stdexcept>

namespace areawalk {

/// An iterative method failed to reach its tolerance.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A series was asked to evaluate outside its radius of convergence.
struct DivergenceError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Simulator invariant broken beyond rounding tolerance. `what()` carries a
/// dump of the offending state.
struct SimulationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace areawalk
