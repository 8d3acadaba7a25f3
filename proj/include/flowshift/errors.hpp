#pragma once

#include <stdexcept>
#include <string>

namespace flowshift {

/// A point left the flow's domain of definition (finite-time blow-up of the
/// power-line flow, or escape from a partial flow's open domain).
struct DomainEscape : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The supplied map fails a structural precondition that identifies it as a
/// shift of the given flow (fixed point not preserved, vanishing or
/// non-positive Hadamard quotient, ...).
struct NotAShift : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Projection of the map onto the factor flow is not a shift of the factor.
struct NotARegularExtensionShift : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Time-of-flight search found no admissible time within the injectivity
/// window.
struct NotOnLocalOrbit : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The shift map failed the grid diffeomorphism check, so no inverse shift
/// function can be built.
struct NotInvertible : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Newton iteration for a pointwise preimage did not converge.
struct NewtonFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace flowshift
