#pragma once

#include <stdexcept>

namespace vacspec {

/// Response function evaluated where eps*mu = 0 or a derived quantity is undefined.
struct SingularResponseError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Position argument outside the region a closed-form expression is valid in.
struct RegionError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Scattering denominator vanished. Unreachable for absorptive media (gamma > 0);
/// guards lossless experimentation.
struct DegenerateGeometryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Mode decoupling requested for |zeta| >= 1, where delta_minus is not real.
struct AlgebraBreakdownError : std::domain_error {
  using std::domain_error::domain_error;
};

}  // namespace vacspec
