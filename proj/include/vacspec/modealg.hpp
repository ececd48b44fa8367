#pragma once

#include <Eigen/Dense>

#include "vacspec/materials.hpp"

namespace vacspec {

/// Gram matrix of the exterior mode commutators at one frequency, over the
/// (a+, a-) basis: G = [[1, i zeta], [-i conj(zeta), 1]]. Hermitian by
/// construction, eigenvalues 1 +- |zeta|.
struct CommutatorGram {
  Eigen::Matrix2cd G;
};

/// Coefficients of the decoupled modes (b1, b2) over (a+, a-), together with the
/// normalizations delta_pm = (1 +- |zeta|)^{-1/2}.
struct ModeTransform {
  Eigen::Matrix2cd matrix;
  double delta_plus = 0.0;
  double delta_minus = 0.0;
  double phi_zeta = 0.0;
};

CommutatorGram commutator_gram(Complex zeta);

/// Throws AlgebraBreakdownError for |zeta| >= 1.
ModeTransform build_transform(Complex zeta);

/// Max absolute deviation of M G M^dagger from the identity, combined with the
/// residual of the non-dagger [b1, b2] commutator (zero given [a+, a-] = 0).
/// Vanishes exactly when b1, b2 are independent canonical modes.
double verify_independence(const ModeTransform& t, const CommutatorGram& g);

}  // namespace vacspec
