#include "vacspec/modealg.hpp"

#include <cmath>

#include "vacspec/errors.hpp"

namespace vacspec {

namespace {
constexpr Complex kI{0.0, 1.0};
}

CommutatorGram commutator_gram(Complex zeta) {
  CommutatorGram g;
  g.G << Complex{1.0, 0.0}, kI * zeta, -kI * std::conj(zeta), Complex{1.0, 0.0};
  return g;
}

ModeTransform build_transform(Complex zeta) {
  const double r = std::abs(zeta);
  if (r >= 1.0)
    throw AlgebraBreakdownError("build_transform: |zeta| >= 1, delta_minus not real");
  ModeTransform t;
  t.phi_zeta = std::arg(zeta);
  t.delta_plus = 1.0 / std::sqrt(1.0 + r);
  t.delta_minus = 1.0 / std::sqrt(1.0 - r);
  const double p = 0.5 * (t.delta_plus + t.delta_minus);
  const double q = 0.5 * (t.delta_plus - t.delta_minus);
  const Complex half_phase = std::exp(kI * (0.5 * t.phi_zeta));
  // Rows are the coefficients of b1, b2 over (a+, a-).
  t.matrix << p / half_phase, kI * q * half_phase,
              -kI * q / half_phase, p * half_phase;
  return t;
}

double verify_independence(const ModeTransform& t, const CommutatorGram& g) {
  // [b_i, b_j^dagger] = (M G M^dagger)_{ij}; independence means the identity.
  const Eigen::Matrix2cd dagger =
      t.matrix * g.G * t.matrix.adjoint() - Eigen::Matrix2cd::Identity();
  double worst = dagger.cwiseAbs().maxCoeff();

  // Non-dagger sector: [b_i, b_j] = (M Z M^T)_{ij} with Z the Gram of [a_k, a_l],
  // which vanishes identically ([a+, a-] = 0 and self-commutators are zero).
  const Eigen::Matrix2cd Z = Eigen::Matrix2cd::Zero();
  const Eigen::Matrix2cd plain = t.matrix * Z * t.matrix.transpose();
  worst = std::max(worst, plain.cwiseAbs().maxCoeff());
  return worst;
}

}  // namespace vacspec
