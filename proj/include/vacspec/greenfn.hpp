#pragma once

#include <array>
#include <span>
#include <utility>

#include "vacspec/materials.hpp"

namespace vacspec {

enum class Region { Left, Inside, Right };

/// Block occupying [0, L], vacuum elsewhere. Lengths in eV^-1.
struct BlockGeometry {
  double length = 0.0;

  explicit BlockGeometry(double L);
  Region region_of(double x) const;
};

/// Scattering coefficients of the block at fixed (omega, L).
struct ScatterCoefficients {
  Complex zeta;      ///< exterior left/right mode coupling
  double abs_zeta = 0.0;
  double phi_zeta = 0.0;  ///< zeta = abs_zeta * exp(i phi_zeta)
  Complex alpha;
  Complex beta;
};

/// Exterior coupling coefficient zeta(omega, L). Written in terms of
/// E = exp(+2 i n k0 L) only, which decays on the Im n >= 0 branch, so thick blocks
/// (|n k0 L| of order 10^3) evaluate without overflow.
Complex zeta(const ResponseSample& s, double L);

/// Interior Green-function coefficients (alpha, beta), same decaying-exponential
/// convention as zeta.
std::pair<Complex, Complex> alpha_beta(const ResponseSample& s, double L);

ScatterCoefficients scatter_coefficients(const ResponseSample& s, double L);

/// Closed-form Green function, both points right of the block (x, x' > L).
Complex green_right(const ResponseSample& s, double L, double x, double x_prime);

/// Closed-form Green function, both points inside the block (0 <= x, x' <= L).
/// Exponents are folded so every term decays; see zeta.
Complex green_inside(const ResponseSample& s, double L, double x, double x_prime);

/// Both points left of the block (x, x' < 0): the mirror image x -> L - x of
/// green_right, since the geometry is symmetric about L/2.
Complex green_left(const ResponseSample& s, double L, double x, double x_prime);

/// Independent numerical Green function for one (omega, L): outgoing solutions are
/// propagated across the interfaces on the (psi, (1/mu) psi') state vector and
/// combined through the Wronskian. Exponential growth across the block is tracked
/// in a separate log-scale ledger, so arbitrarily thick absorbing blocks stay
/// finite. Serves as the oracle for the closed forms and handles mixed-region
/// argument pairs the closed forms do not cover.
class NumericGreenSolver {
 public:
  NumericGreenSolver(const MaterialModel& m, double L, double omega);

  Complex evaluate(double x, double x_prime) const;

  /// Max pairwise relative deviation of the Wronskian across the three regions;
  /// analytically zero for any solution of the wave equation.
  double wronskian_spread() const;

 private:
  struct Branch {
    // psi(x) = exp(scale_log[r]) * (coeff_plus[r] e^{i n_r k0 (x-anchor_r)}
    //                              + coeff_minus[r] e^{-i n_r k0 (x-anchor_r)})
    std::array<Complex, 3> coeff_plus{};
    std::array<Complex, 3> coeff_minus{};
    std::array<Complex, 3> scale_log{};
    std::array<double, 3> anchor{};
  };

  int region_index(double x) const;

  double k0_ = 0.0;
  double length_ = 0.0;
  std::array<Complex, 3> n_{};
  std::array<Complex, 3> mu_{};
  Branch left_;   // ~ e^{-i k0 x} as x -> -infinity
  Branch right_;  // ~ e^{+i k0 x} as x -> +infinity
  std::array<Complex, 3> wronskian_log_{};  // log of Wr per region
};

/// One-shot convenience wrapper around NumericGreenSolver.
Complex green_numeric(const MaterialModel& m, double L, double omega, double x,
                      double x_prime);

/// Apply the second-order finite-difference form of d/dx (1/mu) d/dx + k0^2 eps to
/// Green-function samples on a uniform grid and return the max absolute residual.
/// The grid must keep at least two grid steps clear of x_prime and of the
/// interfaces at 0 and L; the residual then scales as O(h^2).
double residual_check(std::span<const double> x_grid, std::span<const Complex> g_values,
                      const MaterialModel& m, double L, double omega, double x_prime);

}  // namespace vacspec
