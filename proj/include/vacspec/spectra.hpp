#pragma once

#include <span>
#include <vector>

#include "vacspec/greenfn.hpp"

namespace vacspec {

/// Per-frequency spectral densities of the vacuum field variances and of the energy
/// per unit length at position x. Natural units (hbar = c = eps0 = mu0 = 1), so the
/// free-space energy density per unit frequency is omega / 2 pi.
struct VarianceDensity {
  double omega = 0.0;
  double x = 0.0;
  double dE2 = 0.0;  ///< spectral density of <E^2>
  double dB2 = 0.0;  ///< spectral density of <B^2>
  double u = 0.0;    ///< spectral energy density per unit length
};

/// Per-frequency energies of the block region. W integrates u over [0, L]; W_bulk
/// is the same length of unbounded medium; W_C = W - W_bulk is the regularized
/// (Casimir) spectral energy; W_free = omega L / 2 pi is the empty-space value.
struct SpectralRecord {
  double omega = 0.0;
  double W = 0.0;
  double W_C = 0.0;
  double W_free = 0.0;
  double W_bulk = 0.0;
};

/// Densities for x > L. The zeta interference terms of dE2 and dB2 are equal and
/// opposite, so u = (dE2 + dB2)/2 = omega / 2 pi independent of x and material.
VarianceDensity variance_density_outside(const ResponseSample& s, double L, double x);

/// Densities for 0 <= x <= L. u weights the complex variance integrands with
/// d(omega eps)/d omega and d(omega mu)/d omega / mu^2 before the imaginary part is
/// taken; integrating this u over the block reproduces spectral_energy().W.
VarianceDensity variance_density_inside(const ResponseSample& s, double L, double x);

/// Same densities from coincidence limits of the closed-form Green function:
/// dE2 ~ -Im[omega^2 g(x,x)], dB2 ~ -Im[lim dx dx' g], with the mixed-derivative
/// limit taken analytically per region. x may be in any region but not on an
/// interface.
VarianceDensity variance_from_green(const MaterialModel& m, double L, double omega,
                                    double x);

/// W, W_bulk, W_C and W_free at one frequency.
SpectralRecord spectral_energy(const ResponseSample& s, double L);

/// spectral_energy over an increasing positive grid; one record per grid point.
std::vector<SpectralRecord> spectrum_scan(const MaterialModel& m, double L,
                                          std::span<const double> omega_grid);

namespace detail {
/// Inside-block densities with explicitly supplied scattering coefficients.
/// Exists so the verification suite can inject a corrupted alpha.
VarianceDensity variance_density_inside_with(const ResponseSample& s, double L,
                                             double x, Complex alpha, Complex beta);
}  // namespace detail

}  // namespace vacspec
