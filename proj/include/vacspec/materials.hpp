#pragma once

#include <complex>
#include <optional>
#include <span>

namespace vacspec {

using Complex = std::complex<double>;

/// Single-oscillator response 1 - omega_p^2 / (omega^2 - omega0^2 + i gamma omega).
/// All parameters in eV. omega0 = 0 gives the Drude (metal) case.
struct LorentzOscillator {
  double omega0 = 0.0;
  double omega_p = 0.0;
  double gamma = 0.0;
};

/// Dispersive, absorptive material of the block. The permittivity is a Lorentz
/// oscillator; the permeability defaults to the constant 1 and may optionally be a
/// second oscillator. gamma > 0 is required throughout: absorption makes the
/// in-block exponentials decay, which every closed form here relies on.
struct MaterialModel {
  LorentzOscillator eps;
  std::optional<LorentzOscillator> mu;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;

  static MaterialModel drude_gold();         ///< omega0=0, omega_p=8.45, gamma=0.047
  static MaterialModel lorentz_dielectric(); ///< omega0=5, omega_p=8, gamma=0.5
  static MaterialModel vacuum();             ///< omega_p=0: eps = mu = 1 exactly
};

/// Complex response and the dispersion derivatives entering the energy formulas,
/// all at a single frequency. Natural units: omega in eV, derivatives in eV^-1
/// where dimensional.
struct ResponseSample {
  double omega = 0.0;
  Complex eps;
  Complex mu;
  Complex n;            ///< sqrt(eps*mu), branch Im n >= 0
  Complex d_omega_n;    ///< d(omega n)/d omega
  Complex d_n_over_mu;  ///< d(n/mu)/d omega
  Complex d_omega_eps;  ///< d(omega eps)/d omega
  Complex d_omega_mu;   ///< d(omega mu)/d omega
};

/// eps(omega) for omega > 0. Im eps > 0 for any gamma > 0 model with omega_p > 0.
Complex permittivity(const MaterialModel& m, double omega);

/// mu(omega); exactly 1 when no magnetic oscillator is configured.
Complex permeability(const MaterialModel& m, double omega);

/// Square root of eps*mu on the passive branch: Im n >= 0, and Re n >= 0 when the
/// imaginary part vanishes. Throws SingularResponseError if eps*mu = 0.
Complex refractive_index(Complex eps, Complex mu);

/// Evaluate the full response at omega. Derivatives come from the closed-form chain
/// rule on the oscillator model, not finite differences: the Casimir spectrum is a
/// difference of near-cancelling terms and FD noise would pollute it.
ResponseSample response_sample(const MaterialModel& m, double omega);

/// Reconstruct Re eps - 1 on `grid` from the principal-value Hilbert transform of
/// Im eps over [0, cutoff] and return the maximum pointwise relative deviation from
/// the analytic value. The grid must be positive, increasing, below cutoff, and must
/// avoid zeros of Re eps - 1.
double kramers_kronig_residual(const MaterialModel& m, std::span<const double> grid,
                               double cutoff, double quad_tol = 1e-10);

}  // namespace vacspec
