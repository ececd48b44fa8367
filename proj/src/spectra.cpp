#include "vacspec/spectra.hpp"

#include <cmath>
#include <stdexcept>

#include "vacspec/errors.hpp"

namespace vacspec {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kTwoPi = 2.0 * M_PI;

// Complex spectral densities before the imaginary part is taken; the energy
// density weights these with the dispersion factors first, which is the reading
// whose spatial integral reproduces the closed-form W below.
struct ComplexDensities {
  Complex E2;
  Complex B2;
};

ComplexDensities complex_densities_outside(const ResponseSample& s, double L,
                                           double x) {
  const double w = s.omega;
  const Complex refl = zeta(s, L) * std::exp(2.0 * kI * (w * x));
  return {w / kTwoPi * (kI - refl), w / kTwoPi * (kI + refl)};
}

ComplexDensities complex_densities_inside(const ResponseSample& s, double L, double x,
                                          Complex alpha, Complex beta) {
  const double w = s.omega;
  const Complex ink = kI * s.n * w;
  // Both exponents decay: x and L - x are nonnegative inside the block.
  const Complex osc = std::exp(2.0 * ink * x) + std::exp(2.0 * ink * (L - x));
  const Complex common = 1.0 + 2.0 * alpha;
  return {w / kTwoPi * kI * s.mu / s.n * (common + beta * osc),
          w / kTwoPi * kI * s.mu * s.n * (common - beta * osc)};
}

double energy_density(const ResponseSample& s, const ComplexDensities& d) {
  // Natural-unit form of the mean-force energy density: the eps0/2 and c^2/mu^2
  // prefactors collapse to 1/2 and 1/mu^2.
  return 0.5 * (s.d_omega_eps * d.E2 + s.d_omega_mu / (s.mu * s.mu) * d.B2).imag();
}

}  // namespace

VarianceDensity variance_density_outside(const ResponseSample& s, double L, double x) {
  if (!(x > L)) throw RegionError("variance_density_outside: requires x > L");
  const ComplexDensities d = complex_densities_outside(s, L, x);
  VarianceDensity v;
  v.omega = s.omega;
  v.x = x;
  v.dE2 = d.E2.imag();
  v.dB2 = d.B2.imag();
  v.u = 0.5 * (v.dE2 + v.dB2);  // the zeta terms cancel: exactly omega / 2 pi
  return v;
}

VarianceDensity variance_density_inside(const ResponseSample& s, double L, double x) {
  if (!(x >= 0.0 && x <= L))
    throw RegionError("variance_density_inside: requires 0 <= x <= L");
  const auto [alpha, beta] = alpha_beta(s, L);
  return detail::variance_density_inside_with(s, L, x, alpha, beta);
}

namespace detail {

VarianceDensity variance_density_inside_with(const ResponseSample& s, double L,
                                             double x, Complex alpha, Complex beta) {
  const ComplexDensities d = complex_densities_inside(s, L, x, alpha, beta);
  VarianceDensity v;
  v.omega = s.omega;
  v.x = x;
  v.dE2 = d.E2.imag();
  v.dB2 = d.B2.imag();
  v.u = energy_density(s, d);
  return v;
}

}  // namespace detail

VarianceDensity variance_from_green(const MaterialModel& m, double L, double omega,
                                    double x) {
  if (x == 0.0 || x == L)
    throw RegionError("variance_from_green: x lies on an interface");
  const ResponseSample s = response_sample(m, omega);
  const BlockGeometry geom(L);
  const double k0 = omega;

  // Mirror the left region onto the right one; the geometry is symmetric about
  // L/2 and the mixed derivative is even under the reflection.
  const double xe = (geom.region_of(x) == Region::Left) ? L - x : x;

  Complex g_coincident;   // g(x, x)
  Complex g_mixed;        // lim_{x'->x} d_x d_x' g, smooth part
  ComplexDensities d;
  if (geom.region_of(xe) == Region::Right) {
    g_coincident = green_right(s, L, xe, xe);
    // The |x-x'| kernel contributes its smooth part k0^2 e^{i k0 |x-x'|}; the
    // image term picks up (i k0)^2.
    g_mixed = -kI * k0 / 2.0 - k0 / 2.0 * zeta(s, L) * std::exp(2.0 * kI * (k0 * xe));
    d.E2 = -omega * omega / M_PI * g_coincident;
    d.B2 = -1.0 / M_PI * g_mixed;
    VarianceDensity v;
    v.omega = omega;
    v.x = x;
    v.dE2 = d.E2.imag();
    v.dB2 = d.B2.imag();
    v.u = 0.5 * (d.E2 + d.B2).imag();  // vacuum outside: unit dispersion factors
    return v;
  }

  const auto [alpha, beta] = alpha_beta(s, L);
  g_coincident = green_inside(s, L, xe, xe);
  const Complex ink = kI * s.n * k0;
  const Complex osc = std::exp(2.0 * ink * xe) + std::exp(2.0 * ink * (L - xe));
  // Term-by-term d_x d_x' at coincidence: the direct and alpha kernels give
  // +(n k0)^2, the beta kernels -(n k0)^2.
  g_mixed = -kI * s.mu * s.n * k0 / 2.0 * (1.0 + 2.0 * alpha - beta * osc);
  d.E2 = -omega * omega / M_PI * g_coincident;
  d.B2 = -1.0 / M_PI * g_mixed;
  VarianceDensity v;
  v.omega = omega;
  v.x = x;
  v.dE2 = d.E2.imag();
  v.dB2 = d.B2.imag();
  v.u = energy_density(s, d);
  return v;
}

SpectralRecord spectral_energy(const ResponseSample& s, double L) {
  if (!(L > 0.0)) throw std::invalid_argument("spectral_energy: L must be > 0");
  const double w = s.omega;
  const auto [alpha, beta] = alpha_beta(s, L);
  const Complex E = std::exp(2.0 * kI * s.n * (w * L));
  const Complex boundary_term =
      beta * (E - 1.0) * (s.mu / s.n) * s.d_n_over_mu;

  SpectralRecord r;
  r.omega = w;
  r.W_free = w * L / kTwoPi;
  r.W = w / kTwoPi *
        (kI * L * (1.0 + 2.0 * alpha) * s.d_omega_n + boundary_term).imag();
  r.W_bulk = w * L / kTwoPi * (kI * s.d_omega_n).imag();
  r.W_C = w / kTwoPi *
          (2.0 * kI * L * alpha * s.d_omega_n + boundary_term).imag();
  return r;
}

std::vector<SpectralRecord> spectrum_scan(const MaterialModel& m, double L,
                                          std::span<const double> omega_grid) {
  double prev = 0.0;
  for (double w : omega_grid) {
    if (!(w > 0.0) || w <= prev)
      throw std::invalid_argument("spectrum_scan: grid must be positive and increasing");
    prev = w;
  }
  std::vector<SpectralRecord> out;
  out.reserve(omega_grid.size());
  for (double w : omega_grid) out.push_back(spectral_energy(response_sample(m, w), L));
  return out;
}

}  // namespace vacspec
