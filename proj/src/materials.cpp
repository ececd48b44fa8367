#include "vacspec/materials.hpp"

#include <cmath>
#include <stdexcept>

#include "vacspec/errors.hpp"
#include "vacspec/quadrature.hpp"

namespace vacspec {

namespace {

constexpr Complex kI{0.0, 1.0};

Complex oscillator_response(const LorentzOscillator& o, double omega) {
  if (o.omega_p == 0.0) return {1.0, 0.0};
  const Complex denom = omega * omega - o.omega0 * o.omega0 + kI * (o.gamma * omega);
  return 1.0 - (o.omega_p * o.omega_p) / denom;
}

// d/d omega of oscillator_response, chain rule on the single pole.
Complex oscillator_derivative(const LorentzOscillator& o, double omega) {
  if (o.omega_p == 0.0) return {0.0, 0.0};
  const Complex denom = omega * omega - o.omega0 * o.omega0 + kI * (o.gamma * omega);
  return (o.omega_p * o.omega_p) * (2.0 * omega + kI * o.gamma) / (denom * denom);
}

void validate_oscillator(const LorentzOscillator& o, const char* label) {
  if (!(o.gamma > 0.0))
    throw std::invalid_argument(std::string(label) + ".gamma must be > 0");
  if (!(o.omega_p >= 0.0))
    throw std::invalid_argument(std::string(label) + ".omega_p must be >= 0");
  if (!(o.omega0 >= 0.0))
    throw std::invalid_argument(std::string(label) + ".omega0 must be >= 0");
}

}  // namespace

void MaterialModel::validate() const {
  validate_oscillator(eps, "eps");
  if (mu) validate_oscillator(*mu, "mu");
}

MaterialModel MaterialModel::drude_gold() { return {{0.0, 8.45, 0.047}, std::nullopt}; }

MaterialModel MaterialModel::lorentz_dielectric() {
  return {{5.0, 8.0, 0.5}, std::nullopt};
}

MaterialModel MaterialModel::vacuum() { return {{0.0, 0.0, 1.0}, std::nullopt}; }

Complex permittivity(const MaterialModel& m, double omega) {
  if (!(omega > 0.0)) throw std::domain_error("permittivity: omega must be > 0");
  return oscillator_response(m.eps, omega);
}

Complex permeability(const MaterialModel& m, double omega) {
  if (!(omega > 0.0)) throw std::domain_error("permeability: omega must be > 0");
  return m.mu ? oscillator_response(*m.mu, omega) : Complex{1.0, 0.0};
}

Complex refractive_index(Complex eps, Complex mu) {
  const Complex em = eps * mu;
  if (em == Complex{0.0, 0.0})
    throw SingularResponseError("refractive_index: eps*mu vanishes");
  Complex n = std::sqrt(em);
  if (n.imag() < 0.0) n = -n;                      // passive branch: decay into the absorber
  if (n.imag() == 0.0 && n.real() < 0.0) n = -n;   // lossless tie-break
  return n;
}

ResponseSample response_sample(const MaterialModel& m, double omega) {
  if (!(omega > 0.0)) throw std::domain_error("response_sample: omega must be > 0");
  ResponseSample s;
  s.omega = omega;
  s.eps = oscillator_response(m.eps, omega);
  s.mu = m.mu ? oscillator_response(*m.mu, omega) : Complex{1.0, 0.0};
  s.n = refractive_index(s.eps, s.mu);

  const Complex d_eps = oscillator_derivative(m.eps, omega);
  const Complex d_mu = m.mu ? oscillator_derivative(*m.mu, omega) : Complex{0.0, 0.0};
  const Complex d_n = (s.mu * d_eps + s.eps * d_mu) / (2.0 * s.n);

  s.d_omega_eps = s.eps + omega * d_eps;
  s.d_omega_mu = s.mu + omega * d_mu;
  s.d_omega_n = s.n + omega * d_n;
  s.d_n_over_mu = d_n / s.mu - s.n * d_mu / (s.mu * s.mu);
  return s;
}

double kramers_kronig_residual(const MaterialModel& m, std::span<const double> grid,
                               double cutoff, double quad_tol) {
  if (grid.empty()) return 0.0;
  double prev = 0.0;
  for (double w : grid) {
    if (!(w > 0.0) || w <= prev)
      throw std::invalid_argument("kramers_kronig_residual: grid must be positive and increasing");
    prev = w;
  }
  if (!(cutoff > grid.back()))
    throw std::invalid_argument("kramers_kronig_residual: cutoff must exceed the grid");

  // Dispersion relation on the positive half-axis (Im eps is odd in omega):
  //   Re eps(w) - 1 = (2/pi) PV int_0^inf w' Im eps(w') / (w'^2 - w^2) dw'.
  // The combination w' Im eps stays finite at w' -> 0 even for the Drude pole.
  double worst = 0.0;
  for (double w : grid) {
    const auto integrand = [&](double wp) {
      return wp * oscillator_response(m.eps, wp).imag() / (wp * wp - w * w);
    };
    const double recon =
        (2.0 / M_PI) * principal_value(integrand, w, 0.0, cutoff, quad_tol).value;
    const double exact = oscillator_response(m.eps, w).real() - 1.0;
    const double dev = std::abs(recon - exact);
    if (dev == 0.0) continue;  // covers the omega_p = 0 model exactly
    if (std::abs(exact) < 1e-300)
      throw std::domain_error(
          "kramers_kronig_residual: grid point where Re eps = 1; relative residual undefined");
    worst = std::max(worst, dev / std::abs(exact));
  }
  return worst;
}

}  // namespace vacspec
