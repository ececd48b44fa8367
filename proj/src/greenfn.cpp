#include "vacspec/greenfn.hpp"

#include <cmath>
#include <stdexcept>
#include <tuple>

#include "vacspec/errors.hpp"

namespace vacspec {

namespace {

constexpr Complex kI{0.0, 1.0};

void require_denominator(const Complex& den, const char* where) {
  if (std::abs(den) < 1e-300) throw DegenerateGeometryError(where);
}

}  // namespace

BlockGeometry::BlockGeometry(double L) : length(L) {
  if (!(L > 0.0)) throw std::invalid_argument("BlockGeometry: length must be > 0");
}

Region BlockGeometry::region_of(double x) const {
  if (x < 0.0) return Region::Left;
  if (x <= length) return Region::Inside;
  return Region::Right;
}

Complex zeta(const ResponseSample& s, double L) {
  const double k0 = s.omega;
  // E = exp(2 i n k0 L) decays on the Im n >= 0 branch; the paper-equivalent
  // cotangent form overflows once |n k0 L| reaches a few hundred.
  const Complex E = std::exp(2.0 * kI * s.n * (k0 * L));
  const Complex num = kI * std::exp(-2.0 * kI * (k0 * L)) * (s.eps - s.mu) * (E - 1.0);
  const Complex den = (s.eps + s.mu) * (E - 1.0) - 2.0 * s.n * (E + 1.0);
  require_denominator(den, "zeta: scattering denominator vanished");
  return num / den;
}

std::pair<Complex, Complex> alpha_beta(const ResponseSample& s, double L) {
  const double k0 = s.omega;
  const Complex E = std::exp(2.0 * kI * s.n * (k0 * L));
  const Complex diff = s.n - s.mu;
  const Complex sum = s.n + s.mu;
  const Complex den_a = sum * sum - diff * diff * E;
  const Complex den_b = 2.0 * s.n + s.eps + s.mu + (2.0 * s.n - s.eps - s.mu) * E;
  require_denominator(den_a, "alpha: denominator vanished");
  require_denominator(den_b, "beta: denominator vanished");
  return {diff * diff * E / den_a, (s.eps - s.mu) / den_b};
}

ScatterCoefficients scatter_coefficients(const ResponseSample& s, double L) {
  ScatterCoefficients c;
  c.zeta = zeta(s, L);
  c.abs_zeta = std::abs(c.zeta);
  c.phi_zeta = std::arg(c.zeta);
  std::tie(c.alpha, c.beta) = alpha_beta(s, L);
  return c;
}

Complex green_right(const ResponseSample& s, double L, double x, double x_prime) {
  if (!(x > L) || !(x_prime > L))
    throw RegionError("green_right: both points must lie at x > L");
  const double k0 = s.omega;
  return -kI / (2.0 * k0) * std::exp(kI * (k0 * std::abs(x - x_prime))) +
         zeta(s, L) / (2.0 * k0) * std::exp(kI * (k0 * (x + x_prime)));
}

Complex green_inside(const ResponseSample& s, double L, double x, double x_prime) {
  if (!(x >= 0.0 && x <= L && x_prime >= 0.0 && x_prime <= L))
    throw RegionError("green_inside: both points must lie in [0, L]");
  const double k0 = s.omega;
  const Complex ink = kI * s.n * k0;
  const Complex E = std::exp(2.0 * ink * L);
  const Complex diff = s.n - s.mu;
  const Complex sum = s.n + s.mu;
  const Complex den_a = sum * sum - diff * diff * E;
  const Complex den_b = 2.0 * s.n + s.eps + s.mu + (2.0 * s.n - s.eps - s.mu) * E;
  require_denominator(den_a, "green_inside: alpha denominator vanished");
  require_denominator(den_b, "green_inside: beta denominator vanished");

  // The alpha and beta terms are written with their exponentials folded in, so that
  // every exponent has a nonnegative decay length: 2L +- (x - x'), x + x', and
  // 2L - x - x' all lie in [0, 3L].
  const Complex direct = std::exp(ink * std::abs(x - x_prime));
  const Complex alpha_part = diff * diff *
                             (std::exp(ink * (2.0 * L + (x - x_prime))) +
                              std::exp(ink * (2.0 * L - (x - x_prime)))) /
                             den_a;
  const Complex beta_part = (s.eps - s.mu) *
                            (std::exp(ink * (x + x_prime)) +
                             std::exp(ink * (2.0 * L - x - x_prime))) /
                            den_b;
  return -kI * s.mu / (2.0 * s.n * k0) * (direct + alpha_part + beta_part);
}

Complex green_left(const ResponseSample& s, double L, double x, double x_prime) {
  if (!(x < 0.0) || !(x_prime < 0.0))
    throw RegionError("green_left: both points must lie at x < 0");
  // Geometry is symmetric under x -> L - x.
  return green_right(s, L, L - x, L - x_prime);
}

// ---------------------------------------------------------------------------
// Numeric oracle.
//
// Two outgoing solutions of (d/dx (1/mu) d/dx + k0^2 eps) psi = 0 are marched
// across the interfaces: psi_left ~ e^{-i k0 x} toward -infinity and psi_right ~
// e^{+i k0 x} toward +infinity. Within region r a branch is stored as
//
//   psi(x) = e^{scale_log} (A e^{i n k0 (x - anchor)} + B e^{-i n k0 (x - anchor)})
//
// with the anchor at the interface through which the branch entered the region, so
// A and B stay O(1) and all growth lives in scale_log. Interfaces are crossed on
// the (psi, (1/mu) psi') state vector, which is continuous, so the interface
// condition is the identity and only the bulk phases carry physics.
// ---------------------------------------------------------------------------

namespace {

struct ScaledValue {
  Complex value;       // O(1) combination
  Complex log_factor;  // psi = value * exp(log_factor)
};

}  // namespace

int NumericGreenSolver::region_index(double x) const {
  if (x < 0.0) return 0;
  if (x <= length_) return 1;
  return 2;
}

NumericGreenSolver::NumericGreenSolver(const MaterialModel& m, double L, double omega) {
  if (!(L > 0.0)) throw std::invalid_argument("NumericGreenSolver: L must be > 0");
  if (!(omega > 0.0))
    throw std::domain_error("NumericGreenSolver: omega must be > 0");
  k0_ = omega;
  length_ = L;
  n_ = {Complex{1.0, 0.0}, refractive_index(permittivity(m, omega), permeability(m, omega)),
        Complex{1.0, 0.0}};
  mu_ = {Complex{1.0, 0.0}, permeability(m, omega), Complex{1.0, 0.0}};

  const double interfaces[2] = {0.0, L};

  // Scaled (psi, (1/mu) psi') of a branch-region record at position x, growth
  // factored into the returned log.
  const auto state_at = [&](const Branch& br, int r, double x) {
    const Complex ink = kI * n_[r] * k0_;
    const Complex impedance = ink / mu_[r];
    const double delta = x - br.anchor[r];
    const Complex A = br.coeff_plus[r];
    const Complex B = br.coeff_minus[r];
    Complex psi, phi, logf;
    if (delta >= 0.0) {
      const Complex grow = std::exp(2.0 * ink * delta);  // |grow| <= 1
      psi = A * grow + B;
      phi = impedance * (A * grow - B);
      logf = br.scale_log[r] - ink * delta;
    } else {
      const Complex grow = std::exp(-2.0 * ink * delta);
      psi = A + B * grow;
      phi = impedance * (A - B * grow);
      logf = br.scale_log[r] + ink * delta;
    }
    return std::array<Complex, 3>{psi, phi, logf};
  };

  // Convert a scaled state at an interface into the adjacent region's
  // coefficients, renormalizing so max(|A|, |B|) = 1.
  const auto enter_region = [&](Branch& br, int r, double interface_x,
                                const std::array<Complex, 3>& state) {
    const Complex ink = kI * n_[r] * k0_;
    Complex A = 0.5 * (state[0] + mu_[r] * state[1] / ink);
    Complex B = 0.5 * (state[0] - mu_[r] * state[1] / ink);
    Complex logf = state[2];
    const double s = std::max(std::abs(A), std::abs(B));
    if (s > 0.0) {
      A /= s;
      B /= s;
      logf += std::log(s);
    }
    br.coeff_plus[r] = A;
    br.coeff_minus[r] = B;
    br.scale_log[r] = logf;
    br.anchor[r] = interface_x;
  };

  // psi_left: pure e^{-i k0 x} in region 0, marched rightward.
  left_.coeff_plus[0] = 0.0;
  left_.coeff_minus[0] = 1.0;
  left_.scale_log[0] = 0.0;
  left_.anchor[0] = 0.0;
  for (int r = 0; r < 2; ++r)
    enter_region(left_, r + 1, interfaces[r], state_at(left_, r, interfaces[r]));

  // psi_right: pure e^{+i k0 (x - L)} in region 2, marched leftward. The overall
  // e^{-i k0 L} normalization drops out of g.
  right_.coeff_plus[2] = 1.0;
  right_.coeff_minus[2] = 0.0;
  right_.scale_log[2] = 0.0;
  right_.anchor[2] = L;
  for (int r = 2; r > 0; --r)
    enter_region(right_, r - 1, interfaces[r - 1],
                 state_at(right_, r, interfaces[r - 1]));

  // Wronskian Wr = (1/mu)(psi_L psi_R' - psi_L' psi_R) per region, in log form.
  // With anchors a_L, a_R it reduces to
  //   e^{lL + lR} (2 i n k0 / mu) (B_L A_R e^{-w} - A_L B_R e^{+w}),  w = i n k0 (a_R - a_L),
  // and factoring e^{-w} keeps the bracket bounded (|e^{2w}| <= 1 here).
  for (int r = 0; r < 3; ++r) {
    const Complex ink = kI * n_[r] * k0_;
    const Complex w = ink * (right_.anchor[r] - left_.anchor[r]);
    const Complex bracket = left_.coeff_minus[r] * right_.coeff_plus[r] -
                            left_.coeff_plus[r] * right_.coeff_minus[r] * std::exp(2.0 * w);
    if (std::abs(bracket) < 1e-250)
      throw DegenerateGeometryError("NumericGreenSolver: resonance degeneracy, Wronskian ~ 0");
    wronskian_log_[r] = left_.scale_log[r] + right_.scale_log[r] - w +
                        std::log(2.0 * ink / mu_[r] * bracket);
  }
}

Complex NumericGreenSolver::evaluate(double x, double x_prime) const {
  const double lo = std::min(x, x_prime);
  const double hi = std::max(x, x_prime);
  const int r_lo = region_index(lo);
  const int r_hi = region_index(hi);

  const auto scaled_psi = [&](const Branch& br, int r, double pos) {
    const Complex ink = kI * n_[r] * k0_;
    const double delta = pos - br.anchor[r];
    ScaledValue sv;
    if (delta >= 0.0) {
      sv.value = br.coeff_plus[r] * std::exp(2.0 * ink * delta) + br.coeff_minus[r];
      sv.log_factor = br.scale_log[r] - ink * delta;
    } else {
      sv.value = br.coeff_plus[r] + br.coeff_minus[r] * std::exp(-2.0 * ink * delta);
      sv.log_factor = br.scale_log[r] + ink * delta;
    }
    return sv;
  };

  const ScaledValue pl = scaled_psi(left_, r_lo, lo);
  const ScaledValue pr = scaled_psi(right_, r_hi, hi);
  const Complex exponent = pl.log_factor + pr.log_factor - wronskian_log_[r_hi];
  if (exponent.real() > 700.0)
    throw DegenerateGeometryError("NumericGreenSolver: scale ledger overflow");
  return pl.value * pr.value * std::exp(exponent);
}

double NumericGreenSolver::wronskian_spread() const {
  double worst = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      const Complex ratio = std::exp(wronskian_log_[i] - wronskian_log_[j]);
      worst = std::max(worst, std::abs(ratio - 1.0));
    }
  return worst;
}

Complex green_numeric(const MaterialModel& m, double L, double omega, double x,
                      double x_prime) {
  return NumericGreenSolver(m, L, omega).evaluate(x, x_prime);
}

double residual_check(std::span<const double> x_grid, std::span<const Complex> g_values,
                      const MaterialModel& m, double L, double omega,
                      double x_prime) {
  if (x_grid.size() != g_values.size())
    throw std::invalid_argument("residual_check: grid/value size mismatch");
  if (x_grid.size() < 3)
    throw std::invalid_argument("residual_check: need at least 3 grid points");
  const double h = x_grid[1] - x_grid[0];
  if (!(h > 0.0)) throw std::invalid_argument("residual_check: grid must increase");
  for (std::size_t i = 1; i + 1 < x_grid.size(); ++i)
    if (std::abs((x_grid[i + 1] - x_grid[i]) - h) > 1e-9 * h)
      throw std::invalid_argument("residual_check: grid must be uniform");

  const double clearance = 2.0 * h * (1.0 - 1e-9);
  for (double xi : x_grid)
    if (std::abs(xi - x_prime) < clearance || std::abs(xi) < clearance ||
        std::abs(xi - L) < clearance)
      throw std::invalid_argument(
          "residual_check: grid must stay two steps clear of x' and the interfaces");

  const BlockGeometry geom(L);
  const double k0 = omega;
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < x_grid.size(); ++i) {
    const bool inside = geom.region_of(x_grid[i]) == Region::Inside;
    const Complex eps = inside ? permittivity(m, omega) : Complex{1.0, 0.0};
    const Complex mu = inside ? permeability(m, omega) : Complex{1.0, 0.0};
    const Complex second =
        (g_values[i - 1] - 2.0 * g_values[i] + g_values[i + 1]) / (h * h);
    worst = std::max(worst, std::abs(second / mu + k0 * k0 * eps * g_values[i]));
  }
  return worst;
}

}  // namespace vacspec
