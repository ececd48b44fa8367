#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "vacspec/errors.hpp"
#include "vacspec/materials.hpp"

using namespace vacspec;

namespace {

double rel(Complex a, Complex b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

}  // namespace

TEST_CASE("permittivity of Drude gold at 1 eV") {
  const MaterialModel m = MaterialModel::drude_gold();
  const Complex eps = permittivity(m, 1.0);
  // Hand evaluation: 1 - 8.45^2 / (1 + 0.047i).
  CHECK(eps.real() == doctest::Approx(-70.245119530956117).epsilon(1e-12));
  CHECK(eps.imag() == doctest::Approx(3.3485206179549372).epsilon(1e-12));
  CHECK(eps.imag() > 0.0);
}

TEST_CASE("permittivity limits") {
  CHECK(permittivity(MaterialModel::vacuum(), 0.37) == Complex{1.0, 0.0});
  const MaterialModel d = MaterialModel::lorentz_dielectric();
  CHECK(std::abs(permittivity(d, 1e7) - 1.0) < 1e-12);
  CHECK_THROWS_AS(permittivity(d, 0.0), std::domain_error);
  CHECK_THROWS_AS(permittivity(d, -2.0), std::domain_error);
}

TEST_CASE("model validation") {
  MaterialModel m = MaterialModel::drude_gold();
  m.eps.gamma = 0.0;
  CHECK_THROWS_AS(m.validate(), std::invalid_argument);
  m = MaterialModel::drude_gold();
  m.eps.omega_p = -1.0;
  CHECK_THROWS_AS(m.validate(), std::invalid_argument);
  m = MaterialModel::drude_gold();
  m.mu = LorentzOscillator{1.0, 2.0, -0.5};
  CHECK_THROWS_AS(m.validate(), std::invalid_argument);
}

TEST_CASE("refractive index branch") {
  CHECK(refractive_index({1.0, 0.0}, {1.0, 0.0}) == Complex{1.0, 0.0});
  CHECK(refractive_index({4.0, 0.0}, {1.0, 0.0}) == Complex{2.0, 0.0});
  CHECK(refractive_index({-1.0, 0.1}, {1.0, 0.0}).imag() > 0.0);
  CHECK_THROWS_AS(refractive_index({0.0, 0.0}, {1.0, 0.0}), SingularResponseError);
}

TEST_CASE("refractive index branch property sweep") {
  std::mt19937 rng(911);
  std::uniform_real_distribution<double> w0(0.0, 10.0), wp(0.0, 12.0),
      gm(1e-3, 2.0), om(1e-2, 50.0);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    MaterialModel m{{w0(rng), wp(rng), gm(rng)}, std::nullopt};
    if (i % 3 == 0) m.mu = LorentzOscillator{w0(rng), wp(rng), gm(rng)};
    const double w = om(rng);
    const Complex eps = permittivity(m, w);
    const Complex mu = permeability(m, w);
    const Complex n = refractive_index(eps, mu);
    CHECK(n.imag() >= 0.0);
    if (m.eps.omega_p > 0.0) CHECK(eps.imag() > 0.0);
    worst = std::max(worst, rel(n * n, eps * mu));
  }
  CHECK(worst < 1e-14);
}

TEST_CASE("response sample trivial reductions") {
  const ResponseSample v = response_sample(MaterialModel::vacuum(), 3.2);
  CHECK(v.d_omega_n == Complex{1.0, 0.0});
  CHECK(v.d_n_over_mu == Complex{0.0, 0.0});
  CHECK(v.d_omega_eps == Complex{1.0, 0.0});
  CHECK(v.d_omega_mu == Complex{1.0, 0.0});

  // mu == 1: the d(n/mu) derivative collapses to dn/d omega.
  const MaterialModel g = MaterialModel::drude_gold();
  const ResponseSample s = response_sample(g, 2.0);
  const Complex dn = (s.d_omega_n - s.n) / s.omega;
  CHECK(rel(s.d_n_over_mu, dn) < 1e-14);
  CHECK(s.d_omega_mu == Complex{1.0, 0.0});
}

TEST_CASE("analytic derivatives match central differences") {
  // 1e-6 relative off resonance, 1e-4 within |omega - omega0| < 10 gamma.
  for (const MaterialModel& m :
       {MaterialModel::drude_gold(), MaterialModel::lorentz_dielectric()}) {
    for (int i = 0; i < 160; ++i) {
      const double w = 0.15 * std::pow(200.0, i / 159.0);
      const double h = 1e-5 * w;
      const ResponseSample s = response_sample(m, w);
      const ResponseSample up = response_sample(m, w + h);
      const ResponseSample dn = response_sample(m, w - h);
      const double tol =
          std::abs(w - m.eps.omega0) < 10.0 * m.eps.gamma ? 1e-4 : 1e-6;
      CHECK(rel(s.d_omega_eps, ((w + h) * up.eps - (w - h) * dn.eps) / (2 * h)) < tol);
      CHECK(rel(s.d_omega_n, ((w + h) * up.n - (w - h) * dn.n) / (2 * h)) < tol);
      CHECK(rel(s.d_n_over_mu, (up.n / up.mu - dn.n / dn.mu) / (2 * h)) < tol);
    }
  }
}

TEST_CASE("magnetic oscillator derivatives") {
  MaterialModel m = MaterialModel::lorentz_dielectric();
  m.mu = LorentzOscillator{1.5, 2.0, 0.3};
  for (double w : {0.7, 2.1, 6.3}) {
    const double h = 1e-5 * w;
    const ResponseSample s = response_sample(m, w);
    const ResponseSample up = response_sample(m, w + h);
    const ResponseSample dn = response_sample(m, w - h);
    CHECK(rel(s.d_omega_mu, ((w + h) * up.mu - (w - h) * dn.mu) / (2 * h)) < 1e-5);
    CHECK(rel(s.d_n_over_mu, (up.n / up.mu - dn.n / dn.mu) / (2 * h)) < 1e-5);
  }
}

TEST_CASE("Kramers-Kronig residual: gold under 1e-3 at cutoff 1e3") {
  std::vector<double> grid;
  for (double w = 0.6; w < 20.0; w += 1.6) grid.push_back(w);
  const double r = kramers_kronig_residual(MaterialModel::drude_gold(), grid, 1e3, 1e-9);
  CHECK(r < 1e-3);
}

TEST_CASE("Kramers-Kronig residual: vacuum model is exactly zero") {
  std::vector<double> grid{0.5, 1.0, 5.0};
  CHECK(kramers_kronig_residual(MaterialModel::vacuum(), grid, 1e3, 1e-9) == 0.0);
}

TEST_CASE("Kramers-Kronig residual decreases with cutoff") {
  // Dielectric grid avoiding the Re eps = 1 crossing at omega0 = 5.
  std::vector<double> grid{1.1, 2.7, 4.1, 6.3, 8.7, 12.1, 16.3, 19.1};
  const MaterialModel d = MaterialModel::lorentz_dielectric();
  const double r50 = kramers_kronig_residual(d, grid, 50.0, 1e-10);
  const double r200 = kramers_kronig_residual(d, grid, 200.0, 1e-10);
  const double r1000 = kramers_kronig_residual(d, grid, 1000.0, 1e-10);
  CHECK(r50 > r200);
  CHECK(r200 > r1000);
  CHECK(r1000 < 1e-3);
}

TEST_CASE("Kramers-Kronig rejects bad grids") {
  const MaterialModel g = MaterialModel::drude_gold();
  std::vector<double> decreasing{2.0, 1.0};
  CHECK_THROWS_AS(kramers_kronig_residual(g, decreasing, 1e3), std::invalid_argument);
  std::vector<double> beyond{0.5, 2000.0};
  CHECK_THROWS_AS(kramers_kronig_residual(g, beyond, 1e3), std::invalid_argument);
}
