#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "vacspec/errors.hpp"
#include "vacspec/greenfn.hpp"

using namespace vacspec;

namespace {

constexpr Complex kI{0.0, 1.0};

double rel(Complex a, Complex b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-280});
}

// Paper-style forms, valid only while the growing exponential is representable.
Complex zeta_cotangent(const ResponseSample& s, double L) {
  const Complex z = s.n * s.omega * L;
  const Complex cot = std::cos(z) / std::sin(z);
  return kI * std::exp(-2.0 * kI * (s.omega * L)) * (s.eps - s.mu) /
         (2.0 * kI * s.n * cot + s.eps + s.mu);
}

Complex alpha_growing(const ResponseSample& s, double L) {
  const Complex ratio = (s.n + s.mu) / (s.n - s.mu);
  return 1.0 / (ratio * ratio * std::exp(-2.0 * kI * s.n * (s.omega * L)) - 1.0);
}

MaterialModel impedance_matched() {
  MaterialModel m = MaterialModel::lorentz_dielectric();
  m.mu = m.eps;  // eps == mu at every frequency
  return m;
}

}  // namespace

TEST_CASE("block geometry") {
  const BlockGeometry g(5.068);
  CHECK(g.region_of(-0.1) == Region::Left);
  CHECK(g.region_of(0.0) == Region::Inside);
  CHECK(g.region_of(5.068) == Region::Inside);
  CHECK(g.region_of(5.1) == Region::Right);
  CHECK_THROWS_AS(BlockGeometry(0.0), std::invalid_argument);
}

TEST_CASE("zeta vanishes for impedance match and for L -> 0") {
  const ResponseSample s = response_sample(impedance_matched(), 2.0);
  CHECK(zeta(s, 5.068) == Complex{0.0, 0.0});

  const ResponseSample g = response_sample(MaterialModel::drude_gold(), 2.0);
  CHECK(std::abs(zeta(g, 1e-12)) < 1e-9);
}

TEST_CASE("zeta agrees with the cotangent form at moderate thickness") {
  const ResponseSample s = response_sample(MaterialModel::drude_gold(), 3.0);
  CHECK(rel(zeta(s, 5.068), zeta_cotangent(s, 5.068)) < 1e-10);
}

TEST_CASE("zeta and alpha survive thick blocks where the naive forms overflow") {
  // Dielectric near resonance, L = 10 um: |2 n k0 L| ~ 1e3.
  const ResponseSample s = response_sample(MaterialModel::lorentz_dielectric(), 6.0);
  const Complex z = zeta(s, 50.68);
  CHECK(std::isfinite(z.real()));
  CHECK(std::abs(z) < 1.0);
  const auto [a, b] = alpha_beta(s, 50.68);
  CHECK(std::abs(a) < 1.0);
  CHECK(std::isfinite(b.real()));
}

TEST_CASE("stable and naive forms agree where both are representable") {
  std::mt19937 rng(4242);
  std::uniform_real_distribution<double> omega(0.5, 20.0), len(0.1, 10.0);
  for (const MaterialModel& m :
       {MaterialModel::drude_gold(), MaterialModel::lorentz_dielectric()}) {
    for (int i = 0; i < 300; ++i) {
      const double w = omega(rng);
      const double L = len(rng);
      const ResponseSample s = response_sample(m, w);
      if (std::abs((s.n * w * L).imag()) > 300.0) continue;
      CHECK(rel(zeta(s, L), zeta_cotangent(s, L)) < 1e-10);
      CHECK(rel(alpha_beta(s, L).first, alpha_growing(s, L)) < 1e-10);
    }
  }
}

TEST_CASE("alpha and beta limits") {
  const ResponseSample s = response_sample(impedance_matched(), 4.0);
  const auto [a0, b0] = alpha_beta(s, 2.0);
  CHECK(a0 == Complex{0.0, 0.0});
  CHECK(b0 == Complex{0.0, 0.0});

  // L -> infinity with Im n > 0: E -> 0.
  const ResponseSample g = response_sample(MaterialModel::drude_gold(), 2.0);
  const auto [a_inf, b_inf] = alpha_beta(g, 1e6);
  CHECK(std::abs(a_inf) == 0.0);
  const Complex b_limit = (g.eps - g.mu) / (2.0 * g.n + g.eps + g.mu);
  CHECK(rel(b_inf, b_limit) < 1e-12);
}

TEST_CASE("scatter coefficients polar decomposition") {
  const ResponseSample s = response_sample(MaterialModel::lorentz_dielectric(), 7.0);
  const ScatterCoefficients c = scatter_coefficients(s, 5.068);
  CHECK(rel(c.zeta, std::polar(c.abs_zeta, c.phi_zeta)) < 1e-14);
  CHECK(c.abs_zeta < 1.0);
}

TEST_CASE("green_right basics") {
  const double L = 5.068;
  const ResponseSample matched = response_sample(impedance_matched(), 2.0);
  // zeta = 0: pure free-space diagonal -i/(2 k0).
  CHECK(rel(green_right(matched, L, 6.0, 6.0), -kI / 4.0) < 1e-14);

  const ResponseSample g = response_sample(MaterialModel::drude_gold(), 2.0);
  CHECK(green_right(g, L, 6.3, 8.9) == green_right(g, L, 8.9, 6.3));
  CHECK_THROWS_AS(green_right(g, L, 2.0, 6.0), RegionError);
}

TEST_CASE("green_inside basics") {
  const double L = 5.068;
  const ResponseSample v = response_sample(MaterialModel::vacuum(), 2.0);
  const double k0 = 2.0;
  const Complex free = -kI / (2.0 * k0) * std::exp(kI * (k0 * 1.5));
  CHECK(rel(green_inside(v, L, 1.0, 2.5), free) < 1e-14);

  const ResponseSample d = response_sample(MaterialModel::lorentz_dielectric(), 6.0);
  CHECK(green_inside(d, L, 1.0, 3.0) == green_inside(d, L, 3.0, 1.0));
  CHECK_THROWS_AS(green_inside(d, L, -1.0, 3.0), RegionError);
}

TEST_CASE("green_left mirrors green_right") {
  const double L = 5.068;
  const ResponseSample g = response_sample(MaterialModel::drude_gold(), 2.0);
  CHECK(green_left(g, L, -1.0, -2.0) == green_right(g, L, L + 1.0, L + 2.0));
  CHECK_THROWS_AS(green_left(g, L, 1.0, -2.0), RegionError);
}

TEST_CASE("numeric Green function reduces to free space") {
  const MaterialModel v = MaterialModel::vacuum();
  const double k0 = 2.0;
  for (auto [x, xp] : {std::pair{-3.0, 7.2}, {1.0, 4.0}, {6.0, 9.5}, {-2.0, -0.5}}) {
    const Complex expected =
        -kI / (2.0 * k0) * std::exp(kI * (k0 * std::abs(x - xp)));
    CHECK(rel(green_numeric(v, 5.068, k0, x, xp), expected) < 1e-12);
  }
}

TEST_CASE("numeric oracle matches the closed forms") {
  std::mt19937 rng(20260810);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (const MaterialModel& m :
       {MaterialModel::drude_gold(), MaterialModel::lorentz_dielectric()}) {
    for (double L : {5.068, 50.68}) {
      for (double omega : {1.0, 5.0, 12.0}) {
        const ResponseSample s = response_sample(m, omega);
        const NumericGreenSolver solver(m, L, omega);
        for (int i = 0; i < 40; ++i) {
          const double xi = L * unit(rng), xpi = L * unit(rng);
          CHECK(rel(green_inside(s, L, xi, xpi), solver.evaluate(xi, xpi)) < 1e-8);
          const double xr = L + 8.0 * unit(rng) + 0.01, xpr = L + 8.0 * unit(rng) + 0.01;
          CHECK(rel(green_right(s, L, xr, xpr), solver.evaluate(xr, xpr)) < 1e-8);
          const double xl = -8.0 * unit(rng) - 0.01, xpl = -8.0 * unit(rng) - 0.01;
          CHECK(rel(green_left(s, L, xl, xpl), solver.evaluate(xl, xpl)) < 1e-8);
        }
      }
    }
  }
}

TEST_CASE("spec examples: oracle agreement at quoted points") {
  const MaterialModel gold = MaterialModel::drude_gold();
  const ResponseSample g2 = response_sample(gold, 2.0);
  CHECK(rel(green_right(g2, 5.068, 6.0, 6.0),
            green_numeric(gold, 5.068, 2.0, 6.0, 6.0)) < 1e-8);

  const MaterialModel diel = MaterialModel::lorentz_dielectric();
  const ResponseSample d6 = response_sample(diel, 6.0);
  CHECK(rel(green_inside(d6, 5.068, 1.0, 3.0),
            green_numeric(diel, 5.068, 6.0, 1.0, 3.0)) < 1e-8);
}

TEST_CASE("numeric Green function reciprocity and Wronskian constancy") {
  const MaterialModel m = MaterialModel::lorentz_dielectric();
  for (double omega : {1.0, 6.0, 12.0}) {
    const NumericGreenSolver solver(m, 50.68, omega);
    CHECK(solver.wronskian_spread() < 1e-10);
    CHECK(rel(solver.evaluate(-1.2, 30.0), solver.evaluate(30.0, -1.2)) == 0.0);
  }
}

TEST_CASE("finite-difference residual scales as h^2") {
  const MaterialModel m = MaterialModel::drude_gold();
  const double L = 5.068, omega = 3.0, xp = 0.9 * L;
  const ResponseSample s = response_sample(m, omega);

  const auto residual = [&](int points) {
    const double lo = 0.2 * L, hi = 0.7 * L;
    const double h = (hi - lo) / (points - 1);
    std::vector<double> xs(points);
    std::vector<Complex> gs(points);
    for (int i = 0; i < points; ++i) {
      xs[i] = lo + i * h;
      gs[i] = green_inside(s, L, xs[i], xp);
    }
    return residual_check(xs, gs, m, L, omega, xp);
  };
  const double ratio = residual(201) / residual(401);
  CHECK(ratio > 3.4);
  CHECK(ratio < 4.6);

  // Free space to the right of the block.
  const MaterialModel v = MaterialModel::vacuum();
  const ResponseSample sv = response_sample(v, 3.0);
  const auto residual_free = [&](int points) {
    const double lo = L + 1.0, hi = L + 3.0, xpf = L + 4.0;
    const double h = (hi - lo) / (points - 1);
    std::vector<double> xs(points);
    std::vector<Complex> gs(points);
    for (int i = 0; i < points; ++i) {
      xs[i] = lo + i * h;
      gs[i] = green_right(sv, L, xs[i], xpf);
    }
    return residual_check(xs, gs, v, L, omega, xpf);
  };
  const double ratio_free = residual_free(201) / residual_free(401);
  CHECK(ratio_free > 3.4);
  CHECK(ratio_free < 4.6);
}

TEST_CASE("residual_check rejects grids near the source or interfaces") {
  const MaterialModel m = MaterialModel::drude_gold();
  const double L = 5.068, omega = 3.0;
  const ResponseSample s = response_sample(m, omega);
  std::vector<double> xs;
  std::vector<Complex> gs;
  for (int i = 0; i < 64; ++i) {
    xs.push_back(0.02 * L + i * (0.96 * L) / 63.0);  // runs into x' below
    gs.push_back(green_inside(s, L, xs.back(), 0.5 * L));
  }
  CHECK_THROWS_AS(residual_check(xs, gs, m, L, omega, 0.5 * L), std::invalid_argument);
}

TEST_CASE("|zeta| < 1 over the physical parameter grid") {
  for (const MaterialModel& m :
       {MaterialModel::drude_gold(), MaterialModel::lorentz_dielectric()}) {
    double worst = 0.0;
    for (int i = 0; i < 40; ++i) {
      const double omega = 1e-3 * std::pow(1e6, i / 39.0);
      const ResponseSample s = response_sample(m, omega);
      for (int j = 0; j < 25; ++j) {
        const double L = 1e-2 * std::pow(1e5, j / 24.0);
        worst = std::max(worst, std::abs(zeta(s, L)));
      }
    }
    CHECK(worst < 1.0);
  }
}
