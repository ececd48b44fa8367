#include <doctest.h>

#include <cmath>
#include <random>

#include "vacspec/errors.hpp"
#include "vacspec/greenfn.hpp"
#include "vacspec/modealg.hpp"

using namespace vacspec;

TEST_CASE("Gram matrix structure") {
  const CommutatorGram id = commutator_gram({0.0, 0.0});
  CHECK(id.G.isIdentity(0.0));

  std::mt19937 rng(55);
  std::uniform_real_distribution<double> mag(0.0, 0.999), ph(-M_PI, M_PI);
  for (int i = 0; i < 200; ++i) {
    const Complex z = std::polar(mag(rng), ph(rng));
    const CommutatorGram g = commutator_gram(z);
    CHECK((g.G - g.G.adjoint()).cwiseAbs().maxCoeff() == 0.0);

    // Eigenvalues are 1 +- |zeta|; cross-check against a direct solve.
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> solver(g.G);
    const double r = std::abs(z);
    CHECK(solver.eigenvalues()(0) == doctest::Approx(1.0 - r).epsilon(1e-13));
    CHECK(solver.eigenvalues()(1) == doctest::Approx(1.0 + r).epsilon(1e-13));
    CHECK(solver.eigenvalues().minCoeff() > 0.0);
  }

  const CommutatorGram half = commutator_gram({0.5, 0.0});
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> s(half.G);
  CHECK(s.eigenvalues()(0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(s.eigenvalues()(1) == doctest::Approx(1.5).epsilon(1e-15));
}

TEST_CASE("transform normalizations") {
  const ModeTransform id = build_transform({0.0, 0.0});
  CHECK(id.delta_plus == 1.0);
  CHECK(id.delta_minus == 1.0);
  CHECK((id.matrix - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() < 1e-15);

  const ModeTransform t = build_transform({0.5, 0.0});
  CHECK(t.delta_plus == doctest::Approx(0.816496580927726).epsilon(1e-15));
  CHECK(t.delta_minus == doctest::Approx(1.4142135623730951).epsilon(1e-15));

  const ModeTransform edge = build_transform({0.999, 0.0});
  CHECK(std::isfinite(edge.matrix.cwiseAbs().maxCoeff()));

  CHECK_THROWS_AS(build_transform({1.0, 0.0}), AlgebraBreakdownError);
  CHECK_THROWS_AS(build_transform({0.8, 0.8}), AlgebraBreakdownError);
}

TEST_CASE("decoupling identity over random zeta") {
  std::mt19937 rng(808);
  std::uniform_real_distribution<double> mag(0.0, 1.0), ph(-M_PI, M_PI);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const Complex z = std::polar(0.999 * mag(rng), ph(rng));
    worst = std::max(worst, verify_independence(build_transform(z), commutator_gram(z)));
  }
  CHECK(worst < 1e-12);

  CHECK(verify_independence(build_transform({0.0, 0.0}), commutator_gram({0.0, 0.0})) ==
        0.0);
}

TEST_CASE("decoupling along physical zeta sweeps") {
  for (const MaterialModel& m :
       {MaterialModel::drude_gold(), MaterialModel::lorentz_dielectric()}) {
    for (double L : {5.068, 50.68}) {
      double worst = 0.0;
      for (int i = 0; i < 300; ++i) {
        const double omega = 0.5 + (20.0 - 0.5) * i / 299.0;
        const Complex z = zeta(response_sample(m, omega), L);
        REQUIRE(std::abs(z) < 1.0);
        worst = std::max(worst,
                         verify_independence(build_transform(z), commutator_gram(z)));
      }
      CHECK(worst < 1e-12);
    }
  }
}
