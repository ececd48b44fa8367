#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vacspec/materials.hpp"

namespace vacspec {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int panels = 0;
  double tail_estimate = 0.0;          ///< bound on omitted domain, when truncated
  double max_panel_width = 0.0;        ///< widest accepted panel (diagnostic)
};

/// Panel budget exhausted before the tolerance was met; carries the best estimate.
struct NonConvergenceError : std::runtime_error {
  QuadratureResult best;

  NonConvergenceError(const std::string& what, QuadratureResult best_so_far)
      : std::runtime_error(what), best(best_so_far) {}
};

struct AdaptiveOptions {
  double abs_tol = 0.0;      ///< absolute tolerance floor (0: relative only)
  int max_panels = 200000;
  /// Upper bound on an accepted panel's width as a function of its midpoint;
  /// panels wider than this are split regardless of their error estimate.
  std::function<double(double)> panel_width_cap;
  /// Extra initial panel edges between a and b (need not be sorted).
  std::vector<double> seed_points;
};

/// Adaptive Gauss-Kronrod (G7, K15) over [a, b]: the worst panel is bisected until
/// the summed error estimate meets max(rel_tol * |value|, abs_tol) or the budget
/// runs out. Panel sums use compensated accumulation; serial and deterministic.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a,
                                    double b, double rel_tol,
                                    const AdaptiveOptions& opts = {});

/// Integrate over [a, infinity) through the map omega = a + t/(1-t). The integrand
/// must decay faster than 1/omega^2.
QuadratureResult integrate_to_infinity(const std::function<double(double)>& f,
                                       double a, double rel_tol,
                                       const AdaptiveOptions& opts = {});

/// Principal value over (a, b) with a simple pole at x0. The excised window is
/// integrated as the paired sum f(x0+t) + f(x0-t), in which the pole cancels
/// pointwise; the result is cross-checked under halving of the excision radius and
/// a NonConvergenceError is thrown if the two disagree beyond their error bars.
QuadratureResult principal_value(const std::function<double(double)>& f, double x0,
                                 double a, double b, double rel_tol);

enum class SpectrumKind { TotalCasimir };

/// Total Casimir energy: integrate W_C(omega) over frequency. Panels are capped at
/// half the local oscillation period pi / (Re n(omega) L) of exp(2 i n k0 L) and
/// seeded at an eighth of it; the upper limit grows until the fitted |W_C| envelope
/// falls below rel_tol * |value|, with the omega^-2 envelope tail and the omitted
/// [0, 1e-9] sliver folded into tail_estimate.
QuadratureResult integrate_spectrum(const MaterialModel& m, double L,
                                    SpectrumKind kind, double rel_tol);

}  // namespace vacspec
