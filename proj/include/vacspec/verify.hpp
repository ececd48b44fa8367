#pragma once

#include <string>
#include <vector>

#include "vacspec/materials.hpp"

namespace vacspec {

struct CheckResult {
  std::string name;
  double measured = 0.0;   ///< worst deviation found
  double threshold = 0.0;
  bool pass = false;
};

struct VerifyOptions {
  bool quick = false;  ///< reduced sample counts
  /// Test hook: flips the sign of alpha inside the spatial-integral check, which
  /// must then fail. Exercised by the mutation test; never set in production.
  bool corrupt_alpha_sign = false;
  unsigned seed = 0x5eed;
};

/// Cross-check suite for one (material, L): Green-function closed forms against the
/// numeric oracle, outside-block cancellation, the spatial-integral identity,
/// residual convergence order, stable-vs-naive scattering forms, mode algebra,
/// dispersion derivatives against finite differences, and the Kramers-Kronig
/// reconstruction. Thresholds are fixed here, not configurable.
std::vector<CheckResult> run_verification(const MaterialModel& m, double L,
                                          const VerifyOptions& opts = {});

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace vacspec
