#pragma once

#include <cstdint>

namespace relax {

inline constexpr double kDefaultTol = 1e-12;
inline constexpr int kDefaultMaxTerms = 10000;

/// A truncated-series value together with its truncation diagnostics.
///
/// `error_estimate` is the magnitude of the first omitted term plus an
/// estimate of the rounding error accumulated by the summation.
struct SeriesEval {
  double value = 0.0;
  int terms_used = 0;
  double error_estimate = 0.0;
  bool converged = false;
};

}  // namespace relax
