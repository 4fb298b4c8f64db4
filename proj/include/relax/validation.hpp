#pragma once

#include <optional>
#include <span>
#include <vector>

#include "relax/curve.hpp"
#include "relax/model.hpp"
#include "relax/report.hpp"

namespace relax {

/// Sign pattern (-1)^n f[t_i, ..., t_{i+n}] >= -eps_n of the divided
/// differences of orders 1..max_order, with noise floor
/// eps_n = 2^n * max point error / (min grid gap)^n. Point errors are
/// floored at a few ulps of the value so exact curves still get a floor.
/// One check per order; a failing check names the first violating node.
DiagnosticsReport complete_monotonicity_check(const Curve& c, int max_order = 4);

/// One route's value at one grid point.
struct MethodValue {
  Method method;
  double value;
  double error;
};

struct PointComparison {
  double t = 0.0;
  std::vector<MethodValue> values;  // routes that produced a converged value
  std::optional<Method> best;       // smallest error estimate among them
  bool small_agrees = false;        // series-small agrees with inversion
  bool large_agrees = false;        // series-large agrees with inversion
};

struct CrossValidation {
  std::vector<PointComparison> points;
  double small_coverage = 0.0;  // fraction of points where series-small agrees with inversion
  double large_coverage = 0.0;
  double union_coverage = 0.0;
  DiagnosticsReport report;
};

/// Evaluates every applicable route (series-small, series-large, the closed
/// form for the gamma = 1 family, the exponential for Debye, certified
/// inversion) at each grid point. Two routes agree when
/// |a - b| <= max(tol, err_a + err_b).
CrossValidation compare_methods(const RelaxationModel& m, std::span<const double> grid, double tol = 1e-6);

/// The report of compare_methods: one agreement check per pair of routes
/// plus the complementarity verdict (every point covered by a series that
/// agrees with inversion; for Debye the exponential stands in for the
/// series).
DiagnosticsReport cross_validate(const RelaxationModel& m, std::span<const double> grid, double tol = 1e-6);

}  // namespace relax
