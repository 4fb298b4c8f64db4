#include "relax/validation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "relax/errors.hpp"
#include "relax/laplace.hpp"
#include "relax/relaxation.hpp"

namespace relax {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

DiagnosticsReport complete_monotonicity_check(const Curve& c, int max_order) {
  if (max_order < 1 || max_order > 6) throw ParameterViolation("max_order must be in [1, 6]");
  c.validate();
  const std::size_t n = c.size();
  if (n < static_cast<std::size_t>(max_order) + 8) {
    throw ParameterViolation("complete monotonicity check needs at least max_order + 8 points");
  }

  double max_err = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    max_err = std::max(max_err, std::max(c.errors[i], 4.0 * kEps * std::abs(c.values[i])));
  }
  double min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < n; ++i) min_gap = std::min(min_gap, c.grid[i + 1] - c.grid[i]);

  DiagnosticsReport report;
  std::vector<double> dd(c.values);
  for (int order = 1; order <= max_order; ++order) {
    for (std::size_t i = 0; i + order < n; ++i) {
      dd[i] = (dd[i + 1] - dd[i]) / (c.grid[i + order] - c.grid[i]);
    }
    const std::size_t count = n - order;
    const double sign = order % 2 == 0 ? 1.0 : -1.0;
    const double floor = std::ldexp(max_err, order) / std::pow(min_gap, order);

    Check check;
    check.name = "CM order " + std::to_string(order);
    check.tolerance = floor;
    check.passed = true;
    double worst = std::numeric_limits<double>::infinity();
    std::size_t worst_at = 0;
    std::optional<std::size_t> first;
    for (std::size_t i = 0; i < count; ++i) {
      const double v = sign * dd[i];
      if (v < worst) {
        worst = v;
        worst_at = i;
      }
      if (v < -floor && !first) first = i;
    }
    check.evidence = {worst, c.grid[worst_at]};
    if (first) {
      check.passed = false;
      check.detail = "first violation at t=" + fmt(c.grid[*first]) + " (nodes " + std::to_string(*first) + ".." +
                     std::to_string(*first + order) + "), signed difference " + fmt(sign * dd[*first]);
    } else {
      check.detail = "(-1)^" + std::to_string(order) + " divided differences >= -noise floor";
    }
    report.add(std::move(check));
  }
  return report;
}

CrossValidation compare_methods(const RelaxationModel& m, std::span<const double> grid, double tol) {
  if (!(tol > 0.0)) throw ParameterViolation("tol must be positive");
  if (!m.is_debye() && m.params().lambda > 0.0) throw ParameterViolation("lambda > 0 is outside the model");

  CrossValidation out;
  const laplace::SDomainFn F = laplace::solution_transform(m);
  const bool debye = m.is_debye();
  const bool closed = m.is_gamma1_family();

  auto agree = [tol](const MethodValue& a, const MethodValue& b) {
    return std::abs(a.value - b.value) <= std::max(tol, a.error + b.error);
  };

  struct PairStats {
    int compared = 0;
    int agreed = 0;
    double worst_ratio = 0.0;
    double worst_t = 0.0;
  };
  std::map<std::pair<Method, Method>, PairStats> pairs;
  int small_hits = 0, large_hits = 0, union_hits = 0;
  std::vector<double> uncovered;

  for (double t : grid) {
    PointComparison pc;
    pc.t = t;
    try {
      const SeriesEval s = solve_series_small_regime(m, t, tol);
      pc.values.push_back({Method::series_small, s.value, s.error_estimate});
    } catch (const Error&) {
    }
    if (!debye) {
      try {
        const SeriesEval s = solve_series_large_regime(m, t, tol);
        pc.values.push_back({Method::series_large, s.value, s.error_estimate});
      } catch (const Error&) {
      }
    }
    if (closed) {
      try {
        const ClosedForms f = closed_gamma1_forms(m, t);
        const double err = std::max(f.shifted.error_estimate, std::abs(f.shifted.value - f.two_term.value));
        pc.values.push_back({Method::closed_gamma1, f.shifted.value, err});
      } catch (const Error&) {
      }
    }
    if (debye) {
      const double v = solve_debye(m.Lambda(), m.B(), t);
      pc.values.push_back({Method::debye, v, 2.0 * kEps * v});
    }
    std::optional<MethodValue> inv;
    try {
      const laplace::CertifiedValue o = laplace::certified_inverse(F, t);
      inv = MethodValue{Method::inversion, o.value, std::max(o.discrepancy, kEps * std::abs(o.value))};
      pc.values.push_back(*inv);
    } catch (const Error&) {
    }

    for (std::size_t a = 0; a < pc.values.size(); ++a) {
      for (std::size_t b = a + 1; b < pc.values.size(); ++b) {
        const auto& va = pc.values[a];
        const auto& vb = pc.values[b];
        PairStats& ps = pairs[{va.method, vb.method}];
        ++ps.compared;
        const bool ok = agree(va, vb);
        ps.agreed += ok;
        const double ratio = std::abs(va.value - vb.value) / std::max(tol, va.error + vb.error);
        if (ratio > ps.worst_ratio) {
          ps.worst_ratio = ratio;
          ps.worst_t = t;
        }
      }
    }

    bool exact_agrees = false;
    if (inv) {
      for (const auto& v : pc.values) {
        if (v.method == Method::series_small) pc.small_agrees = agree(v, *inv);
        if (v.method == Method::series_large) pc.large_agrees = agree(v, *inv);
        if (v.method == Method::debye) exact_agrees = agree(v, *inv);
      }
    }
    small_hits += pc.small_agrees;
    large_hits += pc.large_agrees;
    const bool covered = pc.small_agrees || pc.large_agrees || exact_agrees;
    union_hits += pc.small_agrees || pc.large_agrees;
    if (!covered) uncovered.push_back(t);

    if (!pc.values.empty()) {
      pc.best = std::min_element(pc.values.begin(), pc.values.end(),
                                 [](const MethodValue& a, const MethodValue& b) { return a.error < b.error; })
                    ->method;
    }
    out.points.push_back(std::move(pc));
  }

  const double npts = std::max<double>(1.0, static_cast<double>(grid.size()));
  out.small_coverage = small_hits / npts;
  out.large_coverage = large_hits / npts;
  out.union_coverage = union_hits / npts;

  for (const auto& [key, ps] : pairs) {
    Check check;
    check.name = std::string(to_string(key.first)) + " vs " + std::string(to_string(key.second));
    check.passed = ps.agreed == ps.compared;
    check.tolerance = tol;
    check.evidence = {ps.worst_ratio, static_cast<double>(ps.agreed), static_cast<double>(ps.compared)};
    check.detail = std::to_string(ps.agreed) + "/" + std::to_string(ps.compared) +
                   " points agree; worst |a-b|/max(tol, err_a+err_b) = " + fmt(ps.worst_ratio) + " at t=" +
                   fmt(ps.worst_t);
    out.report.add(std::move(check));
  }

  Check comp;
  comp.name = "complementarity";
  comp.passed = uncovered.empty() && !grid.empty();
  comp.tolerance = tol;
  comp.evidence = {out.small_coverage, out.large_coverage, out.union_coverage};
  if (uncovered.empty()) {
    comp.detail = debye ? "every point reproduced by the exponential and inversion"
                        : "every point covered by a series agreeing with inversion";
  } else {
    comp.detail = std::to_string(uncovered.size()) + " uncovered points, first at t=" + fmt(uncovered.front());
  }
  out.report.add(std::move(comp));

  // Runs of the per-point best route.
  std::ostringstream best;
  best << "best route by error estimate:";
  std::size_t i = 0;
  while (i < out.points.size()) {
    std::size_t j = i;
    while (j + 1 < out.points.size() && out.points[j + 1].best == out.points[i].best) ++j;
    best << ' ' << (out.points[i].best ? to_string(*out.points[i].best) : std::string_view("none")) << " on ["
         << fmt(out.points[i].t) << ", " << fmt(out.points[j].t) << "]";
    i = j + 1;
  }
  out.report.note(best.str());
  return out;
}

DiagnosticsReport cross_validate(const RelaxationModel& m, std::span<const double> grid, double tol) {
  return compare_methods(m, grid, tol).report;
}

}  // namespace relax
