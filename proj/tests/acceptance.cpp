// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Tolerances are fixed here, not taken from the library.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "relax/errors.hpp"
#include "relax/laplace.hpp"
#include "relax/relaxation.hpp"
#include "relax/special_functions.hpp"
#include "relax/validation.hpp"

using namespace relax;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

char buf[512];

template <typename... Args>
std::string fmt(const char* f, Args... args) {
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

const double kAlphas[] = {0.3, 0.5, 0.7};
const double kTauFactors[] = {0.5, 2.0};

std::vector<RelaxationModel> example_models() {
  std::vector<RelaxationModel> out;
  for (double a : kAlphas) {
    for (double f : kTauFactors) out.push_back(RelaxationModel::tau_form(a, f * tau_star(a, 1.0), 1.0));
  }
  return out;
}

Outcome thresholds() {
  const double half = tau_star(0.5, 1.0);
  const double seven = tau_star(0.7, 1.0);
  const double d = std::max(std::abs(half - 0.5), std::abs(seven - 9.0 / 70.0));
  return {d <= 1e-15, fmt("tau*(0.5,1)=%.17g tau*(0.7,1)=%.17g, max deviation %.2e", half, seven, d)};
}

Outcome complementarity() {
  Outcome o;
  int covered = 0, total = 0, small = 0, large = 0;
  for (const RelaxationModel& m : example_models()) {
    const laplace::SDomainFn F = laplace::solution_transform(m);
    for (double t : make_grid(default_grid(m))) {
      const double oracle = laplace::certified_inverse(F, t).value;
      auto agrees = [&](const std::function<SeriesEval()>& series) {
        try {
          const SeriesEval s = series();
          return std::abs(s.value - oracle) <= std::max(1e-6, s.error_estimate);
        } catch (const SeriesError&) {
          return false;
        }
      };
      const bool s = agrees([&] { return solve_series_small_regime(m, t, 1e-6); });
      const bool l = agrees([&] { return solve_series_large_regime(m, t, 1e-6); });
      small += s;
      large += l;
      covered += s || l;
      ++total;
      if (!(s || l) && o.pass) {
        o.pass = false;
        o.detail = "uncovered: " + m.describe() + fmt(" t=%.6g; ", t);
      }
    }
  }
  o.detail += fmt("%d/%d points covered (small %d, large %d), 6 parameter sets x 64 points", covered, total, small,
                  large);
  return o;
}

Outcome exactness() {
  double worst = 0.0;
  for (const RelaxationModel& m : example_models()) {
    const laplace::SDomainFn F = laplace::solution_transform(m);
    for (double t : make_grid(default_grid(m))) {
      const double oracle = laplace::certified_inverse(F, t).value;
      worst = std::max(worst, std::abs(solve_closed_gamma1(m, t) - oracle) / std::abs(oracle));
    }
  }
  return {worst <= 1e-8, fmt("max relative deviation from certified inversion %.2e over 384 points", worst)};
}

Outcome closed_identity() {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> ua(0.05, 0.95), ulog(-3.0, 3.0), ulam(-2.0, 1.0);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const double alpha = ua(rng);
    const double M = std::pow(10.0, ulog(rng) / 3.0);
    const double lambda = -std::pow(10.0, ulam(rng));
    const double t = std::pow(10.0, ulog(rng));
    const RelaxationModel m = RelaxationModel::direct({alpha, 1.0 - alpha, 1.0, lambda}, M);
    const ClosedForms f = closed_gamma1_forms(m, t);
    worst = std::max(worst, std::abs(f.shifted.value - f.two_term.value));
  }
  return {worst <= 1e-10, fmt("max |shifted - two-term| %.2e over 100 random (alpha, M, lambda, t)", worst)};
}

Outcome cole_cole() {
  double worst = 0.0;
  int points = 0;
  bool labels = true;
  for (double alpha : {0.3, 0.5, 0.7, 0.9}) {
    const relax::testing::HighPrecisionML oracle(alpha, 1.0, 1.0);
    for (double M : {0.5, 2.0}) {
      const RelaxationModel m = RelaxationModel::direct({alpha, 1.0 - alpha, 1.0, 0.0}, M);
      const std::vector<double> grid = make_grid(default_grid(m));
      const Curve c = solve_auto(m, grid);
      for (std::size_t i = 0; i < grid.size(); ++i) {
        labels = labels && c.methods[i] == Method::cole_cole;
        worst = std::max(worst, std::abs(c.values[i] - oracle(-M * std::pow(grid[i], alpha))));
        ++points;
      }
    }
  }
  return {worst <= 1e-12 && labels,
          fmt("max |f - E_alpha(-M t^alpha)| %.2e against a 90-digit series over %d points%s", worst, points,
              labels ? "" : "; unexpected method label")};
}

Outcome debye() {
  double worst_exact = 0.0, worst_inv = 0.0;
  for (auto [Lambda, B] : {std::pair{1.0, 1.0}, {2.0, 3.0}, {0.1, 5.0}}) {
    const RelaxationModel m = RelaxationModel::debye(Lambda, B);
    const laplace::SDomainFn F = laplace::solution_transform(m);
    const std::vector<double> grid = make_grid(default_grid(m));
    const Curve c = solve_auto(m, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      worst_exact = std::max(worst_exact, std::abs(c.values[i] - std::exp(-Lambda * grid[i] / B)));
      worst_inv = std::max(worst_inv, std::abs(c.values[i] - laplace::certified_inverse(F, grid[i]).value));
    }
  }
  return {worst_inv <= 1e-10 && worst_exact <= 1e-15,
          fmt("max |f - exp(-Lambda t/B)| %.2e, max |f - inversion| %.2e", worst_exact, worst_inv)};
}

Outcome kochubei() {
  Outcome o;
  int passed = 0;
  std::string failures;
  for (double alpha : {0.3, 0.5, 0.7}) {
    for (double gamma : {1.0 / 3.0, 2.0 / 3.0, 1.0}) {
      for (double lambda : {-0.1, -1.0, -10.0}) {
        const DiagnosticsReport r = laplace::check_kochubei_conditions({alpha, 1.0 - alpha, gamma, lambda});
        if (r.overall()) {
          ++passed;
          continue;
        }
        for (const Check& c : r.checks()) {
          if (!c.passed && failures.size() < 160) {
            failures += fmt(" [a=%.1f g=%.3g l=%g: %s]", alpha, gamma, lambda, c.name.c_str());
          }
        }
      }
    }
  }
  o.pass = passed == 27;
  o.detail = fmt("%d/27 lattice points pass all four limits", passed);
  if (!o.pass) o.detail += ";" + failures + (failures.size() >= 160 ? " ..." : "");
  return o;
}

Outcome monotonicity() {
  Outcome o;
  int curves = 0;
  AutoOptions series_only;
  series_only.use_closed_form = false;
  for (const RelaxationModel& m : example_models()) {
    const std::vector<double> grid = make_grid(default_grid(m));
    for (const Curve& c : {solve_auto(m, grid), solve_auto(m, grid, 1e-8, series_only)}) {
      ++curves;
      const DiagnosticsReport r = complete_monotonicity_check(c, 4);
      if (!r.overall() && o.pass) {
        o.pass = false;
        for (const Check& k : r.checks()) {
          if (!k.passed) o.detail = m.describe() + ": " + k.name + " " + k.detail + "; ";
        }
      }
    }
  }
  o.detail += fmt("%d curves (closed form and series dispatch) checked to order 4", curves);
  return o;
}

Outcome residuals() {
  std::vector<RelaxationModel> models = example_models();
  models.push_back(RelaxationModel::debye(2.0, 1.0));
  models.push_back(RelaxationModel::direct({0.6, 0.4, 0.5, -1.0}, 1.0));
  models.push_back(RelaxationModel::direct({0.5, 0.5, 1.0, 0.0}, 2.0));
  double worst_ratio = 0.0;
  Outcome o;
  int curves = 0;
  AutoOptions series_only;
  series_only.use_closed_form = false;
  for (const RelaxationModel& m : models) {
    GridSpec g = default_grid(m);
    g.points = 512;
    const std::vector<double> grid = make_grid(g);
    std::vector<Curve> curves_for_model{solve_auto(m, grid)};
    if (m.is_gamma1_family() && m.parameterization() == Parameterization::tau_form) {
      curves_for_model.push_back(solve_auto(m, grid, 1e-8, series_only));
    }
    for (const Curve& c : curves_for_model) {
      ++curves;
      try {
        worst_ratio = std::max(worst_ratio, residual(m, c) / m.strength());
      } catch (const InsufficientGrid& e) {
        o.pass = false;
        o.detail = m.describe() + ": " + e.what() + "; ";
      }
    }
  }
  o.pass = o.pass && worst_ratio <= 1e-5;
  o.detail += fmt("max residual / M %.2e over %d curves of 512 points on [1e-2, 1e2] t_char", worst_ratio, curves);
  return o;
}

Outcome negative_index() {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> ua(0.05, 1.0), ub(0.1, 3.0), ux(-4.0, 4.0);
  double worst_series = 0.0, worst_form = 0.0;
  for (int n : {1, 2, 3, 5}) {
    for (int k = 0; k < 50; ++k) {
      const double a = ua(rng), b = ub(rng), x = ux(rng);
      const double poly = sf::mittag_leffler_neg_int(a, b, n, x);
      const double series = sf::mittag_leffler_3p(a, b, -n, x).value;
      worst_series = std::max(worst_series, std::abs(poly - series) / std::max(1.0, std::abs(series)));
      if (n == 1) {
        const double form = 1.0 / std::tgamma(b) - x / std::tgamma(a + b);
        worst_form = std::max(worst_form, std::abs(poly - form) / std::max(1.0, std::abs(form)));
      }
    }
  }
  return {worst_series <= 1e-12 && worst_form <= 1e-15,
          fmt("polynomial vs series %.2e (n = 1, 2, 3, 5); E^{-1} vs 1/Gamma(b) - x/Gamma(a+b) %.2e", worst_series,
              worst_form)};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    const char* tolerance;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {"tau* thresholds", "1e-15", thresholds},
      {"complementarity of the two series", "max(1e-6, series error estimate)", complementarity},
      {"closed form exact for all tau", "1e-8 relative", exactness},
      {"closed-form identity", "1e-10", closed_identity},
      {"Cole-Cole limit", "1e-12", cole_cole},
      {"Debye limit", "1e-10 vs inversion", debye},
      {"Kochubei conditions on a 3x3x3 lattice", "trend + slope 1e-3", kochubei},
      {"complete monotonicity to order 4", "noise floor 2^n maxerr / h^n", monotonicity},
      {"residual of the integro-differential equation", "1e-5 M", residuals},
      {"negative-integer upper index", "1e-12", negative_index},
  };
  int failed = 0;
  int index = 0;
  for (const Criterion& c : criteria) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %2d %s  %s (tol %s): %s [%.1fs]\n", index, o.pass ? "PASS" : "FAIL", c.name, c.tolerance,
                o.detail.c_str(), secs);
    failed += !o.pass;
  }
  std::printf("%d/%zu criteria passed\n", index - failed, std::size(criteria));
  return failed == 0 ? 0 : 1;
}
