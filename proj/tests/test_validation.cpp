#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <functional>
#include <string>

#include "relax/errors.hpp"
#include "relax/relaxation.hpp"
#include "relax/special_functions.hpp"
#include "relax/validation.hpp"

using namespace relax;

namespace {

Curve sampled(const std::vector<double>& grid, const std::function<double(double)>& f, double err = 0.0) {
  Curve c;
  c.grid = grid;
  for (double t : grid) {
    c.values.push_back(f(t));
    c.errors.push_back(err);
    c.methods.push_back(Method::inversion);
  }
  return c;
}

}  // namespace

TEST_CASE("complete monotonicity of the exponential to order 6") {
  const Curve c = sampled(make_grid({1e-2, 20.0, 40, Spacing::geometric}), [](double t) { return std::exp(-t); });
  const DiagnosticsReport r = complete_monotonicity_check(c, 6);
  CHECK(r.overall());
  CHECK(r.checks().size() == 6);
}

TEST_CASE("complete monotonicity of E_1/2(-t^1/2) to order 4") {
  Curve c;
  c.grid = make_grid({1e-3, 1e3, 48, Spacing::geometric});
  for (double t : c.grid) {
    const SeriesEval e = sf::mittag_leffler(0.5, 1.0, 1.0, -std::sqrt(t));
    c.values.push_back(e.value);
    c.errors.push_back(e.error_estimate);
    c.methods.push_back(Method::cole_cole);
  }
  CHECK(complete_monotonicity_check(c, 4).overall());
}

TEST_CASE("cos(t) on [0, 3] is caught with the violation located") {
  const Curve c = sampled(make_grid({1e-2, 3.0, 40, Spacing::linear}), [](double t) { return std::cos(t); });
  const DiagnosticsReport r = complete_monotonicity_check(c, 4);
  CHECK_FALSE(r.overall());
  const Check* first = r.find("CM order 1");
  const Check* second = r.find("CM order 2");
  REQUIRE(first != nullptr);
  REQUIRE(second != nullptr);
  CHECK((!first->passed || !second->passed));
  const Check& failed = first->passed ? *second : *first;
  CHECK(failed.detail.find("first violation at t=") != std::string::npos);
}

TEST_CASE("noise floor absorbs perturbations within the stated errors") {
  const std::vector<double> grid = make_grid({1e-2, 10.0, 30, Spacing::geometric});
  int k = 0;
  const Curve noisy = sampled(grid, [&](double t) { return std::exp(-t) + ((k++ % 2) ? 1e-9 : -1e-9); }, 1e-9);
  CHECK(complete_monotonicity_check(noisy, 4).overall());
  k = 0;
  const Curve silent = sampled(grid, [&](double t) { return std::exp(-t) + ((k++ % 2) ? 1e-6 : -1e-6); }, 1e-12);
  CHECK_FALSE(complete_monotonicity_check(silent, 4).overall());
}

TEST_CASE("monotonicity preconditions") {
  const Curve c = sampled(make_grid({1e-2, 1.0, 10, Spacing::geometric}), [](double t) { return std::exp(-t); });
  CHECK_THROWS_AS(complete_monotonicity_check(c, 0), ParameterViolation);
  CHECK_THROWS_AS(complete_monotonicity_check(c, 7), ParameterViolation);
  CHECK_THROWS_AS(complete_monotonicity_check(c, 4), ParameterViolation);  // needs 12 points
  CHECK(complete_monotonicity_check(c, 2).overall());
}

TEST_CASE("cross validation below tau*") {
  const RelaxationModel m = RelaxationModel::tau_form(0.5, 0.4, 1.0);
  const std::vector<double> grid = make_grid(default_grid(m));
  const CrossValidation cv = compare_methods(m, grid, 1e-8);
  const Check* closed = cv.report.find("closed-gamma1 vs inversion");
  REQUIRE(closed != nullptr);
  CHECK(closed->passed);
  CHECK(cv.report.find("complementarity")->passed);
  CHECK(cv.union_coverage == 1.0);
  for (const PointComparison& p : cv.points) CHECK(p.best.has_value());

  // The small series covers early times, the large one late times; at
  // alpha = 1/2 the hand-over sits near 100 t_char.
  const double tc = m.characteristic_time();
  const CrossValidation wide = compare_methods(m, make_grid({1e-2 * tc, 1e4 * tc, 40, Spacing::geometric}), 1e-6);
  CHECK(wide.union_coverage == 1.0);
  for (const PointComparison& p : wide.points) {
    if (p.t <= 10.0 * tc) CHECK(p.small_agrees);
    if (p.t >= 200.0 * tc) CHECK(p.large_agrees);
  }
  CHECK(wide.small_coverage < 1.0);
  CHECK(wide.large_coverage > 0.0);
}

TEST_CASE("cross validation on the Debye kernel") {
  const RelaxationModel d = RelaxationModel::debye(2.0, 1.0);
  const DiagnosticsReport r = cross_validate(d, make_grid(default_grid(d)));
  CHECK(r.overall());
  CHECK(r.find("debye vs inversion")->passed);
}

TEST_CASE("reports are deterministic") {
  const RelaxationModel m = RelaxationModel::tau_form(0.7, 0.05, 1.0);
  GridSpec g = default_grid(m);
  g.points = 24;
  const std::vector<double> grid = make_grid(g);
  CHECK(cross_validate(m, grid).to_json() == cross_validate(m, grid).to_json());
}

TEST_CASE("complementarity holds for the example parameter sets") {
  for (double alpha : {0.5, 0.7}) {
    for (double factor : {0.5, 2.0}) {
      const RelaxationModel m = RelaxationModel::tau_form(alpha, factor * tau_star(alpha, 1.0), 1.0);
      GridSpec g = default_grid(m);
      g.points = 32;
      const DiagnosticsReport r = cross_validate(m, make_grid(g));
      CAPTURE(alpha);
      CAPTURE(factor);
      CHECK(r.find("complementarity")->passed);
    }
  }
}

TEST_CASE("report text and json shapes") {
  DiagnosticsReport r;
  r.add({"a", true, {1.0, 2.0}, 0.5, "fine"});
  r.add({"b", false, {}, 0.0, "broken"});
  r.note("caveat");
  CHECK_FALSE(r.overall());
  const std::string text = r.to_text();
  CHECK(text.find("PASS a") != std::string::npos);
  CHECK(text.find("FAIL b") != std::string::npos);
  CHECK(text.find("note: caveat") != std::string::npos);
  CHECK(text.find("overall: FAIL") != std::string::npos);
  const nlohmann::json j = r.to_json();
  CHECK(j.at("overall") == false);
  CHECK(j.at("checks").size() == 2);
}
