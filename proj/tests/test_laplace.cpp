#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "oracle.hpp"
#include "relax/errors.hpp"
#include "relax/laplace.hpp"
#include "relax/model.hpp"
#include "relax/relaxation.hpp"

using namespace relax;
using laplace::Complex;
using laplace::SDomainFn;

namespace {

bool close_rel(double a, double b, double rel) { return std::abs(a - b) <= rel * std::abs(b); }

double real_part(const SDomainFn& F, double s) { return F(Complex(s, 0.0)).real(); }

}  // namespace

TEST_CASE("kernel transform examples") {
  const SDomainFn K = laplace::kernel_transform({0.5, 0.5, 1.0, -1.0});
  CHECK(close_rel(real_part(K, 2.0), 0.5 * (std::sqrt(2.0) + 1.0), 1e-15));

  // gamma = 1, beta = 1 - alpha: K = (s^alpha - lambda) / s.
  const SDomainFn K1 = laplace::kernel_transform({0.3, 0.7, 1.0, -2.0});
  for (double s : {0.01, 1.0, 50.0}) CHECK(close_rel(real_part(K1, s), (std::pow(s, 0.3) + 2.0) / s, 1e-14));

  // lambda = 0 collapses to s^-beta whatever gamma is.
  const SDomainFn K0 = laplace::kernel_transform({0.6, 0.4, 0.5, 0.0});
  for (double s : {0.1, 3.0}) CHECK(close_rel(real_part(K0, s), std::pow(s, -0.4), 1e-14));
}

TEST_CASE("transforms respect the branch cut and conjugate symmetry") {
  const SDomainFn K = laplace::kernel_transform({0.4, 0.6, 0.7, -1.5});
  CHECK_THROWS_AS(K(Complex(-1.0, 0.0)), BranchViolation);
  CHECK_THROWS_AS(K(Complex(0.0, 0.0)), BranchViolation);
  for (const Complex s : {Complex(0.3, 2.0), Complex(-4.0, 0.5), Complex(10.0, -7.0)}) {
    const Complex a = K(std::conj(s));
    const Complex b = std::conj(K(s));
    CHECK(std::abs(a - b) <= 1e-14 * std::abs(b));
  }
}

TEST_CASE("solution transform examples") {
  const RelaxationModel d = RelaxationModel::debye(2.0, 3.0);
  const SDomainFn Hd = laplace::solution_transform(d);
  for (double s : {0.2, 1.0, 9.0}) CHECK(close_rel(real_part(Hd, s), (3.0 / 2.0) / (1.0 + s * 3.0 / 2.0), 1e-14));

  const RelaxationModel m = RelaxationModel::tau_form(0.5, 0.4, 1.0);
  const double M = m.strength();
  const double lambda = m.params().lambda;
  const SDomainFn H = laplace::solution_transform(m);
  for (double s : {0.05, 1.0, 20.0}) {
    const double sa = std::pow(s, 0.5);
    const double partial = std::pow(s, -0.5) / (sa + M - lambda) - lambda / s / (sa + M - lambda);
    CHECK(close_rel(real_part(H, s), partial, 1e-13));
  }
}

TEST_CASE("initial and final value behaviour of s H(s)") {
  for (double alpha : {0.3, 0.5, 0.8}) {
    const RelaxationModel m = RelaxationModel::tau_form(alpha, 1.0, 1.0);
    const SDomainFn H = laplace::solution_transform(m);
    // s H(s) -> 1 monotonically as s -> inf, at the slow rate s^-alpha.
    double prev = 1.0;
    for (double s : {1e2, 1e3, 1e4}) {
      const double gap = std::abs(1.0 - s * real_part(H, s));
      CHECK(gap < prev);
      prev = gap;
    }
    CHECK(std::abs(1.0 - 1e30 * real_part(H, 1e30)) < 1e-3);

    // s H(s) -> -lambda / (M - lambda) as s -> 0.
    const double M = m.strength();
    const double lambda = m.params().lambda;
    const double s = 1e-12;
    CHECK(std::abs(s * real_part(H, s) - (-lambda / (M - lambda))) < 1e-3);
  }
  const RelaxationModel cc = RelaxationModel::direct({0.6, 0.4, 1.0, 0.0}, 2.0);
  CHECK(std::abs(1e-12 * real_part(laplace::solution_transform(cc), 1e-12)) < 1e-3);
}

TEST_CASE("Talbot inversion of known pairs") {
  const SDomainFn exp_pair([](Complex s) { return 1.0 / (s + 1.0); }, -1.0, "1/(s+1)");
  CHECK(close_rel(laplace::invert_talbot(exp_pair, 1.0), std::exp(-1.0), 1e-12));

  const relax::testing::HighPrecisionML e_half(0.5, 1.0, 1.0);
  const SDomainFn ml_pair([](Complex s) { return std::pow(s, -0.5) / (std::sqrt(s) + 1.0); }, 0.0, "E_1/2");
  CHECK(close_rel(laplace::invert_talbot(ml_pair, 1.0), e_half(-1.0), 1e-10));

  const RelaxationModel d = RelaxationModel::debye(2.0, 3.0);
  for (double t : {0.1, 1.0, 6.0}) {
    CHECK(close_rel(laplace::invert_talbot(laplace::solution_transform(d), t), std::exp(-2.0 * t / 3.0), 1e-10));
  }
}

TEST_CASE("de Hoog inversion of known pairs") {
  const SDomainFn step([](Complex s) { return 1.0 / s; }, 0.0, "1/s");
  for (double t : {0.01, 1.0, 30.0}) CHECK(close_rel(laplace::invert_dehoog(step, t), 1.0, 1e-10));

  const SDomainFn te([](Complex s) { return 1.0 / ((s + 1.0) * (s + 1.0)); }, -1.0, "1/(s+1)^2");
  CHECK(close_rel(laplace::invert_dehoog(te, 2.0), 2.0 * std::exp(-2.0), 1e-10));

  const RelaxationModel m = RelaxationModel::tau_form(0.5, 0.4, 1.0);
  CHECK(close_rel(laplace::invert_dehoog(laplace::solution_transform(m), 1.0), solve_closed_gamma1(m, 1.0), 1e-9));
}

TEST_CASE("certified inversion requires the two inverters to agree") {
  for (double alpha : {0.3, 0.7}) {
    const RelaxationModel m = RelaxationModel::tau_form(alpha, 0.2, 1.0);
    const SDomainFn F = laplace::solution_transform(m);
    for (double t : {1e-3, 0.1, 10.0, 1e3}) {
      const laplace::CertifiedValue v = laplace::certified_inverse(F, t);
      CHECK(v.discrepancy <= 1e-6 * std::max(1.0, std::abs(v.value)));
      CHECK(v.discrepancy == doctest::Approx(std::abs(v.talbot - v.dehoog)));
    }
  }
  // A pole in the right half plane is invisible to a contour that assumes
  // otherwise; the inverters must not certify a value.
  const SDomainFn bad([](Complex s) { return 1.0 / (s - 2.0); }, 0.0, "misdeclared abscissa");
  CHECK_THROWS_AS(laplace::certified_inverse(bad, 3.0), Error);
}

TEST_CASE("Kochubei conditions for gamma < 1 with alpha + beta = 1") {
  for (double alpha : {0.3, 0.5, 0.8}) {
    for (double gamma : {0.25, 0.6, 0.9}) {
      for (double lambda : {-0.5, -3.0}) {
        const DiagnosticsReport r = laplace::check_kochubei_conditions({alpha, 1.0 - alpha, gamma, lambda});
        CAPTURE(alpha);
        CAPTURE(gamma);
        CHECK(r.overall());
        CHECK(r.checks().size() >= 4);
      }
    }
  }
}

TEST_CASE("for gamma = 1 the small-s limit of sK is -lambda, not zero") {
  // sK = s^alpha - lambda when beta = 1 - alpha.
  const DiagnosticsReport r = laplace::check_kochubei_conditions({0.5, 0.5, 1.0, -1.0});
  const Check* sk = r.find("sK->0 as s->0");
  REQUIRE(sk != nullptr);
  CHECK_FALSE(sk->passed);
  CHECK(r.find("K->inf as s->0")->passed);
  CHECK(r.find("K->0 as s->inf")->passed);
  CHECK(r.find("sK->inf as s->inf")->passed);
  // lambda = 0 restores the power law and all four limits.
  CHECK(laplace::check_kochubei_conditions({0.5, 0.5, 1.0, 0.0}).overall());
}

TEST_CASE("out-of-model parameters are flagged but still sampled") {
  const DiagnosticsReport r = laplace::check_kochubei_conditions({0.5, 2.0, 1.0, -1.0});
  CHECK(r.find("K->0 as s->inf")->passed);
  CHECK_FALSE(r.overall());
  CHECK_THROWS_AS(laplace::check_kochubei_conditions({0.5, 0.5, 1.0, 1.0}), ParameterViolation);
}
