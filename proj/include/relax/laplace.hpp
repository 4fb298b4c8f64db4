#pragma once

#include <complex>
#include <functional>
#include <string>

#include "relax/prabhakar_params.hpp"
#include "relax/report.hpp"

namespace relax {
class RelaxationModel;
}

namespace relax::laplace {

using Complex = std::complex<double>;

/// A Laplace-domain function, analytic for Re s > abscissa except on the
/// closed negative real axis where the principal branch of s^alpha is cut.
class SDomainFn {
 public:
  using Eval = std::function<Complex(Complex)>;

  SDomainFn(Eval eval, double abscissa, std::string description);

  /// Throws BranchViolation for s on the closed negative real axis.
  Complex operator()(Complex s) const;

  double abscissa() const noexcept { return abscissa_; }
  const std::string& description() const noexcept { return description_; }

 private:
  Eval eval_;
  double abscissa_;
  std::string description_;
};

/// K(s) = s^(-alpha gamma - beta) (s^alpha - lambda)^gamma.
SDomainFn kernel_transform(const PrabhakarParams& p);

/// F(s) = H(s) = K(s) / (s K(s) + M), the transform of f with f(0+) = 1.
SDomainFn solution_transform(const RelaxationModel& m);

inline constexpr int kTalbotNodes = 64;
inline constexpr int kTalbotMaxNodes = 512;

/// Talbot-contour quadrature of the Bromwich integral. `nodes` counts the
/// contour points; conjugate symmetry halves the transform evaluations.
/// The rule is compared against the half-resolution rule and doubled up to
/// kTalbotMaxNodes until the two agree; throws OscillationDetected otherwise.
double invert_talbot(const SDomainFn& F, double t, int nodes = kTalbotNodes);

/// de Hoog, Knight & Stokes accelerated Fourier-series inversion.
double invert_dehoog(const SDomainFn& F, double t, double tol = 1e-12);

inline constexpr double kCertifyTol = 1e-6;

struct CertifiedValue {
  double value = 0.0;  // the Talbot value
  double talbot = 0.0;
  double dehoog = 0.0;
  double discrepancy = 0.0;  // |talbot - dehoog|
};

/// Inverts with both methods. Throws NonAgreement unless
/// |talbot - dehoog| <= rel_tol * max(1, |talbot|).
CertifiedValue certified_inverse(const SDomainFn& F, double t, double rel_tol = kCertifyTol);

/// Samples K(s) and s K(s) on s = 10^k, k = -8..-1 and k = 1..8, and checks
/// K -> inf, sK -> 0 (s -> 0) and K -> 0, sK -> inf (s -> inf) by monotone
/// trend plus an extrapolated log-log slope bounded away from zero.
DiagnosticsReport check_kochubei_conditions(const PrabhakarParams& p);

}  // namespace relax::laplace
