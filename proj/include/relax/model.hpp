#pragma once

#include <string>

#include "relax/prabhakar_params.hpp"

namespace relax {

enum class Parameterization { direct_m, tau_form, debye };

/// The relaxation equation  int_0^t k(t-t') f'(t') dt' = -M f(t),  f(0+) = 1.
///
/// Prabhakar kernels use k = e^{-gamma}_{alpha,beta}(t; lambda). The tau
/// form is the gamma = 1 family with Lambda = 1/tau, N = 1/(1-alpha),
/// M = (1-alpha)/tau and lambda = -b alpha/(1-alpha). The Debye form has a
/// constant kernel transform K = B, so M = Lambda and f = exp(-Lambda t/B).
class RelaxationModel {
 public:
  static RelaxationModel direct(const PrabhakarParams& params, double strength);
  static RelaxationModel tau_form(double alpha, double tau, double b);
  static RelaxationModel debye(double Lambda, double B);

  const PrabhakarParams& params() const noexcept { return params_; }
  /// Relaxation strength M.
  double strength() const noexcept { return strength_; }
  Parameterization parameterization() const noexcept { return kind_; }
  bool is_debye() const noexcept { return kind_ == Parameterization::debye; }

  /// gamma = 1 and beta = 1 - alpha (closed form available).
  bool is_gamma1_family() const;

  double tau() const;     // tau form only
  double b() const;       // tau form only
  double Lambda() const;  // tau form and Debye
  double B() const;       // Debye only

  /// (1/M)^(1/(1-beta)) for Prabhakar kernels, B/Lambda for Debye.
  double characteristic_time() const;

  std::string describe() const;

 private:
  RelaxationModel() = default;

  Parameterization kind_ = Parameterization::direct_m;
  PrabhakarParams params_{};
  double strength_ = 1.0;
  double tau_ = 0.0;
  double b_ = 0.0;
  double Lambda_ = 0.0;
  double B_ = 0.0;
};

}  // namespace relax
