#pragma once

namespace relax {

/// Parameters (alpha, beta, gamma, lambda) of the Prabhakar kernel
/// e^gamma_{alpha,beta}(t; lambda) = t^(beta-1) E^gamma_{alpha,beta}(lambda t^alpha).
struct PrabhakarParams {
  double alpha = 0.5;
  double beta = 0.5;
  double gamma = 1.0;
  double lambda = 0.0;
};

/// Throws ParameterViolation unless alpha > 0 and all fields are finite.
void validate_eval_mode(const PrabhakarParams& p);

/// Relaxation-model constraints: 0 < gamma <= 1, beta > 0 and either
/// alpha + beta = 1 or beta = 1 - alpha*gamma.
void validate_model_mode(const PrabhakarParams& p);

/// True when alpha + beta = 1 or beta = 1 - alpha*gamma (to 1e-12).
bool satisfies_model_constraint(const PrabhakarParams& p);

}  // namespace relax
