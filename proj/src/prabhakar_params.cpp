#include "relax/prabhakar_params.hpp"

#include <cmath>
#include <sstream>

#include "relax/errors.hpp"

namespace relax {

namespace {

constexpr double kConstraintTol = 1e-12;

std::string describe(const PrabhakarParams& p) {
  std::ostringstream os;
  os << "(alpha=" << p.alpha << ", beta=" << p.beta << ", gamma=" << p.gamma
     << ", lambda=" << p.lambda << ")";
  return os.str();
}

}  // namespace

void validate_eval_mode(const PrabhakarParams& p) {
  if (!std::isfinite(p.alpha) || !std::isfinite(p.beta) || !std::isfinite(p.gamma) ||
      !std::isfinite(p.lambda)) {
    throw ParameterViolation("non-finite Prabhakar parameter " + describe(p));
  }
  if (p.alpha <= 0.0) throw ParameterViolation("alpha must be positive " + describe(p));
}

bool satisfies_model_constraint(const PrabhakarParams& p) {
  return std::abs(p.alpha + p.beta - 1.0) <= kConstraintTol ||
         std::abs(p.beta - (1.0 - p.alpha * p.gamma)) <= kConstraintTol;
}

void validate_model_mode(const PrabhakarParams& p) {
  validate_eval_mode(p);
  if (!(p.gamma > 0.0 && p.gamma <= 1.0)) {
    throw ParameterViolation("model mode needs 0 < gamma <= 1 " + describe(p));
  }
  if (p.beta <= 0.0) throw ParameterViolation("model mode needs beta > 0 " + describe(p));
  if (!satisfies_model_constraint(p)) {
    throw ParameterViolation("model mode needs alpha + beta = 1 or beta = 1 - alpha*gamma " +
                             describe(p));
  }
}

}  // namespace relax
