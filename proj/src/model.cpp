#include "relax/model.hpp"

#include <cmath>
#include <sstream>

#include "relax/errors.hpp"

namespace relax {

RelaxationModel RelaxationModel::direct(const PrabhakarParams& params, double strength) {
  validate_model_mode(params);
  if (!(strength > 0.0) || !std::isfinite(strength)) {
    throw ParameterViolation("relaxation strength M must be positive");
  }
  RelaxationModel m;
  m.kind_ = Parameterization::direct_m;
  m.params_ = params;
  m.strength_ = strength;
  return m;
}

RelaxationModel RelaxationModel::tau_form(double alpha, double tau, double b) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ParameterViolation("tau form needs 0 < alpha < 1");
  if (!(tau > 0.0) || !std::isfinite(tau)) throw ParameterViolation("tau form needs tau > 0");
  if (!(b > 0.0) || !std::isfinite(b)) throw ParameterViolation("tau form needs b > 0");
  RelaxationModel m;
  m.kind_ = Parameterization::tau_form;
  m.params_ = {alpha, 1.0 - alpha, 1.0, -b * alpha / (1.0 - alpha)};
  m.tau_ = tau;
  m.b_ = b;
  m.Lambda_ = 1.0 / tau;
  m.strength_ = (1.0 - alpha) / tau;  // Lambda / N with N = 1/(1-alpha)
  return m;
}

RelaxationModel RelaxationModel::debye(double Lambda, double B) {
  if (!(Lambda > 0.0) || !std::isfinite(Lambda)) throw ParameterViolation("Debye needs Lambda > 0");
  if (!(B > 0.0) || !std::isfinite(B)) throw ParameterViolation("Debye needs B > 0");
  RelaxationModel m;
  m.kind_ = Parameterization::debye;
  m.params_ = {1.0, 1.0, 0.0, 0.0};
  m.Lambda_ = Lambda;
  m.B_ = B;
  m.strength_ = Lambda;
  return m;
}

bool RelaxationModel::is_gamma1_family() const {
  return !is_debye() && params_.gamma == 1.0 && std::abs(params_.alpha + params_.beta - 1.0) <= 1e-12;
}

double RelaxationModel::tau() const {
  if (kind_ != Parameterization::tau_form) throw ParameterViolation("model has no tau");
  return tau_;
}

double RelaxationModel::b() const {
  if (kind_ != Parameterization::tau_form) throw ParameterViolation("model has no b");
  return b_;
}

double RelaxationModel::Lambda() const {
  if (kind_ == Parameterization::direct_m) throw ParameterViolation("model has no Lambda");
  return Lambda_;
}

double RelaxationModel::B() const {
  if (kind_ != Parameterization::debye) throw ParameterViolation("model has no B");
  return B_;
}

double RelaxationModel::characteristic_time() const {
  if (is_debye()) return B_ / Lambda_;
  return std::pow(1.0 / strength_, 1.0 / (1.0 - params_.beta));
}

std::string RelaxationModel::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind_) {
    case Parameterization::debye:
      os << "debye Lambda=" << Lambda_ << " B=" << B_;
      break;
    case Parameterization::tau_form:
      os << "tau-form alpha=" << params_.alpha << " tau=" << tau_ << " b=" << b_ << " (M=" << strength_
         << " lambda=" << params_.lambda << ")";
      break;
    case Parameterization::direct_m:
      os << "direct alpha=" << params_.alpha << " beta=" << params_.beta << " gamma=" << params_.gamma
         << " lambda=" << params_.lambda << " M=" << strength_;
      break;
  }
  return os.str();
}

}  // namespace relax
