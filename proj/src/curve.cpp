#include "relax/curve.hpp"

#include <array>
#include <cmath>
#include <string>

#include "relax/errors.hpp"
#include "relax/model.hpp"

namespace relax {

namespace {

constexpr std::array<std::pair<Method, std::string_view>, 6> kMethodNames{{
    {Method::series_small, "series-small"},
    {Method::series_large, "series-large"},
    {Method::closed_gamma1, "closed-gamma1"},
    {Method::inversion, "inversion"},
    {Method::debye, "debye"},
    {Method::cole_cole, "cole-cole"},
}};

}  // namespace

std::string_view to_string(Method m) {
  for (const auto& [method, name] : kMethodNames) {
    if (method == m) return name;
  }
  return "unknown";
}

Method method_from_string(std::string_view name) {
  for (const auto& [method, n] : kMethodNames) {
    if (n == name) return method;
  }
  throw ParameterViolation("unknown method tag '" + std::string(name) + "'");
}

void Curve::validate() const {
  const std::size_t n = grid.size();
  if (values.size() != n || methods.size() != n || errors.size() != n) {
    throw ParameterViolation("curve columns have different lengths");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(grid[i] > 0.0) || !std::isfinite(grid[i])) {
      throw ParameterViolation("curve times must be finite and positive");
    }
    if (i > 0 && !(grid[i] > grid[i - 1])) throw ParameterViolation("curve grid must be strictly increasing");
    if (!std::isfinite(values[i])) throw ParameterViolation("curve values must be finite");
    if (!(errors[i] >= 0.0) || !std::isfinite(errors[i])) {
      throw ParameterViolation("curve error estimates must be finite and nonnegative");
    }
  }
}

std::vector<double> make_grid(const GridSpec& spec) {
  if (spec.points < 2) throw ParameterViolation("grid needs at least 2 points");
  if (!(spec.t_min > 0.0) || !(spec.t_max > spec.t_min) || !std::isfinite(spec.t_max)) {
    throw ParameterViolation("grid needs 0 < t_min < t_max");
  }
  std::vector<double> t(static_cast<std::size_t>(spec.points));
  const int last = spec.points - 1;
  if (spec.spacing == Spacing::geometric) {
    const double lo = std::log(spec.t_min);
    const double hi = std::log(spec.t_max);
    for (int i = 0; i <= last; ++i) t[i] = std::exp(lo + (hi - lo) * i / last);
  } else {
    for (int i = 0; i <= last; ++i) t[i] = spec.t_min + (spec.t_max - spec.t_min) * i / last;
  }
  t.front() = spec.t_min;
  t.back() = spec.t_max;
  return t;
}

GridSpec default_grid(const RelaxationModel& m) {
  const double tc = m.characteristic_time();
  return {1e-2 * tc, 1e2 * tc, 64, Spacing::geometric};
}

}  // namespace relax
