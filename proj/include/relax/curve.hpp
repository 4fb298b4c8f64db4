#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace relax {

class RelaxationModel;

enum class Method { series_small, series_large, closed_gamma1, inversion, debye, cole_cole };

std::string_view to_string(Method m);
/// Throws ParameterViolation for unknown names.
Method method_from_string(std::string_view name);

/// Sampled solution f(t) with the route and error estimate of every point.
struct Curve {
  std::vector<double> grid;
  std::vector<double> values;
  std::vector<Method> methods;
  std::vector<double> errors;

  std::size_t size() const noexcept { return grid.size(); }
  /// Throws ParameterViolation on ragged columns, non-positive or
  /// non-increasing times, negative or non-finite errors.
  void validate() const;
};

enum class Spacing { geometric, linear };

struct GridSpec {
  double t_min = 1e-2;
  double t_max = 1e2;
  int points = 64;
  Spacing spacing = Spacing::geometric;
};

std::vector<double> make_grid(const GridSpec& spec);

/// 64 geometric points on [1e-2, 1e2] * characteristic time.
GridSpec default_grid(const RelaxationModel& m);

}  // namespace relax
