#pragma once

#include <string>
#include <string_view>

#include "json.hpp"
#include "relax/curve.hpp"
#include "relax/model.hpp"

namespace relax {

/// %.17g: enough digits for an exact double round trip.
std::string format_double(double v);

/// Header `t,f,method,error_estimate`, one row per point.
std::string curve_to_csv(const Curve& c);
/// Throws ParameterViolation on a malformed file.
Curve curve_from_csv(std::string_view text);

nlohmann::json model_to_json(const RelaxationModel& m);
RelaxationModel model_from_json(const nlohmann::json& j);

/// {"grid": [...], "values": [...], "methods": [...], "errors": [...], "model": {...}}
nlohmann::json curve_to_json(const Curve& c, const RelaxationModel& m);
Curve curve_from_json(const nlohmann::json& j);

}  // namespace relax
