#include "relax/curve_io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "relax/errors.hpp"

namespace relax {

namespace {

double parse_double(const std::string& field, std::size_t line) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(field.c_str(), &end);
  if (field.empty() || end != field.c_str() + field.size() || errno == ERANGE) {
    throw ParameterViolation("line " + std::to_string(line) + ": '" + field + "' is not a number");
  }
  return v;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string curve_to_csv(const Curve& c) {
  std::string out = "t,f,method,error_estimate\n";
  for (std::size_t i = 0; i < c.size(); ++i) {
    out += format_double(c.grid[i]);
    out += ',';
    out += format_double(c.values[i]);
    out += ',';
    out += to_string(c.methods[i]);
    out += ',';
    out += format_double(c.errors[i]);
    out += '\n';
  }
  return out;
}

Curve curve_from_csv(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  Curve c;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!header) {
      if (line != "t,f,method,error_estimate") {
        throw ParameterViolation("expected header 't,f,method,error_estimate', got '" + line + "'");
      }
      header = true;
      continue;
    }
    const auto fields = split(line);
    if (fields.size() != 4) {
      throw ParameterViolation("line " + std::to_string(lineno) + ": expected 4 fields");
    }
    c.grid.push_back(parse_double(fields[0], lineno));
    c.values.push_back(parse_double(fields[1], lineno));
    c.methods.push_back(method_from_string(fields[2]));
    c.errors.push_back(parse_double(fields[3], lineno));
  }
  if (!header) throw ParameterViolation("empty curve file");
  c.validate();
  return c;
}

nlohmann::json model_to_json(const RelaxationModel& m) {
  nlohmann::json j;
  switch (m.parameterization()) {
    case Parameterization::debye:
      j = {{"form", "debye"}, {"Lambda", m.Lambda()}, {"B", m.B()}};
      break;
    case Parameterization::tau_form:
      j = {{"form", "tau"}, {"alpha", m.params().alpha}, {"tau", m.tau()}, {"b", m.b()}};
      break;
    case Parameterization::direct_m:
      j = {{"form", "direct"}, {"alpha", m.params().alpha}, {"beta", m.params().beta},
           {"gamma", m.params().gamma}, {"lambda", m.params().lambda}, {"M", m.strength()}};
      break;
  }
  return j;
}

RelaxationModel model_from_json(const nlohmann::json& j) {
  try {
    const std::string form = j.at("form").get<std::string>();
    if (form == "debye") return RelaxationModel::debye(j.at("Lambda").get<double>(), j.at("B").get<double>());
    if (form == "tau") {
      return RelaxationModel::tau_form(j.at("alpha").get<double>(), j.at("tau").get<double>(),
                                       j.at("b").get<double>());
    }
    if (form == "direct") {
      PrabhakarParams p{j.at("alpha").get<double>(), j.at("beta").get<double>(), j.at("gamma").get<double>(),
                        j.at("lambda").get<double>()};
      return RelaxationModel::direct(p, j.at("M").get<double>());
    }
    throw ParameterViolation("unknown model form '" + form + "'");
  } catch (const nlohmann::json::exception& e) {
    throw ParameterViolation(std::string("malformed model: ") + e.what());
  }
}

nlohmann::json curve_to_json(const Curve& c, const RelaxationModel& m) {
  nlohmann::json methods = nlohmann::json::array();
  for (Method x : c.methods) methods.push_back(std::string(to_string(x)));
  return {{"grid", c.grid}, {"values", c.values}, {"methods", methods}, {"errors", c.errors},
          {"model", model_to_json(m)}};
}

Curve curve_from_json(const nlohmann::json& j) {
  Curve c;
  try {
    c.grid = j.at("grid").get<std::vector<double>>();
    c.values = j.at("values").get<std::vector<double>>();
    c.errors = j.at("errors").get<std::vector<double>>();
    for (const auto& name : j.at("methods")) c.methods.push_back(method_from_string(name.get<std::string>()));
  } catch (const nlohmann::json::exception& e) {
    throw ParameterViolation(std::string("malformed curve: ") + e.what());
  }
  c.validate();
  return c;
}

}  // namespace relax
