#include "relax/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace relax {

namespace {

double finite_or_clamped(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return 0.0;
  return v > 0 ? std::numeric_limits<double>::max() : -std::numeric_limits<double>::max();
}

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

void DiagnosticsReport::add(Check check) {
  for (double& v : check.evidence) v = finite_or_clamped(v);
  check.tolerance = finite_or_clamped(check.tolerance);
  checks_.push_back(std::move(check));
}

void DiagnosticsReport::note(std::string text) { notes_.push_back(std::move(text)); }

void DiagnosticsReport::merge(const DiagnosticsReport& other) {
  checks_.insert(checks_.end(), other.checks_.begin(), other.checks_.end());
  notes_.insert(notes_.end(), other.notes_.begin(), other.notes_.end());
}

bool DiagnosticsReport::overall() const {
  for (const auto& c : checks_) {
    if (!c.passed) return false;
  }
  return true;
}

const Check* DiagnosticsReport::find(const std::string& name) const {
  for (const auto& c : checks_) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

nlohmann::json DiagnosticsReport::to_json() const {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : checks_) {
    checks.push_back({{"name", c.name},
                      {"pass", c.passed},
                      {"evidence", c.evidence},
                      {"tolerance", c.tolerance},
                      {"detail", c.detail}});
  }
  return {{"overall", overall()}, {"checks", checks}, {"notes", notes_}};
}

std::string DiagnosticsReport::to_text() const {
  std::ostringstream os;
  for (const auto& c : checks_) {
    os << (c.passed ? "PASS " : "FAIL ") << c.name << " tol=" << fmt_double(c.tolerance)
       << " evidence=[";
    for (std::size_t i = 0; i < c.evidence.size(); ++i) {
      os << (i ? "," : "") << fmt_double(c.evidence[i]);
    }
    os << "]";
    if (!c.detail.empty()) os << " " << c.detail;
    os << "\n";
  }
  for (const auto& n : notes_) os << "note: " << n << "\n";
  os << "overall: " << (overall() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

}  // namespace relax
