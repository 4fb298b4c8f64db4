#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace relax {

/// One named pass/fail outcome with the sampled evidence behind it.
struct Check {
  std::string name;
  bool passed = false;
  std::vector<double> evidence;
  double tolerance = 0.0;
  std::string detail;
};

/// Outcome of a set of diagnostic checks. `overall()` is the conjunction
/// of the individual checks; notes carry caveats that are not checks.
class DiagnosticsReport {
 public:
  void add(Check check);
  void note(std::string text);
  void merge(const DiagnosticsReport& other);

  bool overall() const;
  const std::vector<Check>& checks() const noexcept { return checks_; }
  const std::vector<std::string>& notes() const noexcept { return notes_; }
  const Check* find(const std::string& name) const;

  nlohmann::json to_json() const;
  /// Line-oriented text: one `PASS|FAIL name tol=... evidence=[...]` line per
  /// check, then `note: ...` lines, then `overall: PASS|FAIL`.
  std::string to_text() const;

 private:
  std::vector<Check> checks_;
  std::vector<std::string> notes_;
};

}  // namespace relax
