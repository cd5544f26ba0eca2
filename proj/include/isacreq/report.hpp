#pragma once

#include <string>
#include <vector>

namespace isacreq {

enum class Verdict { kPass, kFail, kWarn };

const char* to_string(Verdict v);

// One row of a feasibility report. `requirement_row` names the requirement
// table row or KPI the check audits.
struct Check {
  std::string name;
  double required = 0.0;
  double achieved = 0.0;
  // Relative headroom: >= 0 passes. Boolean checks use +1 / -1.
  double margin = 0.0;
  Verdict verdict = Verdict::kPass;
  std::string requirement_row;
  std::string note;
};

// achieved must be >= required
Check at_least(std::string name, double required, double achieved, std::string row);
// achieved must be <= required
Check at_most(std::string name, double required, double achieved, std::string row);
Check flag(std::string name, bool satisfied, std::string row, std::string note = {});

}  // namespace isacreq
