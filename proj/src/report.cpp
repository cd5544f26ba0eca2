#include "isacreq/report.hpp"

#include <cmath>
#include <limits>

namespace isacreq {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kPass:
      return "pass";
    case Verdict::kFail:
      return "fail";
    case Verdict::kWarn:
      return "warn";
  }
  return "fail";
}

namespace {

Check make(std::string name, double required, double achieved, double margin, std::string row) {
  Check c;
  c.name = std::move(name);
  c.required = required;
  c.achieved = achieved;
  c.margin = std::isnan(margin) ? -std::numeric_limits<double>::infinity() : margin;
  c.verdict = c.margin >= 0.0 ? Verdict::kPass : Verdict::kFail;
  c.requirement_row = std::move(row);
  return c;
}

}  // namespace

Check at_least(std::string name, double required, double achieved, std::string row) {
  return make(std::move(name), required, achieved, achieved / required - 1.0, std::move(row));
}

Check at_most(std::string name, double required, double achieved, std::string row) {
  return make(std::move(name), required, achieved, 1.0 - achieved / required, std::move(row));
}

Check flag(std::string name, bool satisfied, std::string row, std::string note) {
  Check c = make(std::move(name), 1.0, satisfied ? 1.0 : 0.0, satisfied ? 1.0 : -1.0,
                 std::move(row));
  c.note = std::move(note);
  return c;
}

}  // namespace isacreq
