#include "isacreq/kpis.hpp"

#include <algorithm>

namespace isacreq {

const char* to_string(UseCaseId id) {
  switch (id) {
    case UseCaseId::kC1: return "C1";
    case UseCaseId::kC2: return "C2";
    case UseCaseId::kL1: return "L1";
    case UseCaseId::kL2: return "L2";
    case UseCaseId::kL3: return "L3";
    case UseCaseId::kS1: return "S1";
    case UseCaseId::kS2: return "S2";
  }
  return "?";
}

UseCaseId parse_use_case_id(std::string_view s) {
  for (UseCaseId id : kAllUseCases) {
    if (s == to_string(id)) return id;
  }
  throw ConfigError("unknown use case '" + std::string(s) + "' (expected C1, C2, L1, L2, L3, S1 or S2)");
}

UseCaseClass class_of(UseCaseId id) {
  switch (id) {
    case UseCaseId::kC1:
    case UseCaseId::kC2:
      return UseCaseClass::kCommunication;
    case UseCaseId::kL1:
    case UseCaseId::kL2:
    case UseCaseId::kL3:
      return UseCaseClass::kLocalization;
    case UseCaseId::kS1:
    case UseCaseId::kS2:
      return UseCaseClass::kSensing;
  }
  return UseCaseClass::kCommunication;
}

void UseCaseKpis::validate() const {
  auto positive = [](const std::optional<double>& v) { return !v || *v > 0.0; };
  if (!(link_range_m > 0.0) || !positive(rate_bps) || !positive(e2e_latency_s) ||
      !positive(loc_acc_m) || !positive(orient_acc_deg) || !positive(update_rate_hz)) {
    throw ConfigError(std::string("use case ") + to_string(id) + ": KPIs must be positive");
  }
  switch (class_of(id)) {
    case UseCaseClass::kCommunication:
      if (!rate_bps || !e2e_latency_s) throw ConfigError("communication use case needs rate and latency");
      break;
    case UseCaseClass::kLocalization:
      if (!loc_acc_m || !update_rate_hz) throw ConfigError("localization use case needs accuracy and update rate");
      break;
    case UseCaseClass::kSensing:
      if (!sensing) throw ConfigError("sensing use case needs sensing KPIs");
      break;
  }
}

namespace {

std::vector<UseCaseKpis> make_registry() {
  std::vector<UseCaseKpis> r;

  UseCaseKpis c1;
  c1.id = UseCaseId::kC1;
  c1.title = "Very short-range wireless access";
  c1.rate_bps = 100e9;
  c1.e2e_latency_s = 1e-3;
  c1.e2e_latency_min_s = 0.1e-3;
  c1.link_range_m = 10.0;
  r.push_back(c1);

  UseCaseKpis c2;
  c2.id = UseCaseId::kC2;
  c2.title = "Short-range wireless access";
  c2.rate_bps = 10e9;
  c2.e2e_latency_s = 1e-3;
  c2.link_range_m = 100.0;
  r.push_back(c2);

  UseCaseKpis l1;
  l1.id = UseCaseId::kL1;
  l1.title = "High-accuracy positioning";
  l1.loc_acc_m = 0.01;
  l1.orient_acc_deg = 1.0;
  l1.update_rate_hz = 100.0;
  l1.link_range_m = 10.0;
  r.push_back(l1);

  UseCaseKpis l2;
  l2.id = UseCaseId::kL2;
  l2.title = "Low-latency positioning";
  l2.loc_acc_m = 0.1;
  l2.orient_acc_deg = 1.0;
  l2.update_rate_hz = 1000.0;
  l2.e2e_latency_s = 1e-3;  // implied by the 1 kHz update rate
  l2.link_range_m = 30.0;
  r.push_back(l2);

  UseCaseKpis l3;
  l3.id = UseCaseId::kL3;
  l3.title = "Low-complexity positioning";
  l3.loc_acc_m = 10.0;
  l3.loc_acc_min_m = 1.0;
  l3.update_rate_hz = 1.0;
  l3.link_range_m = 1000.0;
  r.push_back(l3);

  UseCaseKpis s1;
  s1.id = UseCaseId::kS1;
  s1.title = "Monostatic sensing";
  s1.link_range_m = 50.0;
  SensingKpis sk1;
  sk1.range_res_m = 0.1;
  sk1.range_acc_m = 0.1;
  sk1.velocity_mps = 0.04;
  sk1.ang_res_deg = 3.0;
  sk1.ang_acc_deg = 0.2;
  sk1.max_range_m = 50.0;
  sk1.update_rate_hz = 25.0;
  sk1.mode = SensingMode::kMonostatic;
  s1.sensing = sk1;
  s1.update_rate_hz = 25.0;
  r.push_back(s1);

  UseCaseKpis s2;
  s2.id = UseCaseId::kS2;
  s2.title = "Bi-/multi-static sensing";
  s2.link_range_m = 20.0;
  s2.loc_acc_m = 0.01;
  SensingKpis sk2;
  sk2.range_res_m = 0.1;  // cm-level ranging resolution
  sk2.range_acc_m = 0.01;
  sk2.velocity_mps = 0.1;
  sk2.ang_res_deg = 1.0;
  sk2.max_range_m = 20.0;
  sk2.update_rate_hz = 1000.0;
  sk2.mode = SensingMode::kBistatic;
  s2.sensing = sk2;
  s2.update_rate_hz = 1000.0;
  r.push_back(s2);

  for (const auto& u : r) u.validate();
  return r;
}

}  // namespace

const std::vector<UseCaseKpis>& builtin_use_cases() {
  static const std::vector<UseCaseKpis> registry = make_registry();
  return registry;
}

const UseCaseKpis& use_case(UseCaseId id) {
  const auto& r = builtin_use_cases();
  return *std::find_if(r.begin(), r.end(), [id](const UseCaseKpis& u) { return u.id == id; });
}

}  // namespace isacreq
