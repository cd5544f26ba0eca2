#pragma once

// Use-case identifiers and their KPI targets.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "isacreq/sensebounds.hpp"

namespace isacreq {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class UseCaseId { kC1, kC2, kL1, kL2, kL3, kS1, kS2 };
enum class UseCaseClass { kCommunication, kLocalization, kSensing };

inline constexpr UseCaseId kAllUseCases[] = {UseCaseId::kC1, UseCaseId::kC2, UseCaseId::kL1,
                                             UseCaseId::kL2, UseCaseId::kL3, UseCaseId::kS1,
                                             UseCaseId::kS2};

const char* to_string(UseCaseId id);
// Throws ConfigError for anything but C1, C2, L1, L2, L3, S1, S2.
UseCaseId parse_use_case_id(std::string_view s);
UseCaseClass class_of(UseCaseId id);

struct UseCaseKpis {
  UseCaseId id = UseCaseId::kC1;
  std::string title;
  std::optional<double> rate_bps;
  // Upper end of the end-to-end latency target; C1 also carries a lower end.
  std::optional<double> e2e_latency_s;
  std::optional<double> e2e_latency_min_s;
  double link_range_m = 0.0;
  // Location accuracy target (upper end for ranges such as 1-10 m).
  std::optional<double> loc_acc_m;
  std::optional<double> loc_acc_min_m;
  std::optional<double> orient_acc_deg;
  std::optional<double> update_rate_hz;
  std::optional<SensingKpis> sensing;

  void validate() const;
};

const std::vector<UseCaseKpis>& builtin_use_cases();
const UseCaseKpis& use_case(UseCaseId id);

}  // namespace isacreq
