#pragma once

// Command implementations shared by the CLI and the HTTP service, so both
// front ends emit byte-identical output for the same input.

#include <json.hpp>
#include <string>
#include <vector>

#include "isacreq/scenario.hpp"
#include "isacreq/usecases.hpp"

namespace isacreq {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInfeasible = 1;
inline constexpr int kExitError = 2;

// "all", or a comma-separated list of use-case ids.
std::vector<UseCaseId> parse_use_case_selection(std::string_view s);

// Finite numbers as JSON numbers; inf, -inf and nan as strings.
nlohmann::json number_json(double v);

nlohmann::json report_to_json(const FeasibilityReport& r);
// A single report for one use case, else {"reports": [...], "overall": ...}.
nlohmann::json evaluation_json(const std::vector<FeasibilityReport>& reports);
nlohmann::json use_cases_json();
// Two-space indented dump with a trailing newline.
std::string dump_json(const nlohmann::json& j);

std::vector<FeasibilityReport> evaluate_selection(const ScenarioConfig& s, const std::vector<UseCaseId>& ids);
std::string render_report_text(const std::vector<FeasibilityReport>& reports);

enum class SweepTarget { kRatePower, kRateBandwidth, kPebPower };

SweepTarget parse_sweep_target(std::string_view s);

struct SweepRequest {
  std::string param;  // dotted key, e.g. hardware.in_ptx_dbm
  double from = 0.0;
  double to = 0.0;
  int points = 11;
  bool log_spacing = false;
  SweepTarget target = SweepTarget::kRatePower;
  UseCaseId use_case = UseCaseId::kC2;
};

// Requirement per grid point. kRatePower: IN power per element reaching the
// use-case rate; kRateBandwidth: bandwidth reaching it; kPebPower: UE power
// per element reaching the location-accuracy KPI.
std::vector<SweepRow> run_sweep(const ScenarioConfig& base, const SweepRequest& req);
std::string sweep_csv(const SweepRequest& req, const std::vector<SweepRow>& rows);

// Returns a copy of s with one dotted key replaced.
ScenarioConfig with_parameter(const ScenarioConfig& s, const std::string& dotted_key, double value);

enum class Figure { kErrorVsDistance, kBandwidthVsPower };

Figure parse_figure(std::string_view s);
// fig2: error-vs-distance CSV on a log grid over [1, 200] m.
// fig3: required bandwidth per transmit power for both reference links.
std::string figure_csv(Figure f, const ScenarioConfig* scenario = nullptr);
std::vector<SweepRow> tradeoff_rows();

Heatmap scenario_heatmap(const ScenarioConfig& s, HeatmapMetric metric, UseCaseId bound_use_case);
nlohmann::json heatmap_json(const Heatmap& h);

nlohmann::json recommendation_json(const Recommendation& r);

}  // namespace isacreq
