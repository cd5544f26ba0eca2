#include "isacreq/commands.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

namespace isacreq {

std::vector<UseCaseId> parse_use_case_selection(std::string_view s) {
  if (s == "all") return {std::begin(kAllUseCases), std::end(kAllUseCases)};
  std::vector<UseCaseId> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const auto comma = s.find(',', pos);
    const auto item = s.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    const auto id = parse_use_case_id(item);
    if (std::find(out.begin(), out.end(), id) == out.end()) out.push_back(id);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

nlohmann::json number_json(double v) {
  if (std::isfinite(v)) return v;
  return format_number(v);
}

nlohmann::json report_to_json(const FeasibilityReport& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"name", c.name},
                      {"required", number_json(c.required)},
                      {"achieved", number_json(c.achieved)},
                      {"margin", number_json(c.margin)},
                      {"verdict", to_string(c.verdict)},
                      {"requirement_row", c.requirement_row},
                      {"note", c.note}});
  }
  return {{"use_case", to_string(r.use_case)},
          {"overall", r.overall ? "pass" : "fail"},
          {"checks", checks},
          {"limiting_constraint", r.limiting_constraint}};
}

nlohmann::json evaluation_json(const std::vector<FeasibilityReport>& reports) {
  if (reports.size() == 1) return report_to_json(reports.front());
  nlohmann::json arr = nlohmann::json::array();
  bool all = true;
  for (const auto& r : reports) {
    arr.push_back(report_to_json(r));
    all = all && r.overall;
  }
  return {{"overall", all ? "pass" : "fail"}, {"reports", arr}};
}

nlohmann::json use_cases_json() {
  nlohmann::json arr = nlohmann::json::array();
  auto opt = [](const std::optional<double>& v) -> nlohmann::json {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
  };
  for (const auto& u : builtin_use_cases()) {
    nlohmann::json j = {{"id", to_string(u.id)},
                        {"title", u.title},
                        {"rate_bps", opt(u.rate_bps)},
                        {"e2e_latency_s", opt(u.e2e_latency_s)},
                        {"link_range_m", u.link_range_m},
                        {"loc_acc_m", opt(u.loc_acc_m)},
                        {"orient_acc_deg", opt(u.orient_acc_deg)},
                        {"update_rate_hz", opt(u.update_rate_hz)}};
    if (u.sensing) {
      const auto& k = *u.sensing;
      j["sensing"] = {{"range_res_m", k.range_res_m},
                      {"range_acc_m", opt(k.range_acc_m)},
                      {"velocity_mps", k.velocity_mps},
                      {"ang_res_deg", k.ang_res_deg},
                      {"ang_acc_deg", opt(k.ang_acc_deg)},
                      {"max_range_m", k.max_range_m},
                      {"update_rate_hz", k.update_rate_hz},
                      {"mode", k.mode == SensingMode::kMonostatic ? "monostatic" : "bistatic"}};
    } else {
      j["sensing"] = nullptr;
    }
    arr.push_back(j);
  }
  return {{"use_cases", arr}};
}

std::string dump_json(const nlohmann::json& j) { return j.dump(2) + "\n"; }

std::vector<FeasibilityReport> evaluate_selection(const ScenarioConfig& s, const std::vector<UseCaseId>& ids) {
  std::vector<FeasibilityReport> out;
  out.reserve(ids.size());
  for (auto id : ids) out.push_back(evaluate(s, id));
  return out;
}

std::string render_report_text(const std::vector<FeasibilityReport>& reports) {
  std::ostringstream os;
  for (const auto& r : reports) {
    os << to_string(r.use_case) << ' ' << use_case(r.use_case).title << ": " << (r.overall ? "PASS" : "FAIL")
       << " (limiting: " << r.limiting_constraint << ")\n";
    for (const auto& c : r.checks) {
      os << "  " << std::left << std::setw(5) << to_string(c.verdict) << ' ' << std::setw(26) << c.name
         << " required " << std::setw(12) << format_number(c.required) << " achieved " << std::setw(12)
         << format_number(c.achieved) << " margin " << std::setw(10) << format_number(c.margin) << " ["
         << c.requirement_row << "]";
      if (!c.note.empty()) os << ' ' << c.note;
      os << '\n';
    }
  }
  return os.str();
}

SweepTarget parse_sweep_target(std::string_view s) {
  if (s == "rate" || s == "rate-power") return SweepTarget::kRatePower;
  if (s == "rate-bandwidth") return SweepTarget::kRateBandwidth;
  if (s == "peb") return SweepTarget::kPebPower;
  throw ConfigError("unknown sweep target '" + std::string(s) + "' (expected rate, rate-bandwidth or peb)");
}

ScenarioConfig with_parameter(const ScenarioConfig& s, const std::string& dotted_key, double value) {
  const auto dot = dotted_key.find('.');
  if (dot == std::string::npos) throw ConfigError("sweep parameter must be section.key, got '" + dotted_key + "'");
  const std::string section = dotted_key.substr(0, dot);
  const std::string key = dotted_key.substr(dot + 1);
  nlohmann::json j = scenario_to_json(s);
  if (!j.contains(section) || !j[section].is_object() || !j[section].contains(key)) {
    throw ConfigError("unknown sweep parameter '" + dotted_key + "'");
  }
  auto& slot = j[section][key];
  if (slot.is_number_integer()) {
    slot = static_cast<long>(std::llround(value));
  } else if (slot.is_number() || slot.is_string()) {
    slot = value;
  } else {
    throw ConfigError("sweep parameter '" + dotted_key + "' is not numeric");
  }
  return scenario_from_json(j);
}

namespace {

std::vector<double> grid(const SweepRequest& req) {
  if (req.points < 1) throw ConfigError("sweep needs at least one point");
  if (req.log_spacing && !(req.from > 0.0 && req.to > 0.0)) throw ConfigError("log sweep needs positive bounds");
  std::vector<double> g;
  for (int i = 0; i < req.points; ++i) {
    const double t = req.points == 1 ? 0.0 : static_cast<double>(i) / (req.points - 1);
    g.push_back(req.log_spacing ? req.from * std::pow(req.to / req.from, t) : req.from + t * (req.to - req.from));
  }
  return g;
}

LinkParams scenario_downlink(const ScenarioConfig& s, const UseCaseKpis& uc) {
  LinkParams l;
  l.ptx_per_element = PowerDbm{s.hardware.in_ptx_dbm};
  l.tx = s.hardware.in_array;
  l.rx = s.hardware.ue_array;
  l.pathloss = {s.hardware.reference_distance_m, s.hardware.pathloss_exponent, s.hardware.carrier_hz};
  l.distance_m = s.overrides.link_distance_m > 0.0 ? s.overrides.link_distance_m : uc.link_range_m;
  l.noise = s.hardware.ue_noise;
  l.bandwidth_hz = s.signal.bandwidth_hz;
  l.impl_loss_db = s.hardware.impl_loss_db;
  return l;
}

}  // namespace

std::vector<SweepRow> run_sweep(const ScenarioConfig& base, const SweepRequest& req) {
  const auto& uc = use_case(req.use_case);
  if (req.target == SweepTarget::kPebPower ? !uc.loc_acc_m : !uc.rate_bps) {
    throw ConfigError(std::string("use case ") + to_string(req.use_case) + " has no KPI for this sweep target");
  }
  std::vector<SweepRow> rows;
  for (double v : grid(req)) {
    const ScenarioConfig s = with_parameter(base, req.param, v);
    SweepRow row;
    row.param = req.param;
    row.value = v;
    if (req.target == SweepTarget::kPebPower) {
      const double rate = uc.update_rate_hz.value_or(1.0);
      const auto g = gdop(s.deployment.ue_position, scenario_scene(s, scenario_bound_model(s, rate)));
      row.feasible = g.observable;
      row.required = g.observable ? s.hardware.ue_ptx_dbm + 20.0 * std::log10(g.peb_m / *uc.loc_acc_m)
                                  : std::numeric_limits<double>::infinity();
    } else {
      const LinkParams link = scenario_downlink(s, uc);
      RateModel m = s.signal.rate;
      m.streams *= s.deployment.dmimo_count;
      if (req.target == SweepTarget::kRatePower) {
        const auto p = required_power_per_element(*uc.rate_bps, link, m);
        row.feasible = p.feasible;
        row.required = p.feasible ? p.power.value : std::numeric_limits<double>::infinity();
      } else {
        const auto b = required_bandwidth(*uc.rate_bps, link, m);
        row.feasible = b.feasible;
        row.required = b.feasible ? b.bandwidth_hz : std::numeric_limits<double>::infinity();
      }
    }
    rows.push_back(row);
  }
  return rows;
}

std::string sweep_csv(const SweepRequest& req, const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  write_sweep_csv(os, req.target == SweepTarget::kRateBandwidth ? SweepQuantity::kRequiredBandwidthHz
                                                                : SweepQuantity::kRequiredPowerDbm,
                  rows);
  return os.str();
}

Figure parse_figure(std::string_view s) {
  if (s == "fig2") return Figure::kErrorVsDistance;
  if (s == "fig3") return Figure::kBandwidthVsPower;
  throw ConfigError("unknown figure '" + std::string(s) + "' (expected fig2 or fig3)");
}

std::vector<SweepRow> tradeoff_rows() {
  struct Curve {
    const char* label;
    double rate_bps;
    double distance_m;
  };
  const Curve curves[] = {{"C2_100m", 10e9, 100.0}, {"C1_10m", 100e9, 10.0}};
  std::vector<SweepRow> rows;
  for (const auto& c : curves) {
    for (int p = -10; p <= 20; ++p) {
      LinkParams link = tradeoff_link(c.distance_m);
      link.ptx_per_element = PowerDbm{static_cast<double>(p)};
      const auto b = required_bandwidth(c.rate_bps, link, tradeoff_rate_model());
      rows.push_back({c.label, static_cast<double>(p),
                      b.feasible ? b.bandwidth_hz : std::numeric_limits<double>::infinity(), b.feasible});
    }
  }
  return rows;
}

std::string figure_csv(Figure f, const ScenarioConfig* scenario) {
  std::ostringstream os;
  if (f == Figure::kBandwidthVsPower) {
    write_sweep_csv(os, SweepQuantity::kRequiredBandwidthHz, tradeoff_rows());
    return os.str();
  }
  CurveScenario cs = uplink_tradeoff_scenario();
  if (scenario) {
    const auto& s = *scenario;
    cs.carrier_hz = s.hardware.carrier_hz;
    cs.bandwidth_hz = s.signal.bandwidth_hz;
    cs.ptx = PowerDbm{s.hardware.ue_ptx_dbm};
    cs.bs_elements = s.hardware.in_array.elements_per_dim;
    cs.bs_noise_figure_db = s.hardware.in_noise.noise_figure_db;
    cs.impl_loss_db = s.hardware.impl_loss_db;
    cs.pathloss_exponent = s.hardware.pathloss_exponent;
    cs.alpha_range = s.overrides.alpha_range;
    cs.alpha_angle = s.overrides.alpha_angle;
    cs.rate = s.signal.rate;
  }
  std::vector<double> d;
  for (int i = 0; i <= 60; ++i) d.push_back(std::pow(200.0, i / 60.0));
  write_curve_csv(os, error_vs_distance_curve(cs, d));
  return os.str();
}

Heatmap scenario_heatmap(const ScenarioConfig& s, HeatmapMetric metric, UseCaseId bound_use_case) {
  const double rate = use_case(bound_use_case).update_rate_hz.value_or(1.0);
  return coverage_heatmap(s.deployment.region, scenario_scene(s, scenario_bound_model(s, rate)), metric,
                          scenario_heatmap_link(s));
}

nlohmann::json heatmap_json(const Heatmap& h) {
  nlohmann::json xs = nlohmann::json::array(), ys = nlohmann::json::array(), vs = nlohmann::json::array();
  for (int i = 0; i < h.region.nx(); ++i) xs.push_back(h.region.cell_x(i));
  for (int j = 0; j < h.region.ny(); ++j) ys.push_back(h.region.cell_y(j));
  for (double v : h.values) vs.push_back(number_json(v));
  return {{"metric", to_string(h.metric)}, {"nx", h.region.nx()}, {"ny", h.region.ny()},
          {"x_m", xs},                    {"y_m", ys},            {"values", vs}};
}

nlohmann::json recommendation_json(const Recommendation& r) {
  nlohmann::json ids = nlohmann::json::array();
  for (auto id : r.use_cases) ids.push_back(to_string(id));
  return {{"use_cases", ids},
          {"verified", r.verified},
          {"aggregate_bandwidth_hz", r.scenario.signal.bandwidth_hz},
          {"scenario", scenario_to_json(r.scenario)},
          {"rationale", r.rationale},
          {"evaluation", evaluation_json(r.reports)}};
}

}  // namespace isacreq
