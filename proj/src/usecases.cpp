#include "isacreq/usecases.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "isacreq/sensebounds.hpp"

namespace isacreq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double v, int precision = 4) {
  std::ostringstream os;
  os.precision(precision);
  os << v;
  return os.str();
}

// Failing check whose quantity could not be computed at all.
Check unavailable(std::string name, double required, std::string row, std::string note) {
  Check c = flag(std::move(name), false, std::move(row), std::move(note));
  c.required = required;
  c.achieved = kInf;
  return c;
}

Check exempt(std::string name, std::string row, std::string note) {
  return flag(std::move(name), true, std::move(row), std::move(note));
}

Check from_budget(std::string name, const BudgetVerdict& v, std::string row) {
  if (v.exempt) return exempt(std::move(name), std::move(row), v.note);
  return at_most(std::move(name), v.budget, v.achieved, std::move(row));
}

Check advisory(std::string name, bool satisfied, std::string row, std::string note) {
  Check c = flag(std::move(name), satisfied, std::move(row), std::move(note));
  if (!satisfied) c.verdict = Verdict::kWarn;
  return c;
}

bool requires_coherence(UseCaseId id) {
  return id == UseCaseId::kL1 || id == UseCaseId::kL2 || id == UseCaseId::kS1 ||
         id == UseCaseId::kS2;
}

bool is_ofdm(const std::string& w) { return w == "ofdm" || w == "dfts-ofdm"; }

const ArrayConfig& role_array(const ScenarioConfig& s, ArrayRole r) {
  return r == ArrayRole::kIn ? s.hardware.in_array : s.hardware.ue_array;
}

double dbm_watts(double dbm) { return PowerDbm{dbm}.watts(); }

double link_distance(const ScenarioConfig& s, const UseCaseKpis& uc) {
  return s.overrides.link_distance_m > 0.0 ? s.overrides.link_distance_m : uc.link_range_m;
}

double operating_distance(const ScenarioConfig& s, const UseCaseKpis& uc) {
  return s.overrides.operating_distance_m > 0.0 ? s.overrides.operating_distance_m : uc.link_range_m;
}

PathlossModel pathloss_model(const ScenarioConfig& s) {
  return {s.hardware.reference_distance_m, s.hardware.pathloss_exponent, s.hardware.carrier_hz};
}

// Downlink from the IN array to the UE array at the use-case distance.
LinkParams downlink(const ScenarioConfig& s, double distance_m) {
  LinkParams l;
  l.ptx_per_element = PowerDbm{s.hardware.in_ptx_dbm};
  l.tx = s.hardware.in_array;
  l.rx = s.hardware.ue_array;
  l.pathloss = pathloss_model(s);
  l.distance_m = distance_m;
  l.noise = s.hardware.ue_noise;
  l.bandwidth_hz = s.signal.bandwidth_hz;
  l.impl_loss_db = s.hardware.impl_loss_db;
  return l;
}

RateModel effective_rate_model(const ScenarioConfig& s) {
  RateModel m = s.signal.rate;
  m.streams *= s.deployment.dmimo_count;
  return m;
}

double pilot_symbol_count(const ScenarioConfig& s, double update_rate_hz) {
  const double sym = ofdm_symbol_duration_s(Bandwidth(s.channel_bandwidth()), s.signal.numerology);
  return pilot_symbols(s.signal.pilot_time_fraction / update_rate_hz, sym);
}

}  // namespace

BoundModel scenario_bound_model(const ScenarioConfig& s, double update_rate_hz) {
  BoundModel b;
  b.bandwidth_hz = s.resolution_bandwidth();
  b.wavelength_m = wavelength(Frequency(s.hardware.carrier_hz)).m();
  b.n0_w_per_hz = s.hardware.in_noise.density_w_per_hz();
  b.symbols = pilot_symbol_count(s, update_rate_hz);
  b.ptx_w = dbm_watts(s.hardware.ue_ptx_dbm) * s.hardware.ue_array.total_elements();
  b.alpha_range = s.overrides.alpha_range;
  b.alpha_angle = s.overrides.alpha_angle;
  return b;
}

Scene scenario_scene(const ScenarioConfig& s, std::optional<BoundModel> bounds) {
  Scene scene;
  scene.dims = s.deployment.dims;
  scene.nodes = s.deployment.nodes;
  scene.obstacles = s.deployment.obstacles;
  scene.mix = s.deployment.mix;
  scene.bounds = std::move(bounds);
  return scene;
}

HeatmapLink scenario_heatmap_link(const ScenarioConfig& s) {
  HeatmapLink h;
  h.link = downlink(s, 1.0);
  h.rate = effective_rate_model(s);
  h.rcs_m2 = s.deployment.rcs_m2;
  return h;
}

namespace {

struct VisibleCounts {
  int bs = 0;
  int ris = 0;
  std::optional<double> nearest_bs_m;
};

VisibleCounts count_visible(const ScenarioConfig& s) {
  VisibleCounts c;
  const auto& d = s.deployment;
  for (std::size_t i : visible_nodes(d.ue_position, d.nodes, d.obstacles)) {
    if (d.nodes[i].kind == NodeKind::kBs) {
      ++c.bs;
      const double dist = (d.nodes[i].position - d.ue_position).norm();
      if (!c.nearest_bs_m || dist < *c.nearest_bs_m) c.nearest_bs_m = dist;
    } else {
      ++c.ris;
    }
  }
  return c;
}

Check channelization_check(const ScenarioConfig& s, UseCaseId id) {
  const bool split = s.hardware.channelized && !s.hardware.phase_coherent;
  if (!split) return flag("channelization", true, "Channelization");
  Check c = flag("channelization", false, "Channelization",
                 "channels combined without phase coherence");
  if (!requires_coherence(id)) c.verdict = Verdict::kWarn;
  return c;
}

Check latency_check(const ScenarioConfig& s, const UseCaseKpis& uc) {
  const double budget = s.overrides.latency_share * *uc.e2e_latency_s;
  const double lat = phy_latency(Bandwidth(s.channel_bandwidth()), s.signal.numerology).s();
  Check c = at_most("latency", budget, lat, "KPI: E2E latency");
  c.note = "bidirectional PHY latency vs " + fmt(s.overrides.latency_share) + " x E2E budget";
  return c;
}

void communication_checks(const ScenarioConfig& s, const UseCaseKpis& uc, std::vector<Check>& out) {
  const auto& d = s.deployment;
  const VisibleCounts vis = count_visible(s);
  Check c = at_least("placement", d.dmimo_count, vis.bs, "Placement around each device");
  c.note = std::to_string(vis.bs) + " IN(s) in LoS";
  out.push_back(c);

  const LinkParams link = downlink(s, link_distance(s, uc));
  const RateModel model = effective_rate_model(s);
  const double rate = achievable_rate_bps(link_snr_db(link), Bandwidth(link.bandwidth_hz), model);
  Check rc = at_least("rate", *uc.rate_bps, rate, "Bandwidth");
  const auto bw = required_bandwidth(*uc.rate_bps, link, model);
  const auto pw = required_power_per_element(*uc.rate_bps, link, model);
  rc.note = "medium transmit power; needs " +
            (bw.feasible ? fmt(bw.bandwidth_hz / 1e9) + " GHz at configured power" : "no bandwidth") +
            ", " + (pw.feasible ? fmt(pw.power.value) + " dBm/element at configured bandwidth" : "no power");
  out.push_back(rc);

  out.push_back(latency_check(s, uc));

  SyncContext ctx;
  ctx.dmimo = d.dmimo_count > 1;
  out.push_back(from_budget("synchronization", sync_budget_check(uc.id, d.nodes, ctx), "Synchronization"));
  out.push_back(exempt("in_position_knowledge", "IN knowledge", "area-level"));
}

Check resolution_route_check(const ScenarioConfig& s, UseCaseId id) {
  const double b = s.resolution_bandwidth();
  if (id == UseCaseId::kL1) {
    const double delay = b / resolution_route_bandwidth_hz(id) - 1.0;
    const double angular =
        std::min(b / 0.5e9 - 1.0, static_cast<double>(s.hardware.in_array.elements_per_dim) / 50.0 - 1.0);
    Check c;
    c.name = "resolution_route";
    c.requirement_row = "Bandwidth";
    c.margin = std::max(delay, angular);
    c.verdict = c.margin >= 0.0 ? Verdict::kPass : Verdict::kFail;
    if (delay >= 0.0) {
      c.required = 2e9;
      c.achieved = b;
      c.note = "(a) delay domain: bandwidth >= 2 GHz";
    } else if (angular >= 0.0) {
      c.required = 0.5e9;
      c.achieved = b;
      c.note = "(b) angular domain: bandwidth >= 500 MHz with >= 50 IN elements per dim.";
    } else {
      c.required = 2e9;
      c.achieved = b;
      c.note = "neither (a) bandwidth >= 2 GHz nor (b) >= 500 MHz with >= 50 IN elements per dim.";
    }
    return c;
  }
  Check c = at_least("resolution_route", resolution_route_bandwidth_hz(id), b, "Bandwidth");
  c.note = "delay domain";
  return c;
}

void localization_checks(const ScenarioConfig& s, const UseCaseKpis& uc, std::vector<Check>& out) {
  const auto& d = s.deployment;
  const VisibleCounts vis = count_visible(s);

  const AnchorVerdict anchors = min_anchor_check(d.mix, d.dims, vis.bs, vis.ris);
  Check ac = flag("anchors", anchors.pass, "Placement around each device",
                  std::to_string(vis.bs) + " BS + " + std::to_string(vis.ris) + " RIS in LoS, " +
                      std::to_string(anchors.required) + " needed");
  ac.required = anchors.required;
  ac.achieved = vis.bs + vis.ris;
  out.push_back(ac);

  const Scene scene = scenario_scene(s, scenario_bound_model(s, *uc.update_rate_hz));
  const GdopResult g = gdop(d.ue_position, scene);
  const char* power_word = uc.id == UseCaseId::kL1   ? "low"
                           : uc.id == UseCaseId::kL2 ? "higher (small T)"
                                                     : "higher (large d)";
  if (!g.observable) {
    out.push_back(unavailable("peb", *uc.loc_acc_m, "Transmit power",
                              "unobservable geometry (FIM rank " + std::to_string(g.rank) + ")"));
  } else {
    Check c = at_most("peb", *uc.loc_acc_m, g.peb_m, "Transmit power");
    const double ratio = g.peb_m / *uc.loc_acc_m;
    c.note = std::string(power_word) + " transmit power; UE needs " +
             fmt(s.hardware.ue_ptx_dbm + 20.0 * std::log10(ratio)) + " dBm/element";
    // The UE array is qualitative for L3: it only adds SNR, never a check.
    if (uc.id == UseCaseId::kL3) c.note += "; UE array: SNR boost only";
    out.push_back(c);
  }

  if (uc.orient_acc_deg) {
    if (!vis.nearest_bs_m) {
      out.push_back(unavailable("ue_orientation", *uc.orient_acc_deg, "UE array size (per dim.)",
                                "no IN in LoS"));
    } else if (s.hardware.ue_array.elements_per_dim < 2) {
      out.push_back(unavailable("ue_orientation", *uc.orient_acc_deg, "UE array size (per dim.)",
                                "UE array has no angular aperture"));
    } else {
      SpebParams p;
      p.symbols = pilot_symbol_count(s, *uc.update_rate_hz);
      p.bandwidth_hz = s.resolution_bandwidth();
      p.n0_w_per_hz = s.hardware.ue_noise.density_w_per_hz();
      p.distance_m = std::max(*vis.nearest_bs_m, 1e-3);
      p.wavelength_m = wavelength(Frequency(s.hardware.carrier_hz)).m();
      p.n_rx = s.hardware.ue_array.total_elements();
      p.n_aperture = s.hardware.ue_array.elements_per_dim;
      p.alpha_range = s.overrides.alpha_range;
      p.alpha_angle = s.overrides.alpha_angle;
      p.ptx_w = dbm_watts(s.hardware.in_ptx_dbm) * s.hardware.in_array.total_elements();
      const double err_deg = rad_to_deg(speb(p).angle_err_rad);
      Check c = at_most("ue_orientation", *uc.orient_acc_deg, err_deg, "UE array size (per dim.)");
      c.note = "downlink angle bound at the nearest IN";
      out.push_back(c);
    }
  }

  if (resolution_route_bandwidth_hz(uc.id) > 0.0) out.push_back(resolution_route_check(s, uc.id));
  if (uc.e2e_latency_s) out.push_back(latency_check(s, uc));

  SyncContext ctx;
  ctx.uses_tdoa = d.mix.has(MeasurementType::kTDoA);
  out.push_back(from_budget("synchronization", sync_budget_check(uc.id, d.nodes, ctx), "Synchronization"));

  const KnowledgeVerdict k = in_knowledge_check(uc.id, d.nodes, operating_distance(s, uc));
  out.push_back(from_budget("in_position_knowledge", k.position, "IN knowledge"));
  if (d.mix.has(MeasurementType::kAoA)) {
    out.push_back(from_budget("in_orientation_knowledge", k.orientation, "IN knowledge"));
  } else {
    out.push_back(exempt("in_orientation_knowledge", "IN knowledge", "N/A (no AoA)"));
  }

  if (requires_coherence(uc.id)) {
    out.push_back(flag("coherence", s.signal.coherent, "Modulation", "coherent modulation required"));
    out.push_back(advisory("waveform", is_ofdm(s.signal.waveform), "Waveform", "(DFTS-)OFDM preferred"));
  }
  out.push_back(channelization_check(s, uc.id));
}

void sensing_checks(const ScenarioConfig& s, const UseCaseKpis& uc, std::vector<Check>& out) {
  const auto& k = *uc.sensing;
  const auto& d = s.deployment;
  SensingScenario ss;
  ss.bandwidth_hz = s.resolution_bandwidth();
  ss.carrier_hz = s.hardware.carrier_hz;
  ss.tx = role_array(s, s.hardware.sensing_tx);
  ss.rx = role_array(s, s.hardware.sensing_rx);
  ss.ptx_per_element = PowerDbm{s.hardware.sensing_tx == ArrayRole::kIn ? s.hardware.in_ptx_dbm
                                                                         : s.hardware.ue_ptx_dbm};
  ss.noise = s.hardware.sensing_rx == ArrayRole::kIn ? s.hardware.in_noise : s.hardware.ue_noise;
  ss.impl_loss_db = s.hardware.impl_loss_db;
  ss.rcs_m2 = d.rcs_m2;
  ss.detection_threshold_db = s.signal.detection_threshold_db;
  ss.dwell_fraction = s.signal.dwell_fraction;
  ss.bistatic_tx_distance_m = d.bistatic_tx_distance_m;
  for (auto& c : sensing_feasibility(k, ss)) out.push_back(std::move(c));

  if (k.mode == SensingMode::kMonostatic) {
    out.push_back(flag("full_duplex", s.hardware.full_duplex, "Hardware Arch.",
                       "monostatic operation needs TX/RX isolation"));
  } else {
    const VisibleCounts vis = count_visible(s);
    Check c = at_least("placement", 1.0, vis.bs, "Placement around each device");
    c.note = std::to_string(vis.bs) + " RX IN(s) in LoS";
    out.push_back(c);
    SyncContext ctx;
    ctx.tx_rx_los = d.tx_rx_los;
    out.push_back(from_budget("synchronization", sync_budget_check(uc.id, d.nodes, ctx), "Synchronization"));
    const KnowledgeVerdict kv = in_knowledge_check(uc.id, d.nodes, operating_distance(s, uc));
    out.push_back(from_budget("in_position_knowledge", kv.position, "IN knowledge"));
    if (d.mix.has(MeasurementType::kAoA)) {
      out.push_back(from_budget("in_orientation_knowledge", kv.orientation, "IN knowledge"));
    }
  }

  out.push_back(flag("coherence", s.signal.coherent, "Modulation", "coherent modulation required"));
  out.push_back(advisory("waveform", is_ofdm(s.signal.waveform), "Waveform", "(DFTS-)OFDM preferred"));
  out.push_back(channelization_check(s, uc.id));
}

}  // namespace

const char* to_string(ArrayRole r) { return r == ArrayRole::kIn ? "in" : "ue"; }

ArrayRole parse_array_role(std::string_view s) {
  if (s == "in") return ArrayRole::kIn;
  if (s == "ue") return ArrayRole::kUe;
  throw ConfigError("unknown array role '" + std::string(s) + "' (expected in or ue)");
}

void ScenarioConfig::validate() const {
  Bandwidth(signal.bandwidth_hz);
  if (signal.channel_bandwidth_hz < 0.0 || signal.channel_bandwidth_hz > signal.bandwidth_hz) {
    throw DomainError("channel bandwidth must lie in [0, bandwidth]");
  }
  signal.numerology.validate();
  signal.rate.validate();
  if (!(signal.pilot_time_fraction > 0.0 && signal.pilot_time_fraction <= 1.0)) {
    throw DomainError("pilot time fraction must lie in (0, 1]");
  }
  if (!(signal.dwell_fraction > 0.0 && signal.dwell_fraction <= 1.0)) {
    throw DomainError("dwell fraction must lie in (0, 1]");
  }
  if (!std::isfinite(signal.detection_threshold_db)) throw DomainError("detection threshold must be finite");

  Frequency(hardware.carrier_hz);
  hardware.in_array.validate();
  hardware.ue_array.validate();
  if (!std::isfinite(hardware.in_ptx_dbm) || !std::isfinite(hardware.ue_ptx_dbm)) {
    throw DomainError("transmit power must be finite");
  }
  hardware.in_noise.validate();
  hardware.ue_noise.validate();
  if (!(hardware.impl_loss_db >= 0.0)) throw DomainError("implementation loss must be >= 0");
  pathloss_model(*this).validate();

  const auto& d = deployment;
  if (d.dims != 2 && d.dims != 3) throw DomainError("deployment dims must be 2 or 3");
  for (const auto& n : d.nodes) n.validate();
  for (const auto& o : d.obstacles) o.validate();
  d.region.validate();
  d.mix.validate();
  if (d.dmimo_count < 1) throw DomainError("D-MIMO count must be >= 1");
  if (!(d.rcs_m2 > 0.0)) throw DomainError("radar cross-section must be > 0");
  if (!(d.bistatic_tx_distance_m >= 0.0)) throw DomainError("bistatic TX distance must be >= 0");

  const auto& o = overrides;
  if (!(o.alpha_range > 0.0 && o.alpha_angle > 0.0)) throw DomainError("alpha constants must be > 0");
  if (!(o.latency_share > 0.0 && o.latency_share <= 1.0)) throw DomainError("latency share must lie in (0, 1]");
  if (!(o.link_distance_m >= 0.0 && o.operating_distance_m >= 0.0)) {
    throw DomainError("distance overrides must be >= 0");
  }
}

double ScenarioConfig::channel_bandwidth() const {
  return hardware.channelized && signal.channel_bandwidth_hz > 0.0 ? signal.channel_bandwidth_hz
                                                                   : signal.bandwidth_hz;
}

double ScenarioConfig::resolution_bandwidth() const {
  return hardware.channelized && !hardware.phase_coherent ? channel_bandwidth() : signal.bandwidth_hz;
}

double resolution_route_bandwidth_hz(UseCaseId id) {
  switch (id) {
    case UseCaseId::kL1: return 2e9;
    case UseCaseId::kL2: return 0.4e9;
    default: return 0.0;
  }
}

FeasibilityReport evaluate(const ScenarioConfig& s, const UseCaseKpis& uc) {
  s.validate();
  uc.validate();
  FeasibilityReport r;
  r.use_case = uc.id;
  switch (class_of(uc.id)) {
    case UseCaseClass::kCommunication: communication_checks(s, uc, r.checks); break;
    case UseCaseClass::kLocalization: localization_checks(s, uc, r.checks); break;
    case UseCaseClass::kSensing: sensing_checks(s, uc, r.checks); break;
  }
  r.overall = std::none_of(r.checks.begin(), r.checks.end(),
                           [](const Check& c) { return c.verdict == Verdict::kFail; });
  const Check* limiting = nullptr;
  for (const auto& c : r.checks) {
    if (c.verdict == Verdict::kWarn) continue;
    if (!limiting || c.margin < limiting->margin) limiting = &c;
  }
  if (limiting) r.limiting_constraint = limiting->name;
  return r;
}

FeasibilityReport evaluate(const ScenarioConfig& s, UseCaseId id) { return evaluate(s, use_case(id)); }

namespace {

// Smallest half-wavelength array meeting an angular-resolution target.
int elements_for_resolution(double deg) {
  int n = static_cast<int>(std::ceil(rad_to_deg(0.886 / 0.5) / deg));
  while (angular_resolution_deg({n, 2, 0.0, 0.5}).deg > deg) ++n;
  return n;
}

}  // namespace

Recommendation recommend(const std::vector<UseCaseId>& use_cases) {
  if (use_cases.empty()) throw ConfigError("recommend needs at least one use case");
  Recommendation rec;
  rec.use_cases = use_cases;
  ScenarioConfig& s = rec.scenario;
  s.signal.waveform = "ofdm";
  s.signal.coherent = true;
  s.signal.rate.streams = 4;
  s.hardware.carrier_hz = 140e9;
  s.hardware.in_array = {16, 2, 0.0, 0.5};
  s.hardware.ue_array = {16, 2, 0.0, 0.5};
  s.hardware.channelized = true;
  s.hardware.phase_coherent = true;
  s.signal.channel_bandwidth_hz = kRecommendedChannelHz;

  double need_bw = 0.0;
  int ue_per_dim = s.hardware.ue_array.elements_per_dim;
  double sync = kInf, pos = kInf, orient = kInf;
  for (UseCaseId id : use_cases) {
    const auto& uc = use_case(id);
    if (uc.rate_bps) {
      ScenarioConfig probe = s;
      const auto bw = required_bandwidth(*uc.rate_bps, downlink(probe, uc.link_range_m), effective_rate_model(probe));
      if (bw.feasible) {
        need_bw = std::max(need_bw, bw.bandwidth_hz);
        rec.rationale.push_back(std::string(to_string(id)) + ": rate needs " + fmt(bw.bandwidth_hz / 1e9) +
                                " GHz with " + std::to_string(probe.signal.rate.streams) + " streams");
      } else {
        rec.rationale.push_back(std::string(to_string(id)) + ": rate unreachable: " + bw.reason);
      }
    }
    need_bw = std::max(need_bw, resolution_route_bandwidth_hz(id));
    if (uc.sensing) {
      need_bw = std::max(need_bw, kSpeedOfLight / (2.0 * uc.sensing->range_res_m));
      ue_per_dim = std::max(ue_per_dim, elements_for_resolution(uc.sensing->ang_res_deg));
    }
    SyncContext ctx;
    if (auto b = sync_budget_s(id, ctx)) sync = std::min(sync, *b);
    if (auto b = node_position_budget_m(id)) pos = std::min(pos, *b);
    if (class_of(id) != UseCaseClass::kCommunication && id != UseCaseId::kS1 && uc.loc_acc_m) {
      orient = std::min(orient, *uc.loc_acc_m / uc.link_range_m);
    }
  }

  const int channels = std::max(1, static_cast<int>(std::ceil(need_bw / kRecommendedChannelHz - 1e-9)));
  s.signal.bandwidth_hz = channels * kRecommendedChannelHz;
  s.hardware.ue_array.elements_per_dim = ue_per_dim;
  rec.rationale.push_back("aggregate bandwidth " + std::to_string(channels) + " x 2 GHz phase-coherent channels at 140 GHz");
  rec.rationale.push_back("IN arrays 16 per dim., UE arrays " + std::to_string(ue_per_dim) + " per dim.");

  InfrastructureNode proto;
  proto.array = s.hardware.in_array;
  proto.sync_error_s = std::isfinite(sync) ? 0.5 * sync : 1e-9;
  proto.position_error_m = std::isfinite(pos) ? 0.5 * pos : 1.0;
  proto.orientation_error_rad = std::isfinite(orient) ? 0.5 * orient : deg_to_rad(1.0);
  const double corners[4][3] = {{7.0, 7.0, 3.0}, {-7.0, 7.0, 6.0}, {-7.0, -7.0, 4.5}, {7.0, -7.0, 8.0}};
  for (const auto& c : corners) {
    InfrastructureNode n = proto;
    n.position = Vec3(c[0], c[1], c[2]);
    s.deployment.nodes.push_back(n);
  }
  rec.rationale.push_back("4 INs in LoS around the UE (TDoA + AoA), sync " + fmt(proto.sync_error_s * 1e12) +
                          " ps, position knowledge " + fmt(proto.position_error_m * 1e3) +
                          " mm, orientation knowledge " + fmt(rad_to_deg(proto.orientation_error_rad)) + " deg");

  for (double ptx = 10.0; ptx <= 30.0; ptx += 3.0) {
    s.hardware.in_ptx_dbm = ptx;
    s.hardware.ue_ptx_dbm = ptx;
    rec.reports.clear();
    for (UseCaseId id : use_cases) rec.reports.push_back(evaluate(s, id));
    rec.verified = std::all_of(rec.reports.begin(), rec.reports.end(),
                               [](const FeasibilityReport& r) { return r.overall; });
    if (rec.verified) break;
  }
  rec.rationale.push_back("transmit power " + fmt(s.hardware.in_ptx_dbm) + " dBm per element");
  if (!rec.verified) {
    for (const auto& r : rec.reports) {
      if (!r.overall) {
        rec.rationale.push_back(std::string("conflict: ") + to_string(r.use_case) + " still fails " +
                                r.limiting_constraint);
      }
    }
  }
  return rec;
}

}  // namespace isacreq
