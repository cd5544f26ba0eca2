#pragma once

// Scenario description and the feasibility engine: evaluates a scenario
// against a use case and derives a joint configuration for a set of them.

#include <optional>
#include <string>
#include <vector>

#include "isacreq/channel.hpp"
#include "isacreq/deployment.hpp"
#include "isacreq/kpis.hpp"
#include "isacreq/linkbudget.hpp"
#include "isacreq/locbounds.hpp"
#include "isacreq/report.hpp"

namespace isacreq {

enum class ArrayRole { kIn, kUe };

const char* to_string(ArrayRole r);
ArrayRole parse_array_role(std::string_view s);

struct SignalConfig {
  double bandwidth_hz = 2e9;          // aggregate
  double channel_bandwidth_hz = 0.0;  // 0: a single channel spans bandwidth_hz
  std::string waveform = "ofdm";
  bool coherent = true;
  std::vector<std::string> shaping{"freq", "time", "space"};
  Numerology numerology;
  double pilot_time_fraction = 0.01;  // share of each update period spent on pilots
  RateModel rate;
  double dwell_fraction = 0.01;       // share of each update period spent sensing
  double detection_threshold_db = kDefaultDetectionThresholdDb;
};

struct HardwareConfig {
  double carrier_hz = 140e9;
  bool channelized = false;
  bool phase_coherent = true;  // across channels, when channelized
  ArrayConfig in_array{16, 2, 0.0, 0.5};
  ArrayConfig ue_array{16, 2, 0.0, 0.5};
  double in_ptx_dbm = 10.0;  // per element
  double ue_ptx_dbm = 10.0;  // per element
  NoiseModel in_noise{5.0};
  NoiseModel ue_noise{10.0};
  double impl_loss_db = 20.0;
  double pathloss_exponent = 2.0;
  double reference_distance_m = 1.0;
  bool full_duplex = true;
  ArrayRole sensing_tx = ArrayRole::kIn;
  ArrayRole sensing_rx = ArrayRole::kUe;
};

struct DeploymentConfig {
  int dims = 3;
  Vec3 ue_position{0.0, 0.0, 1.5};
  std::vector<InfrastructureNode> nodes;
  std::vector<Obstacle> obstacles;
  Region region;
  MeasurementMix mix{{MeasurementType::kTDoA, MeasurementType::kAoA}, {}, {}, {}, {}};
  int dmimo_count = 1;  // INs jointly serving the user; each adds streams
  bool tx_rx_los = true;
  double rcs_m2 = 1.0;
  double bistatic_tx_distance_m = 0.0;  // 0: equal to the sensing max range
};

struct ModelOverrides {
  double alpha_range = kDefaultAlphaRange;
  double alpha_angle = kDefaultAlphaAngle;
  double latency_share = kPhyLatencyShareOfE2e;
  double link_distance_m = 0.0;         // 0: use-case link range
  double operating_distance_m = 0.0;    // 0: use-case link range
};

struct ScenarioConfig {
  SignalConfig signal;
  HardwareConfig hardware;
  DeploymentConfig deployment;
  ModelOverrides overrides;

  // Throws DomainError / ConfigError naming the offending field.
  void validate() const;

  // Bandwidth that sets one OFDM numerology.
  double channel_bandwidth() const;
  // Bandwidth usable for delay resolution: the aggregate, unless channels
  // are combined without phase coherence.
  double resolution_bandwidth() const;
};

struct FeasibilityReport {
  UseCaseId use_case = UseCaseId::kC1;
  bool overall = false;  // no check failed; warnings allowed
  std::vector<Check> checks;
  std::string limiting_constraint;  // smallest margin among non-warning checks
};

FeasibilityReport evaluate(const ScenarioConfig& s, const UseCaseKpis& uc);
FeasibilityReport evaluate(const ScenarioConfig& s, UseCaseId id);

// Bandwidth that satisfies the resolution route in the delay domain alone;
// 0 when the use case has no resolution route.
double resolution_route_bandwidth_hz(UseCaseId id);

// Uplink error model behind the localization checks: the UE transmits
// pilots for pilot_time_fraction of each update period, IN arrays receive.
BoundModel scenario_bound_model(const ScenarioConfig& s, double update_rate_hz);
Scene scenario_scene(const ScenarioConfig& s, std::optional<BoundModel> bounds);
// IN-to-UE link used by the rate and sensing-SNR heatmaps.
HeatmapLink scenario_heatmap_link(const ScenarioConfig& s);

struct Recommendation {
  ScenarioConfig scenario;
  std::vector<UseCaseId> use_cases;
  std::vector<FeasibilityReport> reports;
  std::vector<std::string> rationale;
  bool verified = false;  // every report passes
};

inline constexpr double kRecommendedChannelHz = 2e9;

Recommendation recommend(const std::vector<UseCaseId>& use_cases);

}  // namespace isacreq
