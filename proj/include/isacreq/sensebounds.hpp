#pragma once

// Radar-style resolution formulas and the sensing part of a feasibility
// report.

#include <optional>
#include <vector>

#include "isacreq/channel.hpp"
#include "isacreq/report.hpp"

namespace isacreq {

enum class SensingMode { kMonostatic, kBistatic };

struct SensingKpis {
  double range_res_m = 0.1;
  std::optional<double> range_acc_m;
  double velocity_mps = 0.04;  // resolution, or accuracy when only that is specified
  double ang_res_deg = 3.0;
  std::optional<double> ang_acc_deg;
  double max_range_m = 50.0;
  double update_rate_hz = 25.0;
  SensingMode mode = SensingMode::kMonostatic;
};

Distance range_resolution(Bandwidth b);

struct AngularResolution {
  bool resolvable = false;  // false for fewer than two elements per dimension
  double deg = 0.0;
};

// Half-power beamwidth 0.886 / (N * spacing) rad; 101.5/N degrees at half
// wavelength spacing.
AngularResolution angular_resolution_deg(const ArrayConfig& a);

double velocity_resolution(Distance lambda, Duration t_obs);

// Carrier used to decide whether a velocity/update-rate KPI pair is
// self-contradictory: if even this carrier cannot resolve the velocity
// within one update period, the KPI pair itself is in tension.
inline constexpr double kHighestMmWaveCarrierHz = 300e9;

inline constexpr double kDefaultDetectionThresholdDb = 10.0;

struct SensingScenario {
  double bandwidth_hz = 2e9;  // may be 0: the resolution check then fails
  double carrier_hz = 140e9;
  ArrayConfig tx{16, 2, 0.0, 0.5};
  ArrayConfig rx{35, 2, 0.0, 0.5};
  PowerDbm ptx_per_element{10.0};
  NoiseModel noise{5.0};
  double impl_loss_db = 20.0;
  double rcs_m2 = 1.0;
  double detection_threshold_db = kDefaultDetectionThresholdDb;
  // Share of each update period spent on coherent sensing integration.
  double dwell_fraction = 0.01;
  // Transmitter-to-target distance in bistatic mode; 0 means max_range.
  double bistatic_tx_distance_m = 0.0;
};

// Integrated SNR at max range: the per-sample radar budget plus coherent
// gain over B * dwell_fraction / update_rate samples.
double integrated_sensing_snr_db(const SensingKpis& k, const SensingScenario& s);

// Accuracy proxy: resolution / sqrt(2 SNR).
double accuracy_from_resolution(double resolution, double snr_linear);

std::vector<Check> sensing_feasibility(const SensingKpis& k, const SensingScenario& s);

}  // namespace isacreq
