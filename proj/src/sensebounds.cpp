#include "isacreq/sensebounds.hpp"

#include <cmath>
#include <limits>

namespace isacreq {

Distance range_resolution(Bandwidth b) { return Distance(kSpeedOfLight / (2.0 * b.hz())); }

AngularResolution angular_resolution_deg(const ArrayConfig& a) {
  a.validate();
  if (a.elements_per_dim < 2) return {false, std::numeric_limits<double>::infinity()};
  return {true, rad_to_deg(0.886 / (a.elements_per_dim * a.spacing_wl))};
}

double velocity_resolution(Distance lambda, Duration t_obs) { return lambda.m() / (2.0 * t_obs.s()); }

double accuracy_from_resolution(double resolution, double snr_linear) {
  if (!(snr_linear > 0.0)) return std::numeric_limits<double>::infinity();
  return resolution / std::sqrt(2.0 * snr_linear);
}

double integrated_sensing_snr_db(const SensingKpis& k, const SensingScenario& s) {
  if (!(s.bandwidth_hz > 0.0)) return -std::numeric_limits<double>::infinity();
  RadarParams rp;
  rp.ptx_per_element = s.ptx_per_element;
  rp.tx = s.tx;
  rp.rx = s.rx;
  rp.target.rcs_m2 = s.rcs_m2;
  rp.carrier_hz = s.carrier_hz;
  rp.noise = s.noise;
  rp.bandwidth_hz = s.bandwidth_hz;
  rp.impl_loss_db = s.impl_loss_db;
  const Distance range(k.max_range_m);
  double per_sample = 0.0;
  if (k.mode == SensingMode::kMonostatic) {
    per_sample = monostatic_snr_db(rp, range).value;
  } else {
    const double dtx = s.bistatic_tx_distance_m > 0.0 ? s.bistatic_tx_distance_m : k.max_range_m;
    per_sample = bistatic_snr_db(rp, Distance(dtx), range).value;
  }
  const double samples = s.bandwidth_hz * s.dwell_fraction / k.update_rate_hz;
  return per_sample + 10.0 * std::log10(std::max(samples, 1.0));
}

std::vector<Check> sensing_feasibility(const SensingKpis& k, const SensingScenario& s) {
  std::vector<Check> checks;
  const double inf = std::numeric_limits<double>::infinity();

  const double range_res = s.bandwidth_hz > 0.0 ? range_resolution(Bandwidth(s.bandwidth_hz)).m() : inf;
  checks.push_back(at_most("range_resolution", k.range_res_m, range_res, "Bandwidth"));

  const auto ang = angular_resolution_deg(s.rx);
  Check ang_check = at_most("angular_resolution", k.ang_res_deg, ang.deg, "RX array size (per dim.)");
  if (!ang.resolvable) ang_check.note = "fewer than two elements per dimension: no angular resolution";
  checks.push_back(ang_check);

  const Duration t_obs(1.0 / k.update_rate_hz);
  const double lambda = wavelength(Frequency(s.carrier_hz)).m();
  const double vel = velocity_resolution(Distance(lambda), t_obs);
  Check vel_check = at_most("velocity_resolution", k.velocity_mps, vel, "KPI: velocity");
  const double best_possible =
      velocity_resolution(wavelength(Frequency(kHighestMmWaveCarrierHz)), t_obs);
  if (vel_check.verdict == Verdict::kFail && best_possible > k.velocity_mps) {
    vel_check.verdict = Verdict::kWarn;
    vel_check.note = "velocity KPI cannot be resolved within one update period at any mmWave carrier";
  }
  checks.push_back(vel_check);

  const double snr_db = integrated_sensing_snr_db(k, s);
  Check snr_check = at_least("detection_snr", undb(s.detection_threshold_db),
                             std::isfinite(snr_db) ? undb(snr_db) : 0.0, "Transmit power");
  // Reported in dB; the margin stays a linear ratio like every other check.
  snr_check.required = s.detection_threshold_db;
  snr_check.achieved = snr_db;
  snr_check.note = "high (high path loss)";
  checks.push_back(snr_check);

  const double snr_lin = std::isfinite(snr_db) ? undb(snr_db) : 0.0;
  if (k.range_acc_m) {
    checks.push_back(at_most("range_accuracy", *k.range_acc_m,
                             accuracy_from_resolution(range_res, snr_lin), "KPI: range accuracy"));
  }
  if (k.ang_acc_deg) {
    checks.push_back(at_most("angular_accuracy", *k.ang_acc_deg,
                             accuracy_from_resolution(ang.deg, snr_lin), "KPI: angular accuracy"));
  }
  return checks;
}

}  // namespace isacreq
