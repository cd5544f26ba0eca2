#pragma once

// Uplink position error bound for a single infrastructure node (squared
// position error bound with separate range and angle contributions), its
// closed-form inversions, the error-vs-distance curve, and a Fisher
// information oracle used to calibrate the two scenario constants.

#include <Eigen/Dense>
#include <iosfwd>
#include <optional>
#include <vector>

#include "isacreq/linkbudget.hpp"

namespace isacreq {

// Oracle-calibrated constants for a 16-element half-wavelength ULA with a
// 4096-subcarrier flat pilot (see fisher_oracle / calibrate_alphas).
inline constexpr double kDefaultAlphaRange = 0.0058594;
inline constexpr double kDefaultAlphaAngle = 0.0235290;

struct SpebParams {
  double symbols = 120.0;  // integration time T, counted in OFDM symbols
  double bandwidth_hz = 2e9;
  double n0_w_per_hz = 1.2589254e-20;  // -169 dBm/Hz (5 dB noise figure)
  double distance_m = 10.0;
  double wavelength_m = kSpeedOfLight / 140e9;
  int n_rx = 16;
  // Elements spanning the angular aperture. 0 means n_rx (linear array),
  // which reproduces the N_rx^3 angle scaling. A planar array of n x n
  // elements uses n_rx = n*n and aperture = n.
  int n_aperture = 0;
  double alpha_range = kDefaultAlphaRange;
  double alpha_angle = kDefaultAlphaAngle;
  double ptx_w = 0.0251189;

  void validate() const;
  int aperture() const { return n_aperture > 0 ? n_aperture : n_rx; }
};

struct LocalizationBound {
  double speb_m2 = 0.0;
  double peb_m = 0.0;
  double range_term_m2 = 0.0;
  double angle_term_m2 = 0.0;
  double range_err_m = 0.0;
  double angle_err_rad = 0.0;
  std::optional<double> oeb_rad;
};

LocalizationBound speb(const SpebParams& p);

// Transmit power for which peb equals target_peb. p.ptx_w is ignored.
PowerDbm required_tx_power(double target_peb_m, const SpebParams& p);

// Minimizer of speb over bandwidth. p.bandwidth_hz is ignored.
Bandwidth optimal_bandwidth(const SpebParams& p);

// floor(available / symbol), at least one symbol.
double pilot_symbols(double available_time_s, double symbol_duration_s);

Distance orientation_error_to_position_error(Angle eps, Distance d);

struct CurveScenario {
  double carrier_hz = 140e9;
  double bandwidth_hz = 2e9;
  PowerDbm ptx{14.0};  // UE transmit power (single element)
  double symbols = 120.0;
  int bs_elements = 16;  // uniform linear array at the base station
  double bs_noise_figure_db = 5.0;
  double impl_loss_db = 20.0;
  double pathloss_exponent = 2.0;
  double alpha_range = kDefaultAlphaRange;
  double alpha_angle = kDefaultAlphaAngle;
  RateModel rate{6.0, 1};

  SpebParams speb_at(double distance_m) const;
  LinkParams link_at(double distance_m) const;
};

// Uplink trade-off scenario: 140 GHz, 2 GHz, 14 dBm, 120 OFDM symbols.
CurveScenario uplink_tradeoff_scenario();

struct CurveRow {
  double d_m;
  double range_err_m;
  double angle_err_deg;
  double peb_m;
  double rate_bps;
};

std::vector<CurveRow> error_vs_distance_curve(const CurveScenario& s,
                                              const std::vector<double>& d_grid);
// Header `d_m,range_err_m,angle_err_deg,peb_m,rate_bps`.
void write_curve_csv(std::ostream& os, const std::vector<CurveRow>& rows);

struct OracleScenario {
  double symbols = 120.0;
  double bandwidth_hz = 2e9;
  int subcarriers = 4096;
  double carrier_hz = 140e9;
  int n_rx = 16;
  double spacing_wl = 0.5;
  double ptx_w = 0.0251189;
  double n0_w_per_hz = 1.2589254e-20;  // -169 dBm/Hz (5 dB noise figure)
  double distance_m = 50.0;
  double angle_rad = 0.0;  // UE bearing measured from array broadside
};

struct OracleResult {
  Eigen::Matrix2d fim;  // over (distance, angle), nuisance phase removed
  int rank = 0;
  double crlb_range_m2 = 0.0;   // +inf when rank < 2
  double crlb_angle_rad2 = 0.0; // +inf when rank < 2
  // Inverse-FIM position bound, crlb_range + d^2 crlb_angle.
  double speb_m2 = 0.0;
};

// Numerically accumulates the delay/AoA Fisher information of a flat
// multicarrier pilot received on a uniform linear array with an exact
// spherical wavefront and unknown carrier phase.
OracleResult fisher_oracle(const OracleScenario& s);

struct AlphaPair {
  double alpha_range;
  double alpha_angle;
};

// Matches the oracle's range and angle CRLBs to the two-term bound's
// functional form.
AlphaPair calibrate_alphas(const OracleScenario& s, const OracleResult& r);

}  // namespace isacreq
