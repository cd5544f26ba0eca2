#pragma once

// Pathloss, thermal noise and SNR budgets for one-way links and for
// mono/bi-static radar returns.

#include <array>

#include "isacreq/quantities.hpp"

namespace isacreq {

struct PathlossModel {
  double reference_distance_m = 1.0;
  double exponent = 2.0;
  double carrier_hz = 140e9;

  void validate() const;
};

struct PathlossResult {
  Decibel loss;
  // Set when the requested distance fell inside reference_distance and was
  // clamped to it.
  bool clamped = false;
};

struct NoiseModel {
  double noise_figure_db = 5.0;

  void validate() const;
  // Noise power spectral density N0 in W/Hz.
  double density_w_per_hz() const;
};

struct ArrayConfig {
  int elements_per_dim = 16;
  int dims = 2;  // 1 = linear, 2 = planar
  double element_gain_dbi = 0.0;
  double spacing_wl = 0.5;  // element spacing in wavelengths

  void validate() const;
  int total_elements() const;
};

// Array gain accounting, kept in one place. Transmit side: per-element power
// is combined over N_tx elements and coherently beamformed (20 log10 N_tx);
// receive side collects 10 log10 N_rx. Element gain applies once per side.
double tx_array_gain_db(const ArrayConfig& a);
double rx_array_gain_db(const ArrayConfig& a);

struct RadarTarget {
  double rcs_m2 = 1.0;
  std::array<double, 3> position{0.0, 0.0, 0.0};
  double radial_velocity_mps = 0.0;
};

// Free-space loss 20 log10(4 pi d f / c).
double fspl_db(double distance_m, double carrier_hz);

PathlossResult pathloss(const PathlossModel& model, Distance d);
Decibel pathloss_db(const PathlossModel& model, Distance d);

PowerDbm noise_power_dbm(const NoiseModel& n, Bandwidth b);

struct LinkParams {
  PowerDbm ptx_per_element{5.0};
  ArrayConfig tx;
  ArrayConfig rx;
  PathlossModel pathloss;
  double distance_m = 10.0;
  NoiseModel noise;
  double bandwidth_hz = 2e9;
  double impl_loss_db = 20.0;
};

Decibel link_snr_db(const LinkParams& p);

struct RadarParams {
  PowerDbm ptx_per_element{10.0};
  ArrayConfig tx;
  ArrayConfig rx;
  RadarTarget target;
  double carrier_hz = 140e9;
  NoiseModel noise;
  double bandwidth_hz = 2e9;
  double impl_loss_db = 20.0;
};

Decibel monostatic_snr_db(const RadarParams& p, Distance d);
Decibel bistatic_snr_db(const RadarParams& p, Distance d_tx, Distance d_rx);

}  // namespace isacreq
