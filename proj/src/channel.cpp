#include "isacreq/channel.hpp"

#include <string>

namespace isacreq {

void PathlossModel::validate() const {
  if (!(exponent >= 1.5 && exponent <= 6.0)) {
    throw DomainError("pathloss exponent must lie in [1.5, 6], got " + std::to_string(exponent));
  }
  if (!(reference_distance_m > 0.0)) throw DomainError("reference distance must be > 0");
  Frequency{carrier_hz};
}

void NoiseModel::validate() const {
  if (!(noise_figure_db >= 0.0)) throw DomainError("noise figure must be >= 0 dB");
}

double NoiseModel::density_w_per_hz() const {
  return dbm_to_watts({kThermalDensityDbmPerHz + noise_figure_db});
}

void ArrayConfig::validate() const {
  if (elements_per_dim < 1) throw DomainError("array needs at least one element per dimension");
  if (dims != 1 && dims != 2) throw DomainError("array dims must be 1 or 2");
  if (!(spacing_wl > 0.0)) throw DomainError("element spacing must be > 0");
}

int ArrayConfig::total_elements() const {
  return dims == 1 ? elements_per_dim : elements_per_dim * elements_per_dim;
}

double tx_array_gain_db(const ArrayConfig& a) {
  a.validate();
  const double n = a.total_elements();
  return 10.0 * std::log10(n) + 10.0 * std::log10(n) + a.element_gain_dbi;
}

double rx_array_gain_db(const ArrayConfig& a) {
  a.validate();
  return 10.0 * std::log10(static_cast<double>(a.total_elements())) + a.element_gain_dbi;
}

double fspl_db(double distance_m, double carrier_hz) {
  return 20.0 * std::log10(4.0 * kPi * distance_m * carrier_hz / kSpeedOfLight);
}

PathlossResult pathloss(const PathlossModel& model, Distance d) {
  model.validate();
  if (d.m() == 0.0) throw DomainError("pathloss: zero distance is a singularity");
  PathlossResult r;
  double dist = d.m();
  if (dist < model.reference_distance_m) {
    dist = model.reference_distance_m;
    r.clamped = true;
  }
  r.loss.value = fspl_db(model.reference_distance_m, model.carrier_hz) +
                 10.0 * model.exponent * std::log10(dist / model.reference_distance_m);
  return r;
}

Decibel pathloss_db(const PathlossModel& model, Distance d) { return pathloss(model, d).loss; }

PowerDbm noise_power_dbm(const NoiseModel& n, Bandwidth b) {
  n.validate();
  return {kThermalDensityDbmPerHz + 10.0 * std::log10(b.hz()) + n.noise_figure_db};
}

Decibel link_snr_db(const LinkParams& p) {
  const double pl = pathloss_db(p.pathloss, Distance(p.distance_m)).value;
  const double noise = noise_power_dbm(p.noise, Bandwidth(p.bandwidth_hz)).value;
  return {p.ptx_per_element.value + tx_array_gain_db(p.tx) + rx_array_gain_db(p.rx) - pl -
          p.impl_loss_db - noise};
}

namespace {

// 10 log10(lambda^2 sigma / (4 pi)^3) plus everything that does not depend
// on geometry.
double radar_constant_db(const RadarParams& p) {
  if (!(p.target.rcs_m2 > 0.0)) throw DomainError("radar cross-section must be > 0");
  const double lambda = wavelength(Frequency(p.carrier_hz)).m();
  const double geom = lambda * lambda * p.target.rcs_m2 / std::pow(4.0 * kPi, 3);
  const double noise = noise_power_dbm(p.noise, Bandwidth(p.bandwidth_hz)).value;
  return p.ptx_per_element.value + tx_array_gain_db(p.tx) + rx_array_gain_db(p.rx) +
         10.0 * std::log10(geom) - p.impl_loss_db - noise;
}

}  // namespace

Decibel monostatic_snr_db(const RadarParams& p, Distance d) {
  if (!(d.m() > 0.0)) throw DomainError("monostatic_snr_db: zero range");
  return {radar_constant_db(p) - 40.0 * std::log10(d.m())};
}

Decibel bistatic_snr_db(const RadarParams& p, Distance d_tx, Distance d_rx) {
  if (!(d_tx.m() > 0.0) || !(d_rx.m() > 0.0)) throw DomainError("bistatic_snr_db: zero range");
  return {radar_constant_db(p) - 20.0 * std::log10(d_tx.m()) - 20.0 * std::log10(d_rx.m())};
}

}  // namespace isacreq
