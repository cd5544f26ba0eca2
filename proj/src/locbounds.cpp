#include "isacreq/locbounds.hpp"

#include <cmath>
#include <limits>
#include <ostream>

namespace isacreq {

void SpebParams::validate() const {
  if (!(symbols > 0.0 && bandwidth_hz > 0.0 && n0_w_per_hz > 0.0 && distance_m > 0.0 &&
        wavelength_m > 0.0 && n_rx > 0 && n_aperture >= 0 && alpha_range > 0.0 &&
        alpha_angle > 0.0 && ptx_w > 0.0)) {
    throw DomainError("SpebParams: every parameter must be strictly positive");
  }
}

namespace {

// Everything in the bound except 1/P_tx and the bracketed two-term sum.
double noise_scale(const SpebParams& p) {
  return p.n0_w_per_hz * p.bandwidth_hz * p.distance_m * p.distance_m /
         (p.symbols * p.wavelength_m * p.wavelength_m);
}

double range_bracket(const SpebParams& p) {
  return kSpeedOfLight * kSpeedOfLight * p.alpha_range /
         (p.bandwidth_hz * p.bandwidth_hz * p.n_rx);
}

double angle_bracket(const SpebParams& p) {
  const double ap = p.aperture();
  return p.distance_m * p.distance_m * p.alpha_angle / (p.n_rx * ap * ap);
}

}  // namespace

LocalizationBound speb(const SpebParams& p) {
  p.validate();
  const double scale = noise_scale(p) / p.ptx_w;
  LocalizationBound b;
  b.range_term_m2 = scale * range_bracket(p);
  b.angle_term_m2 = scale * angle_bracket(p);
  b.speb_m2 = b.range_term_m2 + b.angle_term_m2;
  b.peb_m = std::sqrt(b.speb_m2);
  b.range_err_m = std::sqrt(b.range_term_m2);
  b.angle_err_rad = std::sqrt(b.angle_term_m2) / p.distance_m;
  return b;
}

PowerDbm required_tx_power(double target_peb_m, const SpebParams& p) {
  if (!(target_peb_m > 0.0)) throw DomainError("required_tx_power: target PEB must be > 0");
  SpebParams q = p;
  q.ptx_w = 1.0;
  q.validate();
  const double watts =
      noise_scale(q) * (range_bracket(q) + angle_bracket(q)) / (target_peb_m * target_peb_m);
  return PowerDbm::from_watts(watts);
}

Bandwidth optimal_bandwidth(const SpebParams& p) {
  SpebParams q = p;
  q.bandwidth_hz = 1.0;
  q.validate();
  return Bandwidth(kSpeedOfLight * q.aperture() / q.distance_m *
                   std::sqrt(q.alpha_range / q.alpha_angle));
}

double pilot_symbols(double available_time_s, double symbol_duration_s) {
  if (!(available_time_s > 0.0 && symbol_duration_s > 0.0)) {
    throw DomainError("pilot_symbols: times must be > 0");
  }
  return std::max(1.0, std::floor(available_time_s / symbol_duration_s));
}

Distance orientation_error_to_position_error(Angle eps, Distance d) {
  if (std::abs(eps.deg()) >= 10.0) {
    throw DomainError("orientation error must be below 10 degrees for the lever-arm model");
  }
  return Distance(d.m() * std::abs(eps.rad()));
}

SpebParams CurveScenario::speb_at(double distance_m) const {
  SpebParams p;
  p.symbols = symbols;
  p.bandwidth_hz = bandwidth_hz;
  p.n0_w_per_hz = NoiseModel{bs_noise_figure_db}.density_w_per_hz();
  p.distance_m = distance_m;
  p.wavelength_m = wavelength(Frequency(carrier_hz)).m();
  p.n_rx = bs_elements;
  p.alpha_range = alpha_range;
  p.alpha_angle = alpha_angle;
  p.ptx_w = ptx.watts();
  return p;
}

LinkParams CurveScenario::link_at(double distance_m) const {
  LinkParams l;
  l.ptx_per_element = ptx;
  l.tx = {1, 1, 0.0, 0.5};
  l.rx = {bs_elements, 1, 0.0, 0.5};
  l.pathloss = {1.0, pathloss_exponent, carrier_hz};
  l.distance_m = distance_m;
  l.noise = {bs_noise_figure_db};
  l.bandwidth_hz = bandwidth_hz;
  l.impl_loss_db = impl_loss_db;
  return l;
}

CurveScenario uplink_tradeoff_scenario() { return CurveScenario{}; }

std::vector<CurveRow> error_vs_distance_curve(const CurveScenario& s,
                                              const std::vector<double>& d_grid) {
  for (std::size_t i = 0; i < d_grid.size(); ++i) {
    if (!(d_grid[i] > 0.0) || (i > 0 && !(d_grid[i] > d_grid[i - 1]))) {
      throw DomainError("distance grid must be positive and strictly increasing");
    }
  }
  std::vector<CurveRow> rows;
  rows.reserve(d_grid.size());
  for (double d : d_grid) {
    const auto b = speb(s.speb_at(d));
    const double rate =
        achievable_rate_bps(link_snr_db(s.link_at(d)), Bandwidth(s.bandwidth_hz), s.rate);
    rows.push_back({d, b.range_err_m, rad_to_deg(b.angle_err_rad), b.peb_m, rate});
  }
  return rows;
}

void write_curve_csv(std::ostream& os, const std::vector<CurveRow>& rows) {
  os << "d_m,range_err_m,angle_err_deg,peb_m,rate_bps\n";
  for (const auto& r : rows) {
    os << format_number(r.d_m) << ',' << format_number(r.range_err_m) << ','
       << format_number(r.angle_err_deg) << ',' << format_number(r.peb_m) << ','
       << format_number(r.rate_bps) << '\n';
  }
}

OracleResult fisher_oracle(const OracleScenario& s) {
  if (s.n_rx < 1 || s.subcarriers < 1 || !(s.symbols > 0.0) || !(s.bandwidth_hz > 0.0) ||
      !(s.ptx_w > 0.0) || !(s.n0_w_per_hz > 0.0) || !(s.distance_m > 0.0)) {
    throw DomainError("fisher_oracle: invalid scenario");
  }
  const double lambda = kSpeedOfLight / s.carrier_hz;
  const double ux = s.distance_m * std::cos(s.angle_rad);
  const double uy = s.distance_m * std::sin(s.angle_rad);

  // Parameters (x, y, phase). Per-sample noise variance is 1, so the squared
  // amplitude of each sample is its SNR.
  Eigen::Matrix3d j = Eigen::Matrix3d::Zero();
  for (int n = 0; n < s.n_rx; ++n) {
    const double py = (n - 0.5 * (s.n_rx - 1)) * s.spacing_wl * lambda;
    const double dx = ux;
    const double dy = uy - py;
    const double r = std::hypot(dx, dy);
    const double snr = s.ptx_w * lambda * lambda /
                       (std::pow(4.0 * kPi * r, 2) * s.n0_w_per_hz * s.bandwidth_hz);
    // d(log amplitude)/d(x, y)
    const double ax = -dx / (r * r);
    const double ay = -dy / (r * r);
    for (int k = 0; k < s.subcarriers; ++k) {
      const double fk = (k - 0.5 * (s.subcarriers - 1)) * s.bandwidth_hz / s.subcarriers;
      const double kwave = 2.0 * kPi * (s.carrier_hz + fk) / kSpeedOfLight;
      const double phx = -kwave * dx / r;
      const double phy = -kwave * dy / r;
      const Eigen::Vector3d re(ax, ay, 0.0);
      const Eigen::Vector3d im(phx, phy, 1.0);
      j.noalias() += snr * (re * re.transpose() + im * im.transpose());
    }
  }
  j *= 2.0 * s.symbols;

  // Remove the unknown phase (Schur complement), then move to (d, theta).
  const Eigen::Matrix2d jxy =
      j.topLeftCorner<2, 2>() - j.topRightCorner<2, 1>() * j.bottomLeftCorner<1, 2>() / j(2, 2);
  Eigen::Matrix2d g;
  g << std::cos(s.angle_rad), -s.distance_m * std::sin(s.angle_rad), std::sin(s.angle_rad),
      s.distance_m * std::cos(s.angle_rad);
  OracleResult out;
  out.fim = g.transpose() * jxy * g;
  out.fim = 0.5 * (out.fim + out.fim.transpose()).eval();

  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(out.fim);
  const double top = es.eigenvalues().cwiseAbs().maxCoeff();
  out.rank = 0;
  for (int i = 0; i < 2; ++i) {
    if (es.eigenvalues()(i) > 1e-9 * top) ++out.rank;
  }
  if (out.rank < 2) {
    out.crlb_range_m2 = std::numeric_limits<double>::infinity();
    out.crlb_angle_rad2 = std::numeric_limits<double>::infinity();
    out.speb_m2 = std::numeric_limits<double>::infinity();
    return out;
  }
  const Eigen::Matrix2d inv = out.fim.inverse();
  out.crlb_range_m2 = inv(0, 0);
  out.crlb_angle_rad2 = inv(1, 1);
  out.speb_m2 = inv(0, 0) + s.distance_m * s.distance_m * inv(1, 1);
  return out;
}

AlphaPair calibrate_alphas(const OracleScenario& s, const OracleResult& r) {
  if (r.rank < 2) throw DomainError("calibrate_alphas: oracle FIM is rank deficient");
  SpebParams unit;
  unit.symbols = s.symbols;
  unit.bandwidth_hz = s.bandwidth_hz;
  unit.n0_w_per_hz = s.n0_w_per_hz;
  unit.distance_m = s.distance_m;
  unit.wavelength_m = kSpeedOfLight / s.carrier_hz;
  unit.n_rx = s.n_rx;
  unit.alpha_range = 1.0;
  unit.alpha_angle = 1.0;
  unit.ptx_w = s.ptx_w;
  const auto b = speb(unit);
  const double d2 = s.distance_m * s.distance_m;
  return {r.crlb_range_m2 / b.range_term_m2, r.crlb_angle_rad2 * d2 / b.angle_term_m2};
}

}  // namespace isacreq
