#include "isacreq/linkbudget.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

namespace isacreq {

void RateModel::validate() const {
  if (!(se_cap_bps_per_hz > 0.0)) throw DomainError("SE cap must be > 0");
  if (streams < 1) throw DomainError("at least one spatial stream is required");
}

void Numerology::validate() const {
  if (subcarriers < 1) throw DomainError("numerology needs at least one subcarrier");
  if (!(cp_overhead >= 0.0 && cp_overhead < 1.0)) throw DomainError("CP overhead must be in [0, 1)");
  if (symbols_per_slot < 1) throw DomainError("slot needs at least one symbol");
}

double achievable_rate_bps(Decibel snr, Bandwidth b, const RateModel& m) {
  m.validate();
  const double snr_lin = std::isinf(snr.value) && snr.value < 0 ? 0.0 : undb(snr.value);
  const double se = std::min(std::log2(1.0 + snr_lin), m.se_cap_bps_per_hz);
  return m.streams * b.hz() * se;
}

PowerRequirement required_power_per_element(double rate_target_bps, const LinkParams& p,
                                            const RateModel& m) {
  m.validate();
  if (!(rate_target_bps > 0.0)) throw DomainError("rate target must be > 0");
  const Bandwidth b(p.bandwidth_hz);
  const double se_needed = rate_target_bps / (m.streams * b.hz());
  PowerRequirement out;
  if (se_needed > m.se_cap_bps_per_hz) {
    out.reason = "rate exceeds streams x bandwidth x SE cap at any power";
    return out;
  }
  const double snr_needed_db = db(std::exp2(se_needed) - 1.0);
  LinkParams at0 = p;
  at0.ptx_per_element = {0.0};
  const double snr_at_0dbm = link_snr_db(at0).value;
  out.feasible = true;
  out.power = {snr_needed_db - snr_at_0dbm};
  return out;
}

BandwidthRequirement required_bandwidth(double rate_target_bps, const LinkParams& p,
                                        const RateModel& m) {
  m.validate();
  if (!(rate_target_bps > 0.0)) throw DomainError("rate target must be > 0");

  auto rate_at = [&](double bw) {
    LinkParams q = p;
    q.bandwidth_hz = bw;
    return achievable_rate_bps(link_snr_db(q), Bandwidth(bw), m);
  };

  // Coarse log scan first so a non-monotone stretch cannot trap the bisection.
  constexpr int kPerDecade = 48;
  const double decades = std::log10(kMaxSearchBandwidth / kMinSearchBandwidth);
  const int points = static_cast<int>(std::lround(decades * kPerDecade)) + 1;
  double prev = kMinSearchBandwidth;
  BandwidthRequirement out;
  for (int i = 0; i < points; ++i) {
    const double bw = kMinSearchBandwidth * std::pow(10.0, static_cast<double>(i) / kPerDecade);
    if (rate_at(bw) >= rate_target_bps) {
      if (i == 0) {
        out.feasible = true;
        out.bandwidth_hz = bw;
        return out;
      }
      double lo = prev;
      double hi = bw;
      for (int it = 0; it < 200 && (hi - lo) > 1e-13 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (rate_at(mid) >= rate_target_bps ? hi : lo) = mid;
      }
      out.feasible = true;
      out.bandwidth_hz = hi;
      return out;
    }
    prev = bw;
  }
  out.reason = "no bandwidth in [1 MHz, 100 GHz] reaches the target rate";
  return out;
}

double ofdm_symbol_duration_s(Bandwidth b, const Numerology& n) {
  n.validate();
  return n.subcarriers / b.hz() * (1.0 + n.cp_overhead);
}

Duration phy_latency(Bandwidth b, const Numerology& n) {
  const double slot = n.symbols_per_slot * ofdm_symbol_duration_s(b, n);
  return Duration(2.0 * slot);
}

LinkParams tradeoff_link(double distance_m) {
  LinkParams p;
  p.tx = {16, 2, kTradeoffElementGainDbi, 0.5};  // 256 BS elements
  p.rx = {8, 2, kTradeoffElementGainDbi, 0.5};   // 64 UE elements
  p.pathloss = {1.0, 2.0, 140e9};
  p.distance_m = distance_m;
  p.noise = {10.0};
  p.impl_loss_db = 20.0;
  return p;
}

RateModel tradeoff_rate_model() {
  return {std::numeric_limits<double>::infinity(), 1};
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, end);
}

void write_sweep_csv(std::ostream& os, SweepQuantity q, const std::vector<SweepRow>& rows) {
  os << "param,value,"
     << (q == SweepQuantity::kRequiredPowerDbm ? "required_power_dbm" : "required_bandwidth_hz")
     << ",feasible\n";
  for (const auto& r : rows) {
    os << r.param << ',' << format_number(r.value) << ','
       << (r.feasible ? format_number(r.required) : std::string("inf")) << ','
       << (r.feasible ? "true" : "false") << '\n';
  }
}

}  // namespace isacreq
