#pragma once

// Rate model, its inversions (power for a given bandwidth, bandwidth for a
// given power), and the OFDM slot latency model.

#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "isacreq/channel.hpp"

namespace isacreq {

struct RateModel {
  // Per-stream spectral efficiency ceiling in bps/Hz. +inf disables the cap.
  double se_cap_bps_per_hz = 6.0;
  int streams = 1;

  void validate() const;
};

struct Numerology {
  int subcarriers = 4096;
  double cp_overhead = 0.07;
  int symbols_per_slot = 14;

  void validate() const;
};

double achievable_rate_bps(Decibel snr, Bandwidth b, const RateModel& m);

struct PowerRequirement {
  bool feasible = false;
  PowerDbm power{};  // meaningful only when feasible
  std::string reason;
};

struct BandwidthRequirement {
  bool feasible = false;
  double bandwidth_hz = 0.0;  // meaningful only when feasible
  std::string reason;
};

// Per-element transmit power so that achievable_rate(link_snr(p)) hits the
// target. p.ptx_per_element is ignored.
PowerRequirement required_power_per_element(double rate_target_bps, const LinkParams& p,
                                            const RateModel& m);

// Smallest bandwidth in [kMinSearchBandwidth, kMaxSearchBandwidth] meeting the
// target at p.ptx_per_element. p.bandwidth_hz is ignored.
inline constexpr double kMinSearchBandwidth = 1e6;
inline constexpr double kMaxSearchBandwidth = 100e9;
BandwidthRequirement required_bandwidth(double rate_target_bps, const LinkParams& p,
                                        const RateModel& m);

double ofdm_symbol_duration_s(Bandwidth b, const Numerology& n);
// Bidirectional PHY latency: two slots of symbols_per_slot OFDM symbols.
Duration phy_latency(Bandwidth b, const Numerology& n);

// Share of the end-to-end latency budget that the PHY may consume; the rest
// is left for processing and core network.
inline constexpr double kPhyLatencyShareOfE2e = 0.3;

// Point-to-point 140 GHz link behind the bandwidth/power trade-off figure:
// 256-element BS, 64-element UE, free space, 20 dB implementation lump.
// Downlink orientation (BS transmits, UE noise figure 10 dB).
//
// kTradeoffElementGainDbi is the single calibration constant for that
// figure: a per-element antenna gain applied at both ends of both curves.
inline constexpr double kTradeoffElementGainDbi = 4.0;
LinkParams tradeoff_link(double distance_m);
// The figure's rate model: a single ideal Shannon stream with no SE cap.
RateModel tradeoff_rate_model();

enum class SweepQuantity { kRequiredPowerDbm, kRequiredBandwidthHz };

struct SweepRow {
  std::string param;
  double value = 0.0;
  double required = 0.0;
  bool feasible = false;
};

// Header is exactly `param,value,required_power_dbm,feasible` or
// `param,value,required_bandwidth_hz,feasible`.
void write_sweep_csv(std::ostream& os, SweepQuantity q, const std::vector<SweepRow>& rows);

// Shortest round-trip representation used by every CSV emitter.
std::string format_number(double v);

}  // namespace isacreq
