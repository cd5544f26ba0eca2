// Acceptance run: one PASS/FAIL line per criterion, exit 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "isacreq/commands.hpp"
#include "oracles.hpp"
#include "requirement_columns.hpp"

using namespace isacreq;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome bandwidth_power_anchors() {
  const auto t0 = std::chrono::steady_clock::now();
  auto at = [](double d, double rate, double p) {
    LinkParams l = tradeoff_link(d);
    l.ptx_per_element = PowerDbm{p};
    const auto r = required_bandwidth(rate, l, tradeoff_rate_model());
    return r.feasible ? r.bandwidth_hz : std::numeric_limits<double>::infinity();
  };
  const double far = at(100.0, 10e9, 5.0);
  const double near = at(10.0, 100e9, 5.0);
  bool monotone = true;
  for (const auto& [d, rate] : {std::pair{100.0, 10e9}, std::pair{10.0, 100e9}}) {
    double prev = std::numeric_limits<double>::infinity();
    for (double p = -10.0; p <= 20.0; p += 0.25) {
      const double b = at(d, rate, p);
      monotone = monotone && b <= prev;
      prev = b;
    }
  }
  const double runtime = seconds_since(t0);
  const bool ok = std::abs(far / 2e9 - 1.0) <= 0.5 && std::abs(near / 13e9 - 1.0) <= 0.3 && monotone &&
                  runtime < 1.0;
  return {ok, fmt("10 Gbps@100 m %.3f GHz (2 +-50%%), 100 Gbps@10 m %.3f GHz (13 +-30%%), monotone %s, %.3f s",
                  far / 1e9, near / 1e9, monotone ? "yes" : "no", runtime)};
}

OracleScenario curve_oracle(double d) {
  const CurveScenario s = uplink_tradeoff_scenario();
  OracleScenario o;
  o.symbols = s.symbols;
  o.bandwidth_hz = s.bandwidth_hz;
  o.carrier_hz = s.carrier_hz;
  o.n_rx = s.bs_elements;
  o.ptx_w = s.ptx.watts();
  o.n0_w_per_hz = NoiseModel{s.bs_noise_figure_db}.density_w_per_hz();
  o.distance_m = d;
  return o;
}

Outcome oracle_equivalence() {
  const auto t0 = std::chrono::steady_clock::now();
  const AlphaPair a = calibrate_alphas(curve_oracle(50.0), fisher_oracle(curve_oracle(50.0)));
  const CurveScenario s = uplink_tradeoff_scenario();
  double worst = 0.0;
  for (int i = 0; i <= 40; ++i) {
    const double d = std::pow(200.0, i / 40.0);
    SpebParams p = s.speb_at(d);
    p.alpha_range = a.alpha_range;
    p.alpha_angle = a.alpha_angle;
    worst = std::max(worst, std::abs(speb(p).speb_m2 / fisher_oracle(curve_oracle(d)).speb_m2 - 1.0));
  }
  const double runtime = seconds_since(t0);
  return {worst <= 0.05 && runtime < 10.0,
          fmt("worst relative gap %.4f over 41 distances in [1, 200] m (<= 0.05), %.2f s", worst, runtime)};
}

Outcome distance_slopes() {
  const CurveScenario s = uplink_tradeoff_scenario();
  std::vector<double> grid;
  for (int i = 0; i <= 60; ++i) grid.push_back(std::pow(200.0, i / 60.0));
  const auto rows = error_vs_distance_curve(s, grid);
  auto slope = [&](auto field, std::size_t i, std::size_t j) {
    return std::log(field(rows[j]) / field(rows[i])) / std::log(rows[j].d_m / rows[i].d_m);
  };
  const double range = slope([](const CurveRow& r) { return r.range_err_m; }, 0, rows.size() - 1);
  const double peb = slope([](const CurveRow& r) { return r.peb_m; }, rows.size() - 7, rows.size() - 1);
  bool monotone = true;
  for (std::size_t i = 1; i < rows.size(); ++i) monotone = monotone && rows[i].rate_bps <= rows[i - 1].rate_bps;
  return {std::abs(range - 1.0) <= 0.05 && std::abs(peb - 2.0) <= 0.1 && monotone,
          fmt("range slope %.4f (1 +-0.05), PEB slope %.4f (2 +-0.1), rate monotone %s", range, peb,
              monotone ? "yes" : "no")};
}

Outcome speb_properties() {
  std::mt19937_64 rng(2718);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int mono_fail = 0, bw_fail = 0, inv_fail = 0;
  double worst_bw = 0.0, worst_inv = 0.0;
  for (int i = 0; i < 1000; ++i) {
    SpebParams p;
    p.symbols = 1.0 + std::floor(500.0 * u(rng));
    p.bandwidth_hz = 0.05e9 + 5e9 * u(rng);
    p.n0_w_per_hz = NoiseModel{3.0 + 10.0 * u(rng)}.density_w_per_hz();
    p.distance_m = 0.5 + 300.0 * u(rng);
    p.wavelength_m = kSpeedOfLight / (10e9 + 290e9 * u(rng));
    p.n_rx = 1 + static_cast<int>(64 * u(rng));
    p.alpha_range = 1e-3 + 1e-2 * u(rng);
    p.alpha_angle = 1e-3 + 1e-1 * u(rng);
    p.ptx_w = std::pow(10.0, -4.0 + 4.0 * u(rng));
    const double base = speb(p).speb_m2;
    const double k = 1.01 + 2.0 * u(rng);
    SpebParams q = p;
    q.ptx_w *= k;
    mono_fail += speb(q).speb_m2 < base ? 0 : 1;
    q = p;
    q.symbols *= k;
    mono_fail += speb(q).speb_m2 < base ? 0 : 1;
    q = p;
    q.n_rx += 1;
    mono_fail += speb(q).speb_m2 < base ? 0 : 1;
    q = p;
    q.distance_m *= k;
    mono_fail += speb(q).speb_m2 > base ? 0 : 1;

    const double b_star = optimal_bandwidth(p).hz();
    const double found = std::exp(oracle::golden_section_min(
        [&](double lb) {
          SpebParams r = p;
          r.bandwidth_hz = std::exp(lb);
          return speb(r).speb_m2;
        },
        std::log(b_star) - 5.0, std::log(b_star) + 5.0));
    const double bw_err = std::abs(found / b_star - 1.0);
    worst_bw = std::max(worst_bw, bw_err);
    bw_fail += bw_err <= 1e-3 ? 0 : 1;

    const double target = speb(p).peb_m * (0.1 + 2.0 * u(rng));
    SpebParams inv = p;
    inv.ptx_w = required_tx_power(target, p).watts();
    const double inv_err = std::abs(speb(inv).peb_m / target - 1.0);
    worst_inv = std::max(worst_inv, inv_err);
    inv_fail += inv_err <= 1e-9 ? 0 : 1;
  }
  return {mono_fail == 0 && bw_fail == 0 && inv_fail == 0,
          fmt("1000 draws: monotonicity violations %d, B* worst gap %.2e (<= 1e-3), inversion worst %.2e (<= 1e-9)",
              mono_fail, worst_bw, worst_inv)};
}

Outcome latency_span() {
  const Numerology n;
  const double lo = phy_latency(Bandwidth(4e9), n).s();
  const double hi = phy_latency(Bandwidth(0.4e9), n).s();
  const double e_lo = std::abs(lo / 28e-6 - 1.0), e_hi = std::abs(hi / 280e-6 - 1.0);
  return {e_lo <= 0.15 && e_hi <= 0.15,
          fmt("%.2f us at 4 GHz (28 us, gap %.3f), %.2f us at 0.4 GHz (280 us, gap %.3f), limit 0.15", lo * 1e6,
              e_lo, hi * 1e6, e_hi)};
}

Outcome resolution_table() {
  auto res = [](int n) { return angular_resolution_deg(ArrayConfig{n, 2, 0.0, 0.5}).deg; };
  const double r100 = res(100), r35 = res(35), r10 = res(10);
  const double rr = range_resolution(Bandwidth(2e9)).m();
  const bool ok = std::abs(r100 - 1.02) <= 0.005 && std::abs(r35 - 2.90) <= 0.005 &&
                  std::abs(r10 - 10.15) <= 0.005 && std::abs(rr - 0.075) <= 0.0005 &&
                  rr <= use_case(UseCaseId::kS1).sensing->range_res_m;
  return {ok, fmt("N=100 %.3f deg, N=35 %.3f deg, N=10 %.3f deg, c/2B at 2 GHz %.2f cm (<= 10 cm)", r100, r35, r10,
                  rr * 100.0)};
}

Outcome gdop_oracle() {
  auto scene = [](const std::vector<Vec2>& anchors) {
    Scene s;
    s.dims = 2;
    for (const auto& a : anchors) {
      InfrastructureNode n;
      n.position = Vec3(a.x(), a.y(), 0.0);
      s.nodes.push_back(n);
    }
    s.mix.types = {MeasurementType::kToA};
    s.mix.toa_sigma_s = 1.0 / kSpeedOfLight;
    return s;
  };
  const double l = 2000.0;
  const std::vector<Vec2> square = {{-l, -l}, {l, -l}, {l, l}, {-l, l}};
  const double peb = gdop(Vec3::Zero(), scene(square)).peb_m;
  const double mc = oracle::toa_least_squares_rmse(square, Vec2::Zero(), 1.0, 10000, 2024);
  const auto collinear = gdop(Vec3::Zero(), scene({{-10, 0}, {10, 0}, {20, 0}}));

  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-50.0, 50.0), h(1.0, 30.0);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    Scene s;
    s.dims = 3;
    for (int i = 0; i < 5; ++i) {
      InfrastructureNode n;
      n.position = Vec3(u(rng), u(rng), h(rng));
      s.nodes.push_back(n);
    }
    s.mix.types = {MeasurementType::kTDoA};
    s.mix.tdoa_sigma_s = 1e-10;
    const Vec3 ue(u(rng), u(rng), 1.5);
    const double ref0 = std::sqrt(position_fim(ue, s, 0).inverse().trace());
    for (std::size_t r = 1; r < s.nodes.size(); ++r) {
      worst = std::max(worst, std::abs(std::sqrt(position_fim(ue, s, r).inverse().trace()) / ref0 - 1.0));
    }
  }
  const bool ok = std::abs(peb - 1.0) <= 1e-12 && std::abs(mc / peb - 1.0) <= 0.05 && !collinear.observable &&
                  worst <= 1e-9;
  return {ok, fmt("square PEB %.12f m, Monte Carlo %.4f m (10^4 trials), collinear %s, TDoA ref. spread %.1e",
                  peb, mc, collinear.observable ? "observable" : "unobservable", worst)};
}

Outcome table_reproduction() {
  int ok_columns = 0;
  std::string bad;
  for (const auto& col : columns::columns()) {
    ScenarioConfig s = load_scenario_file(std::string(ISACREQ_TEST_DATA_DIR) + "/columns/" + col.file);
    const bool base = evaluate(s, col.id).overall;
    col.mutate(s);
    const auto flipped = columns::failing_checks(evaluate(s, col.id));
    if (base && flipped == std::vector<std::string>{col.flipped_check}) {
      ++ok_columns;
    } else {
      bad += std::string(" ") + to_string(col.id);
    }
  }
  return {ok_columns == 7, fmt("%d/7 columns pass and flip exactly the expected check%s%s", ok_columns,
                               bad.empty() ? "" : "; failing:", bad.c_str())};
}

Outcome recommendation_envelope() {
  const auto r = recommend({std::begin(kAllUseCases), std::end(kAllUseCases)});
  const auto& s = r.scenario;
  double worst_sync = 0.0;
  for (const auto& n : s.deployment.nodes) worst_sync = std::max(worst_sync, n.sync_error_s);
  const bool ok = r.verified && s.signal.bandwidth_hz >= 5e9 && s.signal.bandwidth_hz <= 10e9 &&
                  s.hardware.carrier_hz > 100e9 && s.hardware.in_array.elements_per_dim >= 10 &&
                  s.hardware.in_array.elements_per_dim <= 20 && worst_sync <= 100e-12;
  return {ok, fmt("verified %s, aggregate %.0f GHz, carrier %.0f GHz, IN %d/dim, sync %.0f ps",
                  r.verified ? "yes" : "no", s.signal.bandwidth_hz / 1e9, s.hardware.carrier_hz / 1e9,
                  s.hardware.in_array.elements_per_dim, worst_sync * 1e12)};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"bandwidth-power anchors", bandwidth_power_anchors},
      {"bound vs inverse-FIM oracle", oracle_equivalence},
      {"error-vs-distance slopes", distance_slopes},
      {"bound property suite", speb_properties},
      {"PHY latency span", latency_span},
      {"resolution table", resolution_table},
      {"GDOP oracle", gdop_oracle},
      {"requirement table reproduction", table_reproduction},
      {"joint recommendation envelope", recommendation_envelope},
  };
  int failed = 0;
  int index = 1;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::printf("%s criterion %d (%s): %s\n", o.pass ? "PASS" : "FAIL", index++, name, o.detail.c_str());
  }
  std::printf("%d/%d criteria passed\n", 9 - failed, 9);
  return failed == 0 ? 0 : 1;
}
