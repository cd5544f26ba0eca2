#include <doctest.h>

#include <random>
#include <sstream>

#include "isacreq/locbounds.hpp"
#include "oracles.hpp"

using namespace isacreq;

namespace {

OracleScenario curve_oracle(double d) {
  OracleScenario o;
  const CurveScenario s = uplink_tradeoff_scenario();
  o.symbols = s.symbols;
  o.bandwidth_hz = s.bandwidth_hz;
  o.carrier_hz = s.carrier_hz;
  o.n_rx = s.bs_elements;
  o.ptx_w = s.ptx.watts();
  o.n0_w_per_hz = NoiseModel{s.bs_noise_figure_db}.density_w_per_hz();
  o.distance_m = d;
  return o;
}

SpebParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
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
  return p;
}

}  // namespace

TEST_CASE("Fisher oracle agrees with the closed-form far-field CRLBs") {
  for (double d : {20.0, 50.0, 200.0}) {
    const OracleScenario o = curve_oracle(d);
    const auto r = fisher_oracle(o);
    REQUIRE(r.rank == 2);
    const double lambda = oracle::kC / o.carrier_hz;
    const double snr = o.ptx_w * lambda * lambda /
                       (std::pow(4.0 * oracle::kPi * d, 2) * o.n0_w_per_hz * o.bandwidth_hz);
    const auto ff = oracle::far_field_crlb(snr, o.symbols, o.n_rx, o.subcarriers, o.bandwidth_hz,
                                           o.carrier_hz, o.spacing_wl);
    CHECK(r.crlb_range_m2 == doctest::Approx(ff.range_m2).epsilon(0.01));
    CHECK(r.crlb_angle_rad2 == doctest::Approx(ff.angle_rad2).epsilon(0.01));
  }
}

TEST_CASE("Fisher oracle with a single element cannot resolve angle") {
  OracleScenario o = curve_oracle(50.0);
  o.n_rx = 1;
  const auto r = fisher_oracle(o);
  CHECK(r.rank < 2);
  CHECK(std::isinf(r.speb_m2));
  CHECK_THROWS_AS(calibrate_alphas(o, r), DomainError);
}

TEST_CASE("calibrated constants reproduce the frozen defaults") {
  const OracleScenario o = curve_oracle(50.0);
  const AlphaPair a = calibrate_alphas(o, fisher_oracle(o));
  CHECK(a.alpha_range == doctest::Approx(kDefaultAlphaRange).epsilon(1e-4));
  CHECK(a.alpha_angle == doctest::Approx(kDefaultAlphaAngle).epsilon(1e-4));
}

TEST_CASE("bound matches inverse-FIM over 1 to 200 m") {
  const CurveScenario s = uplink_tradeoff_scenario();
  const OracleScenario ref = curve_oracle(50.0);
  const AlphaPair a = calibrate_alphas(ref, fisher_oracle(ref));
  for (double d = 1.0; d <= 200.0; d *= 1.2) {
    SpebParams p = s.speb_at(d);
    p.alpha_range = a.alpha_range;
    p.alpha_angle = a.alpha_angle;
    const auto r = fisher_oracle(curve_oracle(d));
    CHECK(speb(p).speb_m2 == doctest::Approx(r.speb_m2).epsilon(0.05));
  }
}

TEST_CASE("bound is strictly monotone in power, time, elements and distance") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(1.01, 3.0);
  for (int i = 0; i < 1000; ++i) {
    const SpebParams p = random_params(rng);
    const double base = speb(p).speb_m2;
    SpebParams q = p;
    q.ptx_w *= u(rng);
    CHECK(speb(q).speb_m2 < base);
    q = p;
    q.symbols *= u(rng);
    CHECK(speb(q).speb_m2 < base);
    q = p;
    q.n_rx += 1;
    CHECK(speb(q).speb_m2 < base);
    q = p;
    q.distance_m *= u(rng);
    CHECK(speb(q).speb_m2 > base);
  }
}

TEST_CASE("optimal bandwidth matches a numerical minimizer") {
  std::mt19937_64 rng(22);
  for (int i = 0; i < 1000; ++i) {
    const SpebParams p = random_params(rng);
    const double b_star = optimal_bandwidth(p).hz();
    auto f = [&](double log_b) {
      SpebParams q = p;
      q.bandwidth_hz = std::exp(log_b);
      return speb(q).speb_m2;
    };
    const double found = std::exp(oracle::golden_section_min(f, std::log(b_star) - 5.0, std::log(b_star) + 5.0));
    CHECK(found == doctest::Approx(b_star).epsilon(1e-3));
  }
}

TEST_CASE("power inversion round-trips") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 1000; ++i) {
    SpebParams p = random_params(rng);
    const double target = speb(p).peb_m * 0.37;
    p.ptx_w = required_tx_power(target, p).watts();
    CHECK(speb(p).peb_m == doctest::Approx(target).epsilon(1e-9));
  }
  CHECK_THROWS_AS(required_tx_power(0.0, SpebParams{}), DomainError);
}

TEST_CASE("planar arrays scale the angle term by aperture") {
  SpebParams linear;
  linear.n_rx = 16;
  SpebParams planar = linear;
  planar.n_rx = 256;
  planar.n_aperture = 16;
  const auto l = speb(linear), q = speb(planar);
  CHECK(q.range_term_m2 == doctest::Approx(l.range_term_m2 / 16.0));
  CHECK(q.angle_term_m2 == doctest::Approx(l.angle_term_m2 / 16.0));
}

TEST_CASE("pilot symbols and the lever arm") {
  CHECK(pilot_symbols(1e-3, 1e-5) == 100.0);
  CHECK(pilot_symbols(1e-9, 1e-5) == 1.0);
  CHECK_THROWS_AS(pilot_symbols(0.0, 1e-5), DomainError);
  CHECK(orientation_error_to_position_error(Angle::degrees(0.1), Distance(10.0)).m() ==
        doctest::Approx(10.0 * 0.1 * oracle::kPi / 180.0));
  CHECK_THROWS_AS(orientation_error_to_position_error(Angle::degrees(10.0), Distance(1.0)), DomainError);
  CHECK_THROWS_AS(speb(SpebParams{.symbols = 0.0}), DomainError);
}

TEST_CASE("error-vs-distance slopes") {
  const CurveScenario s = uplink_tradeoff_scenario();
  const auto rows = error_vs_distance_curve(s, {1.0, 2.0, 100.0, 200.0});
  auto slope = [](double x0, double y0, double x1, double y1) { return std::log(y1 / y0) / std::log(x1 / x0); };
  CHECK(slope(rows[0].d_m, rows[0].range_err_m, rows[3].d_m, rows[3].range_err_m) ==
        doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::abs(slope(rows[2].d_m, rows[2].peb_m, rows[3].d_m, rows[3].peb_m) - 2.0) < 0.1);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].rate_bps <= rows[i - 1].rate_bps);
  CHECK_THROWS_AS(error_vs_distance_curve(s, {2.0, 1.0}), DomainError);
}

TEST_CASE("curve CSV header") {
  std::ostringstream os;
  write_curve_csv(os, {{1.0, 2.0, 3.0, 4.0, 5.0}});
  CHECK(os.str() == "d_m,range_err_m,angle_err_deg,peb_m,rate_bps\n1,2,3,4,5\n");
}
