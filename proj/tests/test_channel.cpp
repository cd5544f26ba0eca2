#include <doctest.h>

#include <random>

#include "isacreq/channel.hpp"
#include "oracles.hpp"

using namespace isacreq;

namespace {

oracle::Link to_oracle(const LinkParams& p) {
  return {p.ptx_per_element.watts(),
          p.tx.total_elements(),
          p.rx.total_elements(),
          undb(p.tx.element_gain_dbi),
          p.pathloss.carrier_hz,
          p.pathloss.reference_distance_m,
          p.pathloss.exponent,
          std::max(p.distance_m, p.pathloss.reference_distance_m),
          undb(p.noise.noise_figure_db),
          undb(p.impl_loss_db),
          p.bandwidth_hz};
}

}  // namespace

TEST_CASE("free-space loss at 1 m and 140 GHz") {
  CHECK(fspl_db(1.0, 140e9) == doctest::Approx(75.37).epsilon(1e-4));
}

TEST_CASE("pathloss grows 10n dB per decade and clamps inside the reference distance") {
  const PathlossModel m{1.0, 3.0, 28e9};
  CHECK(pathloss_db(m, Distance(100.0)).value - pathloss_db(m, Distance(10.0)).value ==
        doctest::Approx(30.0));
  const auto r = pathloss(m, Distance(0.5));
  CHECK(r.clamped);
  CHECK(r.loss.value == doctest::Approx(pathloss_db(m, Distance(1.0)).value));
  CHECK_THROWS_AS(pathloss(m, Distance(0.0)), DomainError);
  CHECK_THROWS_AS(pathloss(PathlossModel{1.0, 7.0, 28e9}, Distance(5.0)), DomainError);
}

TEST_CASE("noise power") {
  CHECK(noise_power_dbm(NoiseModel{5.0}, Bandwidth(1e9)).value == doctest::Approx(-79.0));
  CHECK_THROWS_AS(noise_power_dbm(NoiseModel{-1.0}, Bandwidth(1e9)), DomainError);
}

TEST_CASE("array gains") {
  const ArrayConfig planar{16, 2, 3.0, 0.5};
  CHECK(planar.total_elements() == 256);
  CHECK(tx_array_gain_db(planar) == doctest::Approx(20.0 * std::log10(256.0) + 3.0));
  CHECK(rx_array_gain_db(planar) == doctest::Approx(10.0 * std::log10(256.0) + 3.0));
  CHECK_THROWS_AS(tx_array_gain_db(ArrayConfig{0, 2, 0.0, 0.5}), DomainError);
  CHECK_THROWS_AS(rx_array_gain_db(ArrayConfig{4, 3, 0.0, 0.5}), DomainError);
}

TEST_CASE("link SNR matches the linear-domain budget oracle") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    LinkParams p;
    p.ptx_per_element = PowerDbm{-10.0 + 40.0 * u(rng)};
    p.tx = ArrayConfig{1 + static_cast<int>(u(rng) * 32), u(rng) < 0.5 ? 1 : 2, 6.0 * u(rng), 0.5};
    p.rx = ArrayConfig{1 + static_cast<int>(u(rng) * 32), u(rng) < 0.5 ? 1 : 2, 6.0 * u(rng), 0.5};
    p.rx.element_gain_dbi = p.tx.element_gain_dbi;
    p.pathloss = PathlossModel{0.5 + u(rng), 1.5 + 4.5 * u(rng), 1e9 + 300e9 * u(rng)};
    p.distance_m = 0.1 + 1000.0 * u(rng);
    p.noise = NoiseModel{15.0 * u(rng)};
    p.bandwidth_hz = 1e6 + 10e9 * u(rng);
    p.impl_loss_db = 30.0 * u(rng);
    const double expected = 10.0 * std::log10(oracle::link_snr(to_oracle(p)));
    CHECK(link_snr_db(p).value == doctest::Approx(expected).epsilon(1e-9));
  }
}

TEST_CASE("monostatic and bistatic radar SNR follow the radar equation") {
  RadarParams p;
  p.ptx_per_element = PowerDbm{10.0};
  p.tx = ArrayConfig{16, 2, 0.0, 0.5};
  p.rx = ArrayConfig{35, 2, 0.0, 0.5};
  p.target.rcs_m2 = 2.0;
  p.noise = NoiseModel{5.0};
  p.bandwidth_hz = 2e9;
  p.impl_loss_db = 20.0;
  const double d = 50.0;
  const double lambda = oracle::kC / p.carrier_hz;
  const double nt = 256.0, nr = 35.0 * 35.0;
  const double prx = p.ptx_per_element.watts() * nt * nt * nr * lambda * lambda * p.target.rcs_m2 /
                     (std::pow(4.0 * oracle::kPi, 3) * std::pow(d, 4) * 100.0);
  const double noise = 1e-3 * std::pow(10.0, -17.4) * std::pow(10.0, 0.5) * p.bandwidth_hz;
  CHECK(monostatic_snr_db(p, Distance(d)).value == doctest::Approx(10.0 * std::log10(prx / noise)));
  CHECK(bistatic_snr_db(p, Distance(d), Distance(d)).value ==
        doctest::Approx(monostatic_snr_db(p, Distance(d)).value));
  CHECK(bistatic_snr_db(p, Distance(10.0), Distance(20.0)).value -
            bistatic_snr_db(p, Distance(10.0), Distance(40.0)).value ==
        doctest::Approx(20.0 * std::log10(2.0)));
  CHECK_THROWS_AS(monostatic_snr_db(p, Distance(0.0)), DomainError);
  p.target.rcs_m2 = 0.0;
  CHECK_THROWS_AS(monostatic_snr_db(p, Distance(1.0)), DomainError);
}
