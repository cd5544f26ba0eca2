#include "isacreq/quantities.hpp"

namespace isacreq {

Decibel db_from_linear(LinearRatio r) {
  if (!(r.value > 0.0) || !std::isfinite(r.value)) {
    throw DomainError("db_from_linear: ratio must be positive and finite, got " +
                      std::to_string(r.value));
  }
  return {10.0 * std::log10(r.value)};
}

LinearRatio linear_from_db(Decibel d) { return {std::pow(10.0, d.value / 10.0)}; }

double PowerDbm::watts() const { return dbm_to_watts(*this); }

PowerDbm PowerDbm::from_watts(double w) {
  if (!(w > 0.0)) {
    throw DomainError("PowerDbm::from_watts: power must be positive");
  }
  return {10.0 * std::log10(w) + 30.0};
}

double dbm_to_watts(PowerDbm p) { return std::pow(10.0, (p.value - 30.0) / 10.0); }

Frequency::Frequency(double hz) : hz_(hz) {
  if (!(hz > 0.0) || !std::isfinite(hz)) throw DomainError("Frequency must be > 0");
}

Bandwidth::Bandwidth(double hz) : hz_(hz) {
  if (!(hz > 0.0) || !std::isfinite(hz)) throw DomainError("Bandwidth must be > 0");
}

Distance::Distance(double m) : m_(m) {
  if (!(m >= 0.0) || !std::isfinite(m)) throw DomainError("Distance must be >= 0");
}

Duration::Duration(double s) : s_(s) {
  if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("Duration must be > 0");
}

Distance wavelength(Frequency f) { return Distance(kSpeedOfLight / f.hz()); }

}  // namespace isacreq
