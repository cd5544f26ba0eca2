#pragma once

// Unit-carrying scalars and dB/linear conversions shared by every module.
// Interfaces speak dB/dBm/degrees; arithmetic inside the engine is linear SI.

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace isacreq {

inline constexpr double kSpeedOfLight = 299'792'458.0;  // m/s, exact SI
inline constexpr double kThermalDensityDbmPerHz = -174.0;
inline constexpr double kPi = std::numbers::pi;

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct LinearRatio {
  double value = 1.0;
};

struct Decibel {
  double value = 0.0;
};

Decibel db_from_linear(LinearRatio r);
LinearRatio linear_from_db(Decibel d);

inline double db(double linear) { return db_from_linear({linear}).value; }
inline double undb(double decibels) { return linear_from_db({decibels}).value; }

struct PowerDbm {
  double value = 0.0;

  double watts() const;
  static PowerDbm from_watts(double w);
};

double dbm_to_watts(PowerDbm p);

class Frequency {
 public:
  explicit Frequency(double hz);
  double hz() const { return hz_; }

 private:
  double hz_;
};

class Bandwidth {
 public:
  explicit Bandwidth(double hz);
  double hz() const { return hz_; }

 private:
  double hz_;
};

class Distance {
 public:
  explicit Distance(double m);
  double m() const { return m_; }

 private:
  double m_;
};

class Duration {
 public:
  explicit Duration(double s);
  double s() const { return s_; }

 private:
  double s_;
};

class Angle {
 public:
  constexpr Angle() = default;
  static Angle radians(double r) { return Angle(r); }
  static Angle degrees(double d) { return Angle(d * kPi / 180.0); }
  double rad() const { return rad_; }
  double deg() const { return rad_ * 180.0 / kPi; }

 private:
  constexpr explicit Angle(double r) : rad_(r) {}
  double rad_ = 0.0;
};

Distance wavelength(Frequency f);

inline double deg_to_rad(double d) { return d * kPi / 180.0; }
inline double rad_to_deg(double r) { return r * 180.0 / kPi; }

}  // namespace isacreq
