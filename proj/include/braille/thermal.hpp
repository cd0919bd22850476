#pragma once

#include "braille/units.hpp"

namespace braille {

/// First-order heater block under bang-bang control with a hysteresis band.
struct ThermalConfig {
  double setpoint_c = 125.0;
  double hysteresis_c = 5.0;
  double ambient_c = 25.0;
  double heater_power_w = 30.0;
  double loss_w_per_c = 0.2;
  double heat_capacity_j_per_c = 15.0;
  SimTime step = SimTime::from_seconds(0.1);

  /// Throws ConfigInvalid, including when the band is unreachable with the
  /// heater held on.
  void validate() const;

  double band_low() const { return setpoint_c - hysteresis_c; }
  double band_high() const { return setpoint_c + hysteresis_c; }
  /// Largest single-step temperature rise: step * power / capacity.
  double step_bound() const { return step.seconds() * heater_power_w / heat_capacity_j_per_c; }
};

struct ThermalState {
  double temp_c = 25.0;
  bool heater_on = true;
  ThermalConfig cfg;

  /// At ambient with the heater on.
  static ThermalState cold(const ThermalConfig& cfg);

  bool in_band() const { return temp_c >= cfg.band_low() && temp_c <= cfg.band_high(); }
  /// Band widened by one step bound on each side; sampled control can
  /// overshoot the switching thresholds by at most one step.
  bool in_guard_band() const {
    const double d = cfg.step_bound();
    return temp_c >= cfg.band_low() - d && temp_c <= cfg.band_high() + d;
  }
};

/// One explicit-Euler step followed by hysteresis switching on the new
/// temperature.
ThermalState thermal_step(const ThermalState& t);

}  // namespace braille
