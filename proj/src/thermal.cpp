#include "braille/thermal.hpp"

#include "braille/errors.hpp"

namespace braille {

void ThermalConfig::validate() const {
  auto fail = [](const char* why) { throw ConfigInvalid(std::string("thermal config: ") + why); };
  if (hysteresis_c < 0) fail("hysteresis_C must be non-negative");
  if (heat_capacity_j_per_c <= 0) fail("heat_capacity_J_per_C must be positive");
  if (heater_power_w <= 0) fail("heater_power_W must be positive");
  if (loss_w_per_c < 0) fail("loss_W_per_C must be non-negative");
  if (step <= SimTime{}) fail("step_s must be positive");
  if (ambient_c > band_high()) fail("ambient_C lies above the control band");
  if (loss_w_per_c > 0 && ambient_c + heater_power_w / loss_w_per_c <= band_low())
    fail("band is unreachable: ambient + power/loss does not exceed setpoint - hysteresis");
}

ThermalState ThermalState::cold(const ThermalConfig& cfg) { return ThermalState{cfg.ambient_c, true, cfg}; }

ThermalState thermal_step(const ThermalState& t) {
  ThermalState next = t;
  const double u = t.heater_on ? 1.0 : 0.0;
  const double net_w = t.cfg.heater_power_w * u - t.cfg.loss_w_per_c * (t.temp_c - t.cfg.ambient_c);
  next.temp_c = t.temp_c + t.cfg.step.seconds() * net_w / t.cfg.heat_capacity_j_per_c;
  if (next.temp_c >= t.cfg.band_high())
    next.heater_on = false;
  else if (next.temp_c <= t.cfg.band_low())
    next.heater_on = true;
  return next;
}

}  // namespace braille
