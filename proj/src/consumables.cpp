#include "braille/consumables.hpp"

#include "braille/errors.hpp"

namespace braille {

void ConsumablesConfig::validate() const {
  if (stick_capacity_dots < 1) throw ConfigInvalid("consumables config: stick_capacity_dots must be at least 1");
  if (!(stick_cost >= 0)) throw ConfigInvalid("consumables config: stick_cost must be non-negative");
}

ConsumablesEstimate estimate_consumables(std::size_t extruded_dots, const ConsumablesConfig& cfg) {
  cfg.validate();
  ConsumablesEstimate e;
  e.dots = extruded_dots;
  e.sticks_fractional = static_cast<double>(extruded_dots) / static_cast<double>(cfg.stick_capacity_dots);
  e.sticks_to_buy = (extruded_dots + cfg.stick_capacity_dots - 1) / cfg.stick_capacity_dots;
  e.cost = static_cast<double>(e.sticks_to_buy) * cfg.stick_cost;
  return e;
}

ConsumablesEstimate estimate_consumables(const std::vector<EmbossedPage>& pages, const ConsumablesConfig& cfg) {
  std::size_t n = 0;
  for (const auto& p : pages)
    for (const auto& d : p.dots)
      if (d.method == DotMethod::Extruded) ++n;
  return estimate_consumables(n, cfg);
}

}  // namespace braille
