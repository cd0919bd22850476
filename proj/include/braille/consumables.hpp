#pragma once

#include <cstddef>
#include <vector>

#include "braille/machine.hpp"

namespace braille {

/// Thermoplastic feedstock. Capacity is in extruded dots per stick; cost in
/// rupees per stick.
struct ConsumablesConfig {
  std::size_t stick_capacity_dots = 15000;
  double stick_cost = 20.0;

  void validate() const;
};

struct ConsumablesEstimate {
  std::size_t dots = 0;
  double sticks_fractional = 0.0;
  std::size_t sticks_to_buy = 0;
  double cost = 0.0;
};

ConsumablesEstimate estimate_consumables(std::size_t extruded_dots, const ConsumablesConfig& cfg);

/// Counts extruded dots only; embossed pages consume nothing.
ConsumablesEstimate estimate_consumables(const std::vector<EmbossedPage>& pages, const ConsumablesConfig& cfg);

}  // namespace braille
