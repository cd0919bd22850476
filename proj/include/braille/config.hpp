#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "braille/consumables.hpp"
#include "braille/encoding.hpp"
#include "braille/layout.hpp"
#include "braille/machine.hpp"
#include "braille/render.hpp"

namespace braille {

/// Every tunable of the pipeline in one place.
struct Settings {
  EncodingPolicy policy;
  MachineConfig machine;
  ConsumablesConfig consumables;
  double dpmm = 4.0;
  double dot_radius_mm = 0.75;

  const LayoutConfig& layout() const { return machine.layout; }
  RenderConfig render() const;
  /// Throws ConfigInvalid (LayoutConfigInvalid for layout problems).
  void validate() const;
};

/// Sets one `key=value` pair. Keys are the plain field names, e.g.
/// `cells_per_line`, `punch_s`, `setpoint_C`, `unknown_char`.
/// Throws ConfigInvalid on an unknown key or unparsable value.
void apply_setting(Settings& settings, std::string_view key, std::string_view value);

/// Applies `key=value` text, one per line; `#` starts a comment.
void apply_config_text(Settings& settings, std::string_view text);
void load_config_file(Settings& settings, const std::filesystem::path& path);

std::vector<std::string> setting_keys();

}  // namespace braille
