#include "braille/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "braille/errors.hpp"

namespace braille {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value) {
  throw ConfigInvalid("bad value '" + std::string(value) + "' for " + std::string(key));
}

double parse_double(std::string_view key, std::string_view value) {
  // from_chars for double is missing from older libstdc++; strtod on a copy.
  const std::string s(value);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v)) bad_value(key, value);
  return v;
}

std::uint64_t parse_uint(std::string_view key, std::string_view value) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc{} || ptr != value.data() + value.size()) bad_value(key, value);
  return v;
}

using Setter = std::function<void(Settings&, std::string_view key, std::string_view value)>;

Setter count(std::size_t LayoutConfig::*field) {
  return [field](Settings& s, auto k, auto v) { s.machine.layout.*field = parse_uint(k, v); };
}
Setter length(Microns LayoutConfig::*field) {
  return [field](Settings& s, auto k, auto v) { s.machine.layout.*field = Microns::from_mm(parse_double(k, v)); };
}
Setter duration(SimTime TimingConfig::*field) {
  return [field](Settings& s, auto k, auto v) { s.machine.timing.*field = SimTime::from_seconds(parse_double(k, v)); };
}
Setter thermal(double ThermalConfig::*field) {
  return [field](Settings& s, auto k, auto v) { s.machine.thermal.*field = parse_double(k, v); };
}

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      {"unknown_char",
       [](Settings& s, auto k, auto v) {
         if (v == "reject") s.policy.unknown_char = UnknownCharPolicy::Reject;
         else if (v == "blank") s.policy.unknown_char = UnknownCharPolicy::SubstituteBlank;
         else bad_value(k, v);
       }},
      {"uppercase",
       [](Settings& s, auto k, auto v) {
         if (v == "fold") s.policy.uppercase = UppercasePolicy::FoldToLower;
         else if (v == "capital") s.policy.uppercase = UppercasePolicy::CapitalSignPrefix;
         else bad_value(k, v);
       }},
      {"cells_per_line", count(&LayoutConfig::cells_per_line)},
      {"lines_per_page", count(&LayoutConfig::lines_per_page)},
      {"cell_pitch_mm", length(&LayoutConfig::cell_pitch)},
      {"line_pitch_mm", length(&LayoutConfig::line_pitch)},
      {"dot_pair_spacing_mm", length(&LayoutConfig::dot_pair_spacing)},
      {"dot_row_pitch_mm", length(&LayoutConfig::dot_row_pitch)},
      {"page_width_mm", length(&LayoutConfig::page_width)},
      {"margin_mm", length(&LayoutConfig::margin)},
      {"punch_s", duration(&TimingConfig::punch)},
      {"advance_s", duration(&TimingConfig::advance)},
      {"reset_s", duration(&TimingConfig::reset)},
      {"move_per_column_s", duration(&TimingConfig::move_per_column)},
      {"extrude_s", duration(&TimingConfig::extrude)},
      {"feed_s", duration(&TimingConfig::feed)},
      {"setpoint_C", thermal(&ThermalConfig::setpoint_c)},
      {"hysteresis_C", thermal(&ThermalConfig::hysteresis_c)},
      {"ambient_C", thermal(&ThermalConfig::ambient_c)},
      {"heater_power_W", thermal(&ThermalConfig::heater_power_w)},
      {"loss_W_per_C", thermal(&ThermalConfig::loss_w_per_c)},
      {"heat_capacity_J_per_C", thermal(&ThermalConfig::heat_capacity_j_per_c)},
      {"step_s",
       [](Settings& s, auto k, auto v) { s.machine.thermal.step = SimTime::from_seconds(parse_double(k, v)); }},
      {"channel_drop_probability",
       [](Settings& s, auto k, auto v) { s.machine.channel.drop_probability = parse_double(k, v); }},
      {"channel_seed", [](Settings& s, auto k, auto v) { s.machine.channel.seed = parse_uint(k, v); }},
      {"stick_capacity_dots",
       [](Settings& s, auto k, auto v) { s.consumables.stick_capacity_dots = parse_uint(k, v); }},
      {"stick_cost", [](Settings& s, auto k, auto v) { s.consumables.stick_cost = parse_double(k, v); }},
      {"dpmm", [](Settings& s, auto k, auto v) { s.dpmm = parse_double(k, v); }},
      {"dot_radius_mm", [](Settings& s, auto k, auto v) { s.dot_radius_mm = parse_double(k, v); }},
  };
  return table;
}

}  // namespace

RenderConfig Settings::render() const {
  RenderConfig r = RenderConfig::for_layout(machine.layout);
  r.dpmm = dpmm;
  r.dot_radius_mm = dot_radius_mm;
  return r;
}

void Settings::validate() const {
  machine.validate();
  consumables.validate();
  render().validate();
}

void apply_setting(Settings& settings, std::string_view key, std::string_view value) {
  key = trim(key);
  value = trim(value);
  const auto& table = setters();
  auto it = table.find(key);
  if (it == table.end()) throw ConfigInvalid("unknown config key '" + std::string(key) + "'");
  it->second(settings, key, value);
}

void apply_config_text(Settings& settings, std::string_view text) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigInvalid("config line " + std::to_string(line_no) + ": expected key=value");
    apply_setting(settings, line.substr(0, eq), line.substr(eq + 1));
  }
}

void load_config_file(Settings& settings, const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigInvalid("cannot read config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  apply_config_text(settings, ss.str());
}

std::vector<std::string> setting_keys() {
  std::vector<std::string> keys;
  for (const auto& [k, _] : setters()) keys.push_back(k);
  return keys;
}

}  // namespace braille
