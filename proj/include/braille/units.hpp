#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <string>

namespace braille {

/// Physical length stored as whole micrometres so that geometry computed by
/// different routes (layout formula, simulated carriage motion) compares
/// exactly.
struct Microns {
  std::int64_t value = 0;

  static constexpr Microns from_mm(double mm) {
    return Microns{static_cast<std::int64_t>(mm >= 0 ? mm * 1000.0 + 0.5 : mm * 1000.0 - 0.5)};
  }
  constexpr double mm() const { return static_cast<double>(value) / 1000.0; }

  friend constexpr auto operator<=>(Microns, Microns) = default;
  friend constexpr Microns operator+(Microns a, Microns b) { return {a.value + b.value}; }
  friend constexpr Microns operator-(Microns a, Microns b) { return {a.value - b.value}; }
  friend constexpr Microns operator*(std::int64_t k, Microns a) { return {k * a.value}; }
  constexpr Microns& operator+=(Microns o) {
    value += o.value;
    return *this;
  }
};

/// Simulated time in whole microseconds.
struct SimTime {
  std::int64_t us = 0;

  static constexpr SimTime from_seconds(double s) {
    return SimTime{static_cast<std::int64_t>(s >= 0 ? s * 1e6 + 0.5 : s * 1e6 - 0.5)};
  }
  constexpr double seconds() const { return static_cast<double>(us) / 1e6; }

  friend constexpr auto operator<=>(SimTime, SimTime) = default;
  friend constexpr SimTime operator+(SimTime a, SimTime b) { return {a.us + b.us}; }
  friend constexpr SimTime operator-(SimTime a, SimTime b) { return {a.us - b.us}; }
  friend constexpr SimTime operator*(std::int64_t k, SimTime a) { return {k * a.us}; }
  constexpr SimTime& operator+=(SimTime o) {
    us += o.us;
    return *this;
  }
};

// Fixed-point text forms: "12.345" for lengths, "3.010000" for times.
std::string format_mm(Microns m);
std::string format_seconds(SimTime t);

}  // namespace braille
