#include "braille/units.hpp"

#include <cinttypes>
#include <cstdio>
#include <cstdlib>

namespace braille {
namespace {

std::string fixed_point(std::int64_t value, std::int64_t scale, int digits) {
  const char* sign = value < 0 ? "-" : "";
  const std::int64_t mag = std::llabs(value);
  char buf[48];
  std::snprintf(buf, sizeof buf, "%s%" PRId64 ".%0*" PRId64, sign, mag / scale, digits, mag % scale);
  return buf;
}

}  // namespace

std::string format_mm(Microns m) { return fixed_point(m.value, 1000, 3); }
std::string format_seconds(SimTime t) { return fixed_point(t.us, 1000000, 6); }

}  // namespace braille
