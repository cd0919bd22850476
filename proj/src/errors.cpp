#include "braille/errors.hpp"

#include <cstdio>

namespace braille {
namespace {

std::string describe_codepoint(char32_t c) {
  char buf[48];
  if (c >= 0x20 && c < 0x7F)
    std::snprintf(buf, sizeof buf, "'%c'", static_cast<char>(c));
  else
    std::snprintf(buf, sizeof buf, "U+%04X", static_cast<unsigned>(c));
  return buf;
}

}  // namespace

UnsupportedCharacter::UnsupportedCharacter(char32_t codepoint, std::size_t position)
    : Error("unsupported character " + describe_codepoint(codepoint) + " at position " +
            std::to_string(position)),
      codepoint_(codepoint),
      position_(position) {}

AmbiguousCell::AmbiguousCell(std::size_t index, const std::string& why)
    : Error("ambiguous cell at index " + std::to_string(index) + ": " + why), index_(index) {}

ParseError::ParseError(std::size_t line, const std::string& what)
    : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

UnknownByte::UnknownByte(unsigned char byte)
    : Error([byte] {
        char buf[40];
        std::snprintf(buf, sizeof buf, "unknown serial byte 0x%02X", byte);
        return std::string(buf);
      }()),
      byte_(byte) {}

}  // namespace braille
