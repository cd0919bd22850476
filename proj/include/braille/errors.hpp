#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace braille {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedCharacter : public Error {
 public:
  UnsupportedCharacter(char32_t codepoint, std::size_t position);
  char32_t codepoint() const { return codepoint_; }
  std::size_t position() const { return position_; }

 private:
  char32_t codepoint_;
  std::size_t position_;
};

class AmbiguousCell : public Error {
 public:
  AmbiguousCell(std::size_t index, const std::string& why);
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

/// Any configuration whose invariants do not hold (layout, timing, thermal,
/// consumables, or a malformed config file).
class ConfigInvalid : public Error {
 public:
  using Error::Error;
};

class LayoutConfigInvalid : public ConfigInvalid {
 public:
  using ConfigInvalid::ConfigInvalid;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class ProgramInvalid : public Error {
 public:
  using Error::Error;
};

class ProtocolViolation : public Error {
 public:
  using Error::Error;
};

class UnknownByte : public Error {
 public:
  explicit UnknownByte(unsigned char byte);
  unsigned char byte() const { return byte_; }

 private:
  unsigned char byte_;
};

class ThermalGateViolation : public Error {
 public:
  using Error::Error;
};

class HeadOutOfRange : public Error {
 public:
  using Error::Error;
};

}  // namespace braille
