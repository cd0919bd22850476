#pragma once

#include <string_view>

#include "braille/codegen.hpp"
#include "braille/config.hpp"
#include "braille/encoding.hpp"
#include "braille/layout.hpp"
#include "braille/machine.hpp"

namespace braille {

struct CompiledJob {
  EncodedText encoded;
  PageLayout layout;
  DeviceProgram program;
};

/// encode -> layout -> codegen.
CompiledJob compile_text(std::string_view utf8, Backend backend, const Settings& settings);

/// Print time of a document without simulating it.
SimTime estimate_time(std::string_view utf8, Backend backend, const Settings& settings);

}  // namespace braille
