#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace braille::cli {

// Exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUnsupportedCharacter = 2;
inline constexpr int kExitConfigInvalid = 3;

/// Environment variable naming a default config file.
inline constexpr const char* kConfigEnvVar = "BRAILLECTL_CONFIG";

/// Entry point of `braillectl`. args[0] is the program name. `in` feeds
/// page-change prompts and typewriter keystrokes; reports go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace braille::cli
