#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "braille/layout.hpp"

namespace braille {

enum class Backend { P1, P2 };

enum class DotRow { Top, Mid, Bottom };

// Embosser (P1) instructions.
struct Punch {
  DotRow row;
  Side side;
  friend constexpr bool operator==(const Punch&, const Punch&) = default;
};
struct AdvanceCell {
  friend constexpr bool operator==(AdvanceCell, AdvanceCell) = default;
};
struct LineReset {
  friend constexpr bool operator==(LineReset, LineReset) = default;
};

// Extruder (P2) instructions.
struct WaitTemp {
  friend constexpr bool operator==(WaitTemp, WaitTemp) = default;
};
struct MoveTo {
  std::size_t dot_column;
  friend constexpr bool operator==(const MoveTo&, const MoveTo&) = default;
};
struct Extrude {
  friend constexpr bool operator==(Extrude, Extrude) = default;
};
/// Advances the paper one dot row, or with `remainder` set, by whatever is
/// left of the line pitch after the line's two row feeds.
struct FeedRow {
  bool remainder = false;
  friend constexpr bool operator==(const FeedRow&, const FeedRow&) = default;
};

// Both backends.
struct PagePause {
  friend constexpr bool operator==(PagePause, PagePause) = default;
};

using Command =
    std::variant<Punch, AdvanceCell, LineReset, WaitTemp, MoveTo, Extrude, FeedRow, PagePause>;

/// Whether `cmd` belongs to the instruction set of `backend`.
bool command_allowed(Backend backend, const Command& cmd);

/// Dot number (1..6) punched by an embosser command.
int punch_dot(const Punch& p);
Punch punch_for_dot(int dot);

struct DeviceProgram {
  Backend backend = Backend::P1;
  std::vector<Command> commands;

  friend bool operator==(const DeviceProgram&, const DeviceProgram&) = default;
};

/// Throws ProgramInvalid when the stream breaks the structural rules of its
/// backend: foreign commands, punches not closed by ADVANCE/RESET, an
/// EXTRUDE with no WAITTEMP earlier on its page, or a MOVE past the last
/// dot column.
void validate_program(const DeviceProgram& program, const LayoutConfig& cfg);

std::string to_string(const Command& cmd);
std::string serialize_program(const DeviceProgram& program);

/// Parses the one-command-per-line text form. Blank lines are skipped.
/// Throws ParseError on unknown verbs, bad arguments, or verbs that do not
/// belong to `backend`.
DeviceProgram parse_program(std::string_view text, Backend backend);

std::string_view backend_name(Backend b);

}  // namespace braille
