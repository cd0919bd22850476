#include "braille/program.hpp"

#include <charconv>
#include <sstream>

#include "braille/errors.hpp"

namespace braille {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::vector<std::string_view> split_words(std::string_view line) {
  std::vector<std::string_view> words;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && line[i] == ' ') ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ') ++j;
    if (j > i) words.push_back(line.substr(i, j - i));
    i = j;
  }
  return words;
}

}  // namespace

bool command_allowed(Backend backend, const Command& cmd) {
  if (std::holds_alternative<PagePause>(cmd)) return true;
  const bool p1 = std::holds_alternative<Punch>(cmd) || std::holds_alternative<AdvanceCell>(cmd) ||
                  std::holds_alternative<LineReset>(cmd);
  return backend == Backend::P1 ? p1 : !p1;
}

int punch_dot(const Punch& p) {
  return static_cast<int>(p.row) + 1 + (p.side == Side::Right ? 3 : 0);
}

Punch punch_for_dot(int dot) {
  if (dot < 1 || dot > 6) throw std::out_of_range("dot must be in 1..6");
  const int row = (dot - 1) % 3;
  return {static_cast<DotRow>(row), dot > 3 ? Side::Right : Side::Left};
}

void validate_program(const DeviceProgram& program, const LayoutConfig& cfg) {
  bool punch_open = false;
  bool heated = false;
  const std::size_t column_bound = 2 * cfg.cells_per_line;
  for (std::size_t i = 0; i < program.commands.size(); ++i) {
    const Command& cmd = program.commands[i];
    auto fail = [&](const std::string& why) {
      throw ProgramInvalid("command " + std::to_string(i + 1) + " (" + to_string(cmd) + "): " + why);
    };
    if (!command_allowed(program.backend, cmd))
      fail("not part of the " + std::string(backend_name(program.backend)) + " instruction set");
    std::visit(Overloaded{
                   [&](const Punch&) { punch_open = true; },
                   [&](AdvanceCell) { punch_open = false; },
                   [&](LineReset) { punch_open = false; },
                   [&](WaitTemp) { heated = true; },
                   [&](const MoveTo& m) {
                     if (m.dot_column >= column_bound) fail("dot column out of range");
                   },
                   [&](Extrude) {
                     if (!heated) fail("no WAITTEMP earlier on this page");
                   },
                   [&](const FeedRow&) {},
                   [&](PagePause) {
                     if (punch_open) fail("punches not closed by ADVANCE or RESET");
                     heated = false;
                   },
               },
               cmd);
  }
  if (punch_open) throw ProgramInvalid("program ends with punches not closed by ADVANCE or RESET");
}

std::string to_string(const Command& cmd) {
  return std::visit(
      Overloaded{
          [](const Punch& p) {
            static constexpr const char* rows[] = {"TOP", "MID", "BOTTOM"};
            return std::string("PUNCH ") + rows[static_cast<int>(p.row)] +
                   (p.side == Side::Left ? " LEFT" : " RIGHT");
          },
          [](AdvanceCell) { return std::string("ADVANCE"); },
          [](LineReset) { return std::string("RESET"); },
          [](WaitTemp) { return std::string("WAITTEMP"); },
          [](const MoveTo& m) { return "MOVE " + std::to_string(m.dot_column); },
          [](Extrude) { return std::string("EXTRUDE"); },
          [](const FeedRow& f) { return std::string(f.remainder ? "FEED REMAINDER" : "FEED"); },
          [](PagePause) { return std::string("PAUSE"); },
      },
      cmd);
}

std::string serialize_program(const DeviceProgram& program) {
  std::string out;
  for (const Command& c : program.commands) {
    out += to_string(c);
    out.push_back('\n');
  }
  return out;
}

DeviceProgram parse_program(std::string_view text, Backend backend) {
  DeviceProgram program{backend, {}};
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const auto words = split_words(line);
    if (words.empty()) continue;

    auto arity = [&](std::size_t n) {
      if (words.size() != n + 1)
        throw ParseError(line_no, std::string(words[0]) + " takes " + std::to_string(n) + " argument(s)");
    };
    const std::string_view verb = words[0];
    Command cmd;
    if (verb == "PUNCH") {
      arity(2);
      Punch p{};
      if (words[1] == "TOP") p.row = DotRow::Top;
      else if (words[1] == "MID") p.row = DotRow::Mid;
      else if (words[1] == "BOTTOM") p.row = DotRow::Bottom;
      else throw ParseError(line_no, "bad punch row '" + std::string(words[1]) + "'");
      if (words[2] == "LEFT") p.side = Side::Left;
      else if (words[2] == "RIGHT") p.side = Side::Right;
      else throw ParseError(line_no, "bad punch side '" + std::string(words[2]) + "'");
      cmd = p;
    } else if (verb == "ADVANCE") {
      arity(0);
      cmd = AdvanceCell{};
    } else if (verb == "RESET") {
      arity(0);
      cmd = LineReset{};
    } else if (verb == "PAUSE") {
      arity(0);
      cmd = PagePause{};
    } else if (verb == "WAITTEMP") {
      arity(0);
      cmd = WaitTemp{};
    } else if (verb == "MOVE") {
      arity(1);
      std::size_t col = 0;
      const auto arg = words[1];
      auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), col);
      if (ec != std::errc{} || ptr != arg.data() + arg.size())
        throw ParseError(line_no, "bad MOVE column '" + std::string(arg) + "'");
      cmd = MoveTo{col};
    } else if (verb == "EXTRUDE") {
      arity(0);
      cmd = Extrude{};
    } else if (verb == "FEED") {
      if (words.size() == 1) {
        cmd = FeedRow{false};
      } else if (words.size() == 2 && words[1] == "REMAINDER") {
        cmd = FeedRow{true};
      } else {
        throw ParseError(line_no, "FEED takes no argument or REMAINDER");
      }
    } else {
      throw ParseError(line_no, "unknown verb '" + std::string(verb) + "'");
    }
    if (!command_allowed(backend, cmd))
      throw ParseError(line_no, std::string(verb) + " is not a " + std::string(backend_name(backend)) + " command");
    program.commands.push_back(cmd);
  }
  return program;
}

std::string_view backend_name(Backend b) { return b == Backend::P1 ? "p1" : "p2"; }

}  // namespace braille
