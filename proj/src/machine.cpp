#include "braille/machine.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
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

constexpr int kServoSwingDeg = 90;

Microns feed_distance(const LayoutConfig& cfg, const FeedRow& f) {
  return f.remainder ? cfg.line_pitch - 2 * cfg.dot_row_pitch : cfg.dot_row_pitch;
}

SimTime move_time(const TimingConfig& t, std::size_t from, std::size_t to) {
  const auto dist = static_cast<std::int64_t>(from > to ? from - to : to - from);
  return dist * t.move_per_column;
}

}  // namespace

void TimingConfig::validate() const {
  for (SimTime t : {punch, advance, reset, move_per_column, extrude, feed})
    if (t <= SimTime{}) throw ConfigInvalid("timing config: all durations must be positive");
}

void MachineConfig::validate() const {
  layout.validate();
  timing.validate();
  thermal.validate();
  if (!(channel.drop_probability >= 0.0 && channel.drop_probability <= 1.0))
    throw ConfigInvalid("channel drop probability must be in [0, 1]");
}

std::size_t JobResult::dot_count() const {
  std::size_t n = 0;
  for (const auto& p : pages) n += p.dots.size();
  return n;
}

SerialChannel::SerialChannel(ChannelFaults faults) : faults_(faults), rng_(faults.seed) {}

bool SerialChannel::delivered() {
  if (faults_.drop_probability <= 0.0) return true;
  // 53 random bits -> [0, 1); mt19937_64 output is fully specified.
  const double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
  if (u < faults_.drop_probability) {
    ++dropped_;
    return false;
  }
  return true;
}

void SerialChannel::send_to_c(std::uint8_t byte) {
  if (delivered()) to_c_.push_back(byte);
}

void SerialChannel::send_to_p(std::uint8_t byte) {
  if (delivered()) to_p_.push_back(byte);
}

std::optional<std::uint8_t> SerialChannel::receive_at_c() {
  if (to_c_.empty()) return std::nullopt;
  const auto b = to_c_.front();
  to_c_.pop_front();
  return b;
}

std::optional<std::uint8_t> SerialChannel::receive_at_p() {
  if (to_p_.empty()) return std::nullopt;
  const auto b = to_p_.front();
  to_p_.pop_front();
  return b;
}

Machine::Machine(Backend backend, const MachineConfig& cfg)
    : backend_(backend), cfg_(cfg), channel_(cfg.channel) {
  cfg_.validate();
  state_.thermal = ThermalState::cold(cfg_.thermal);
}

void Machine::advance_clock(SimTime dt) {
  state_.clock += dt;
  if (backend_ == Backend::P2) sync_thermal();
}

void Machine::sync_thermal() {
  while (state_.thermal_clock + cfg_.thermal.step <= state_.clock) {
    state_.thermal = thermal_step(state_.thermal);
    state_.thermal_clock += cfg_.thermal.step;
  }
}

void Machine::place_dot(Dot pos, DotMethod method) {
  state_.current_page.dots.push_back({pos, method});
}

void Machine::p_module_step(const Command& cmd) {
  if (backend_ != Backend::P1) throw ProgramInvalid("p_module_step on a non-P1 machine");
  if (state_.awaiting_ack)
    throw ProtocolViolation("P-module acted on '" + to_string(cmd) + "' while an ACK is outstanding");
  std::visit(Overloaded{
                 [&](const Punch& p) {
                   if (state_.head_column >= cfg_.layout.cells_per_line)
                     throw HeadOutOfRange("punch at column " + std::to_string(state_.head_column) +
                                          " past the line bound");
                   const int servo = static_cast<int>(p.row);
                   // Clockwise makes the right hole, anticlockwise the left.
                   state_.servo_angles[servo] = p.side == Side::Right ? kServoSwingDeg : -kServoSwingDeg;
                   Dot pos = dot_position(cfg_.layout, 0, state_.head_column, servo, p.side);
                   pos.y += state_.paper_y;
                   place_dot(pos, DotMethod::Embossed);
                   state_.servo_angles[servo] = 0;
                   advance_clock(cfg_.timing.punch);
                 },
                 [&](AdvanceCell) {
                   channel_.send_to_c(kAdvanceByte);
                   state_.awaiting_ack = true;
                 },
                 [&](LineReset) {
                   channel_.send_to_c(kResetByte);
                   state_.awaiting_ack = true;
                 },
                 [&](PagePause) { page_pause(); },
                 [&](const auto& other) {
                   throw ProgramInvalid("'" + to_string(Command{other}) + "' is not a P1 command");
                 },
             },
             cmd);
}

bool Machine::p_module_poll() {
  auto byte = channel_.receive_at_p();
  if (!byte) return false;
  if (*byte != kAckByte) throw UnknownByte(*byte);
  if (!state_.awaiting_ack) throw ProtocolViolation("ACK received with nothing outstanding");
  state_.awaiting_ack = false;
  return true;
}

void Machine::c_module_step(std::uint8_t byte) {
  switch (byte) {
    case kAdvanceByte:
      if (state_.head_column >= cfg_.layout.cells_per_line)
        throw HeadOutOfRange("advance past column " + std::to_string(cfg_.layout.cells_per_line));
      ++state_.head_column;
      advance_clock(cfg_.timing.advance);
      break;
    case kResetByte: {
      const Microns before = state_.paper_y;
      state_.head_column = 0;
      state_.paper_y += cfg_.layout.line_pitch;
      advance_clock(cfg_.timing.reset);
      result_.resets.push_back({state_.head_column, state_.paper_y - before});
      break;
    }
    default:
      throw UnknownByte(byte);
  }
  channel_.send_to_p(kAckByte);
}

void Machine::page_pause() {
  if (on_pause_) on_pause_(state_.page_index);
  close_page();
  ++state_.page_index;
  state_.current_page = EmbossedPage{state_.page_index, {}};
  state_.paper_y = Microns{};
  state_.head_column = 0;
  cell_start_ = state_.clock;
}

void Machine::close_page() {
  state_.current_page.page_index = state_.page_index;
  result_.pages.push_back(std::move(state_.current_page));
  state_.current_page = EmbossedPage{};
}

void Machine::execute_p2(const Command& cmd) {
  std::visit(Overloaded{
                 [&](WaitTemp) {
                   sync_thermal();
                   while (!state_.thermal.in_band()) {
                     state_.thermal = thermal_step(state_.thermal);
                     state_.thermal_clock += cfg_.thermal.step;
                     state_.clock = std::max(state_.clock, state_.thermal_clock);
                   }
                 },
                 [&](const MoveTo& m) {
                   if (m.dot_column >= 2 * cfg_.layout.cells_per_line)
                     throw HeadOutOfRange("move to dot column " + std::to_string(m.dot_column));
                   const SimTime dt = move_time(cfg_.timing, state_.head_column, m.dot_column);
                   state_.head_column = m.dot_column;
                   advance_clock(dt);
                 },
                 [&](Extrude) {
                   if (!state_.thermal.in_guard_band())
                     throw ThermalGateViolation("extrude at " + std::to_string(state_.thermal.temp_c) +
                                                " C, outside the control band");
                   const std::size_t col = state_.head_column / 2;
                   const Side side = state_.head_column % 2 ? Side::Right : Side::Left;
                   Dot pos = dot_position(cfg_.layout, 0, col, 0, side);
                   pos.y += state_.paper_y;
                   place_dot(pos, DotMethod::Extruded);
                   advance_clock(cfg_.timing.extrude);
                 },
                 [&](const FeedRow& f) {
                   state_.paper_y += feed_distance(cfg_.layout, f);
                   advance_clock(cfg_.timing.feed);
                 },
                 [&](PagePause) { page_pause(); },
                 [&](const auto& other) {
                   throw ProgramInvalid("'" + to_string(Command{other}) + "' is not a P2 command");
                 },
             },
             cmd);
}

void Machine::execute(const Command& cmd) {
  if (finished_) throw std::logic_error("Machine::execute after finish");
  if (backend_ == Backend::P1) {
    p_module_step(cmd);
    if (state_.awaiting_ack) {
      while (auto byte = channel_.receive_at_c()) c_module_step(*byte);
      if (!p_module_poll())
        throw ProtocolViolation("no ACK for '" + to_string(cmd) + "' (byte lost on the link)");
    }
    if (std::holds_alternative<AdvanceCell>(cmd)) {
      result_.per_char_times.push_back(state_.clock - cell_start_);
      cell_start_ = state_.clock;
    } else if (std::holds_alternative<LineReset>(cmd)) {
      cell_start_ = state_.clock;
    }
  } else {
    execute_p2(cmd);
  }
  result_.ledger.push_back({to_string(cmd), state_.clock});
}

JobResult Machine::finish() {
  if (finished_) throw std::logic_error("Machine::finish called twice");
  finished_ = true;
  close_page();
  result_.total_time = state_.clock;
  result_.ledger.push_back({"END", state_.clock});
  return std::move(result_);
}

JobResult simulate_job(const DeviceProgram& program, const MachineConfig& cfg, PauseHandler on_pause) {
  validate_program(program, cfg.layout);
  Machine machine(program.backend, cfg);
  machine.set_pause_handler(std::move(on_pause));
  for (const Command& c : program.commands) machine.execute(c);
  return machine.finish();
}

SimTime estimate_time(const DeviceProgram& program, const MachineConfig& cfg) {
  const TimingConfig& t = cfg.timing;
  SimTime clock;
  if (program.backend == Backend::P1) {
    for (const Command& c : program.commands) {
      if (std::holds_alternative<Punch>(c)) clock += t.punch;
      else if (std::holds_alternative<AdvanceCell>(c)) clock += t.advance;
      else if (std::holds_alternative<LineReset>(c)) clock += t.reset;
    }
    return clock;
  }

  // P2: only the heater and the head position carry state between commands.
  ThermalState thermal = ThermalState::cold(cfg.thermal);
  SimTime thermal_clock;
  std::size_t head = 0;
  auto integrate_to = [&](SimTime until) {
    while (thermal_clock + cfg.thermal.step <= until) {
      thermal = thermal_step(thermal);
      thermal_clock += cfg.thermal.step;
    }
  };
  for (const Command& c : program.commands) {
    if (std::holds_alternative<WaitTemp>(c)) {
      integrate_to(clock);
      while (!thermal.in_band()) {
        thermal = thermal_step(thermal);
        thermal_clock += cfg.thermal.step;
      }
      clock = std::max(clock, thermal_clock);
    } else if (auto* m = std::get_if<MoveTo>(&c)) {
      clock += move_time(t, head, m->dot_column);
      head = m->dot_column;
    } else if (std::holds_alternative<Extrude>(c)) {
      clock += t.extrude;
    } else if (std::holds_alternative<FeedRow>(c)) {
      clock += t.feed;
    } else if (std::holds_alternative<PagePause>(c)) {
      head = 0;
    }
    integrate_to(clock);
  }
  return clock;
}

void write_ledger_csv(std::ostream& out, const JobResult& result) {
  out << "event,clock_s\n";
  for (const auto& e : result.ledger) out << e.event << ',' << format_seconds(e.clock) << '\n';
}

void write_pages_csv(std::ostream& out, const std::vector<EmbossedPage>& pages) {
  out << "page,x_mm,y_mm,method\n";
  for (const auto& page : pages)
    for (const auto& d : page.dots)
      out << page.page_index << ',' << format_mm(d.pos.x) << ',' << format_mm(d.pos.y) << ','
          << method_name(d.method) << '\n';
}

std::vector<EmbossedPage> read_pages_csv(std::istream& in) {
  std::vector<EmbossedPage> pages;
  std::string line;
  std::size_t line_no = 0;
  auto number = [&](const std::string& field) {
    char* end = nullptr;
    const double v = std::strtod(field.c_str(), &end);
    if (field.empty() || end != field.c_str() + field.size()) throw ParseError(line_no, "bad number '" + field + "'");
    return v;
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line_no == 1 && line.rfind("page,", 0) == 0) continue;
    std::vector<std::string> fields;
    std::istringstream ss(line);
    for (std::string f; std::getline(ss, f, ',');) fields.push_back(f);
    if (fields.size() != 3 && fields.size() != 4) throw ParseError(line_no, "expected 3 or 4 fields");
    const double page_f = number(fields[0]);
    if (page_f < 0 || page_f != static_cast<double>(static_cast<std::size_t>(page_f)))
      throw ParseError(line_no, "bad page index '" + fields[0] + "'");
    const auto page = static_cast<std::size_t>(page_f);
    DotMethod method = DotMethod::Embossed;
    if (fields.size() == 4) {
      if (fields[3] == "extruded") method = DotMethod::Extruded;
      else if (fields[3] != "embossed") throw ParseError(line_no, "bad method '" + fields[3] + "'");
    }
    while (pages.size() <= page) pages.push_back(EmbossedPage{pages.size(), {}});
    pages[page].dots.push_back({{Microns::from_mm(number(fields[1])), Microns::from_mm(number(fields[2]))}, method});
  }
  return pages;
}

std::string_view method_name(DotMethod m) { return m == DotMethod::Embossed ? "embossed" : "extruded"; }

}  // namespace braille
