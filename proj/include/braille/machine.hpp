#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "braille/layout.hpp"
#include "braille/program.hpp"
#include "braille/thermal.hpp"
#include "braille/units.hpp"

namespace braille {

struct TimingConfig {
  SimTime punch = SimTime::from_seconds(0.11);
  SimTime advance = SimTime::from_seconds(0.90);
  SimTime reset = SimTime::from_seconds(2.0);
  SimTime move_per_column = SimTime::from_seconds(0.05);
  SimTime extrude = SimTime::from_seconds(0.15);
  SimTime feed = SimTime::from_seconds(0.30);

  void validate() const;
};

enum class DotMethod { Embossed, Extruded };

struct PlacedDot {
  Dot pos;
  DotMethod method;
  friend constexpr auto operator<=>(const PlacedDot&, const PlacedDot&) = default;
};

struct EmbossedPage {
  std::size_t page_index = 0;
  std::vector<PlacedDot> dots;  // placement order
};

// P-module <-> C-module wire bytes.
inline constexpr std::uint8_t kAdvanceByte = 0x01;
inline constexpr std::uint8_t kResetByte = 0x02;
inline constexpr std::uint8_t kAckByte = 0x06;

/// Optional lossy link. There is no retransmission, so a dropped byte
/// surfaces as a missing ACK.
struct ChannelFaults {
  double drop_probability = 0.0;
  std::uint64_t seed = 0;
};

/// Two FIFO byte queues, P->C and C->P.
class SerialChannel {
 public:
  explicit SerialChannel(ChannelFaults faults = {});

  void send_to_c(std::uint8_t byte);
  void send_to_p(std::uint8_t byte);
  std::optional<std::uint8_t> receive_at_c();
  std::optional<std::uint8_t> receive_at_p();

  const std::deque<std::uint8_t>& pending_to_c() const { return to_c_; }
  const std::deque<std::uint8_t>& pending_to_p() const { return to_p_; }
  std::size_t dropped() const { return dropped_; }

 private:
  bool delivered();

  ChannelFaults faults_;
  std::mt19937_64 rng_;
  std::deque<std::uint8_t> to_c_;
  std::deque<std::uint8_t> to_p_;
  std::size_t dropped_ = 0;
};

struct MachineConfig {
  LayoutConfig layout;
  TimingConfig timing;
  ThermalConfig thermal;
  ChannelFaults channel;

  void validate() const;
};

struct MachineState {
  std::size_t head_column = 0;  // cell column on P1, dot column on P2
  Microns paper_y;
  std::array<int, 3> servo_angles{};  // degrees, top/mid/bottom servo
  SimTime clock;
  ThermalState thermal;
  SimTime thermal_clock;  // thermal model integrated up to here
  EmbossedPage current_page;
  std::size_t page_index = 0;
  bool awaiting_ack = false;
};

struct LedgerEntry {
  std::string event;
  SimTime clock;
  friend bool operator==(const LedgerEntry&, const LedgerEntry&) = default;
};

/// Observation taken as each RESET completes.
struct ResetRecord {
  std::size_t head_column_after;
  Microns paper_advance;
};

struct JobResult {
  std::vector<EmbossedPage> pages;
  SimTime total_time;
  std::vector<SimTime> per_char_times;  // P1 only: one entry per ADVANCE
  std::vector<LedgerEntry> ledger;
  std::vector<ResetRecord> resets;

  std::size_t dot_count() const;
};

using PauseHandler = std::function<void(std::size_t finished_page)>;

/// Discrete-event model of one printer. Single-threaded; owns its state.
class Machine {
 public:
  Machine(Backend backend, const MachineConfig& cfg);

  /// P-module half of a P1 command. ADVANCE and RESET only put their byte
  /// on the wire; the ACK is collected by p_module_poll().
  void p_module_step(const Command& cmd);
  /// Consumes the next ACK waiting for the P-module, if any.
  bool p_module_poll();
  void c_module_step(std::uint8_t byte);

  /// Runs one command to completion, including the P/C handshake.
  void execute(const Command& cmd);

  /// Closes the page under construction and returns everything observed.
  JobResult finish();

  void set_pause_handler(PauseHandler handler) { on_pause_ = std::move(handler); }

  Backend backend() const { return backend_; }
  const MachineConfig& config() const { return cfg_; }
  const MachineState& state() const { return state_; }
  SerialChannel& channel() { return channel_; }

 private:
  void advance_clock(SimTime dt);
  void sync_thermal();
  void place_dot(Dot pos, DotMethod method);
  void page_pause();
  void close_page();
  void execute_p2(const Command& cmd);

  Backend backend_;
  MachineConfig cfg_;
  MachineState state_;
  SerialChannel channel_;
  PauseHandler on_pause_;
  SimTime cell_start_;
  JobResult result_;
  bool finished_ = false;
};

/// Validates then executes `program` from a cold, homed machine.
JobResult simulate_job(const DeviceProgram& program, const MachineConfig& cfg,
                       PauseHandler on_pause = {});

/// Total job time from the command stream alone, no pages built.
SimTime estimate_time(const DeviceProgram& program, const MachineConfig& cfg);

void write_ledger_csv(std::ostream& out, const JobResult& result);
/// `page,x_mm,y_mm,method`.
void write_pages_csv(std::ostream& out, const std::vector<EmbossedPage>& pages);

/// Reads dot CSV as written by write_pages_csv or write_dot_csv (no method
/// column: dots are taken as embossed). Pages absent from the file up to the
/// highest index come back empty. Throws ParseError.
std::vector<EmbossedPage> read_pages_csv(std::istream& in);

std::string_view method_name(DotMethod m);

}  // namespace braille
