#include <doctest.h>

#include <random>
#include <sstream>

#include "braille/codegen.hpp"
#include "braille/encoding.hpp"
#include "braille/errors.hpp"
#include "braille/job_handle.hpp"
#include "braille/machine.hpp"
#include "support/oracles.hpp"

using namespace braille;

namespace {

PageLayout layout_text(const std::string& s, const EncodingPolicy& policy = {}) {
  return layout_document(encode_text(s, policy).tokens, {});
}

std::vector<std::pair<std::size_t, Dot>> sim_dots(const JobResult& r) {
  std::vector<std::pair<std::size_t, Dot>> out;
  for (const auto& p : r.pages)
    for (const auto& d : p.dots) out.emplace_back(p.page_index, d.pos);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::pair<std::size_t, Dot>> layout_dots(const PageLayout& l) {
  std::vector<std::pair<std::size_t, Dot>> out;
  for (std::size_t p = 0; p < l.pages.size(); ++p)
    for (const auto& d : l.pages[p].dots) out.emplace_back(p, d);
  std::sort(out.begin(), out.end());
  return out;
}

const MachineConfig kDefaults{};

}  // namespace

TEST_CASE("P-module punch records the dot and swings the servo back") {
  Machine m(Backend::P1, kDefaults);
  m.p_module_step(Punch{DotRow::Top, Side::Left});
  REQUIRE(m.state().current_page.dots.size() == 1);
  CHECK(m.state().current_page.dots[0].pos == Dot{Microns::from_mm(5.0), Microns{}});
  CHECK(m.state().current_page.dots[0].method == DotMethod::Embossed);
  CHECK(m.state().clock == SimTime::from_seconds(0.11));
  CHECK(m.state().servo_angles == std::array<int, 3>{0, 0, 0});
}

TEST_CASE("advance puts exactly one byte on the wire and waits for its ACK") {
  Machine m(Backend::P1, kDefaults);
  m.p_module_step(AdvanceCell{});
  CHECK(m.channel().pending_to_c() == std::deque<std::uint8_t>{0x01});
  CHECK(m.state().awaiting_ack);
  CHECK_THROWS_AS(m.p_module_step(Punch{DotRow::Top, Side::Left}), ProtocolViolation);
  CHECK_THROWS_AS(m.p_module_step(AdvanceCell{}), ProtocolViolation);

  const auto byte = m.channel().receive_at_c();
  REQUIRE(byte);
  m.c_module_step(*byte);
  CHECK(m.state().head_column == 1);
  CHECK(m.channel().pending_to_p() == std::deque<std::uint8_t>{0x06});
  CHECK(m.p_module_poll());
  CHECK_FALSE(m.state().awaiting_ack);
  CHECK(m.state().clock == SimTime::from_seconds(0.90));
}

TEST_CASE("C-module steps") {
  Machine m(Backend::P1, kDefaults);
  for (int i = 0; i < 3; ++i) m.execute(AdvanceCell{});
  m.c_module_step(0x01);
  CHECK(m.state().head_column == 4);
  CHECK(m.channel().pending_to_p().back() == 0x06);
  CHECK_THROWS_AS(m.c_module_step(0xFF), UnknownByte);

  Machine full(Backend::P1, kDefaults);
  for (int i = 0; i < 24; ++i) full.execute(AdvanceCell{});
  CHECK(full.state().head_column == 24);
  CHECK_THROWS_AS(full.execute(Punch{DotRow::Top, Side::Left}), HeadOutOfRange);
  CHECK_THROWS_AS(full.execute(AdvanceCell{}), HeadOutOfRange);

  Machine reset(Backend::P1, kDefaults);
  for (int i = 0; i < 24; ++i) reset.execute(AdvanceCell{});
  reset.execute(LineReset{});
  CHECK(reset.state().head_column == 0);
  CHECK(reset.state().paper_y == Microns::from_mm(10.0));
}

TEST_CASE("stray ACK is a protocol violation") {
  Machine m(Backend::P1, kDefaults);
  m.channel().send_to_p(kAckByte);
  CHECK_THROWS_AS(m.p_module_poll(), ProtocolViolation);
}

TEST_CASE("simulate_job examples") {
  SUBCASE("P1 'a'") {
    const auto r = simulate_job(gen_p1(layout_text("a")), kDefaults);
    CHECK(r.pages.size() == 1);
    CHECK(r.dot_count() == 1);
    CHECK(r.total_time == SimTime::from_seconds(3.01));
    CHECK(r.total_time.us == 110000 + 900000 + 2000000);
    CHECK(r.per_char_times == std::vector<SimTime>{SimTime::from_seconds(1.01)});
  }
  SUBCASE("P1 test line") {
    const std::string line = "the quick brown fox jump";
    REQUIRE(line.size() == 24);
    int dots = 0;
    for (char c : line) dots += oracle::popcount6(oracle::expected_masks(c, false)[0]);
    CHECK(dots == 63);
    const auto r = simulate_job(gen_p1(layout_text(line)), kDefaults);
    SimTime printing;
    for (SimTime t : r.per_char_times) printing += t;
    CHECK(printing.us == 63 * 110000 + 24 * 900000);
    CHECK(printing == SimTime::from_seconds(28.53));
    CHECK(r.total_time == printing + SimTime::from_seconds(2.0));
  }
  SUBCASE("P2 'a' waits for the heater first") {
    const auto r = simulate_job(gen_p2(layout_text("a")), kDefaults);
    REQUIRE(r.ledger.size() >= 2);
    CHECK(r.ledger[0].event == "WAITTEMP");
    const double warm = r.ledger[0].clock.seconds();
    const double closed = oracle::rise_time(25.0, 120.0, 175.0, 75.0);
    CHECK(std::abs(warm - closed) < 0.5);
    CHECK(r.dot_count() == 1);
    CHECK(r.pages[0].dots[0].method == DotMethod::Extruded);
    CHECK(r.pages[0].dots[0].pos == Dot{Microns::from_mm(5.0), Microns{}});
  }
  SUBCASE("empty P1 job") {
    const auto r = simulate_job(gen_p1(layout_text("")), kDefaults);
    CHECK(r.pages.size() == 1);
    CHECK(r.total_time == SimTime{});
  }
}

TEST_CASE("extrude outside the band is refused") {
  Machine m(Backend::P2, kDefaults);
  m.execute(MoveTo{0});
  CHECK_THROWS_AS(m.execute(Extrude{}), ThermalGateViolation);
  CHECK_THROWS_AS(simulate_job({Backend::P2, {MoveTo{0}, Extrude{}}}, kDefaults), ProgramInvalid);

  Machine ok(Backend::P2, kDefaults);
  ok.execute(WaitTemp{});
  CHECK(ok.state().thermal.in_band());
  CHECK_NOTHROW(ok.execute(Extrude{}));
  CHECK_THROWS_AS(ok.execute(MoveTo{48}), HeadOutOfRange);
}

TEST_CASE("P2 feeds advance by row pitch and line remainder") {
  Machine m(Backend::P2, kDefaults);
  m.execute(FeedRow{});
  CHECK(m.state().paper_y == Microns::from_mm(4.0));
  m.execute(FeedRow{});
  m.execute(FeedRow{true});
  CHECK(m.state().paper_y == Microns::from_mm(10.0));
  m.execute(MoveTo{5});
  CHECK(m.state().clock == 3 * SimTime::from_seconds(0.30) + 5 * SimTime::from_seconds(0.05));
}

TEST_CASE("oracle equality, reset postcondition, timing agreement on random documents") {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 40; ++i) {
    const std::string doc = oracle::random_document(rng);
    const PageLayout l = layout_text(doc);
    std::size_t lines = 0;
    for (const auto& p : l.pages) lines += p.lines.size();
    for (Backend b : {Backend::P1, Backend::P2}) {
      const DeviceProgram prog = generate(l, b);
      const JobResult r = simulate_job(prog, kDefaults);
      CHECK(r.pages.size() == l.pages.size());
      CHECK(sim_dots(r) == layout_dots(l));
      CHECK(estimate_time(prog, kDefaults) == r.total_time);
      SimTime last;
      for (const auto& e : r.ledger) {
        CHECK(e.clock >= last);
        last = e.clock;
      }
      if (b == Backend::P1) {
        CHECK(r.resets.size() == lines);
        for (const auto& rr : r.resets) {
          CHECK(rr.head_column_after == 0);
          CHECK(rr.paper_advance == Microns::from_mm(10.0));
        }
      }
    }
  }
}

TEST_CASE("per-character P1 time lies in [1, 3] s for every dot-bearing character") {
  for (const auto& policy : {EncodingPolicy{}, EncodingPolicy{UnknownCharPolicy::SubstituteBlank,
                                                              UppercasePolicy::CapitalSignPrefix}}) {
    for (char c : oracle::supported_charset()) {
      if (c == ' ') continue;
      const auto r = simulate_job(gen_p1(layout_text(std::string(1, c), policy)), kDefaults);
      SimTime t;
      for (SimTime x : r.per_char_times) t += x;
      CAPTURE(c);
      CHECK(t >= SimTime::from_seconds(1.0));
      CHECK(t <= SimTime::from_seconds(3.0));
    }
  }
}

TEST_CASE("page pause hands control to the driver and resets the sheet") {
  const PageLayout l = layout_text(std::string(25, '\n') + "a");
  std::vector<std::size_t> paused;
  const auto r = simulate_job(gen_p1(l), kDefaults, [&](std::size_t page) { paused.push_back(page); });
  CHECK(paused == std::vector<std::size_t>{0});
  REQUIRE(r.pages.size() == 2);
  CHECK(r.pages[1].page_index == 1);
  CHECK(r.pages[1].dots[0].pos == Dot{Microns::from_mm(5.0), Microns{}});
}

TEST_CASE("lossy channel surfaces as a missing ACK, deterministically") {
  MachineConfig cfg;
  cfg.channel = {0.5, 1234};
  const DeviceProgram prog = gen_p1(layout_text("hello world"));
  std::string first, second;
  for (std::string* out : {&first, &second}) {
    try {
      simulate_job(prog, cfg);
      *out = "ok";
    } catch (const ProtocolViolation& e) {
      *out = e.what();
    }
  }
  CHECK(first != "ok");
  CHECK(first == second);
  cfg.channel.drop_probability = 1.5;
  CHECK_THROWS_AS(simulate_job(prog, cfg), ConfigInvalid);
}

TEST_CASE("determinism and CSV exports") {
  const PageLayout l = layout_text("ab\ncd");
  for (Backend b : {Backend::P1, Backend::P2}) {
    std::ostringstream a1, a2, d1, d2;
    const auto r1 = simulate_job(generate(l, b), kDefaults);
    const auto r2 = simulate_job(generate(l, b), kDefaults);
    write_ledger_csv(a1, r1);
    write_ledger_csv(a2, r2);
    write_pages_csv(d1, r1.pages);
    write_pages_csv(d2, r2.pages);
    CHECK(a1.str() == a2.str());
    CHECK(d1.str() == d2.str());
  }
  const auto r = simulate_job(gen_p1(layout_text("a")), kDefaults);
  std::ostringstream ledger, dots;
  write_ledger_csv(ledger, r);
  write_pages_csv(dots, r.pages);
  CHECK(ledger.str() == "event,clock_s\nPUNCH TOP LEFT,0.110000\nADVANCE,1.010000\nRESET,3.010000\nEND,3.010000\n");
  CHECK(dots.str() == "page,x_mm,y_mm,method\n0,5.000,0.000,embossed\n");

  std::istringstream back(dots.str());
  const auto pages = read_pages_csv(back);
  REQUIRE(pages.size() == 1);
  CHECK(pages[0].dots == r.pages[0].dots);
  std::istringstream bad("page,x_mm,y_mm\n0,abc,1\n");
  CHECK_THROWS_AS(read_pages_csv(bad), ParseError);
}

TEST_CASE("job handle runs commands in FIFO order on a worker thread") {
  const DeviceProgram prog = gen_p2(layout_text("ab cd\nef"));
  JobHandle handle(Backend::P2, kDefaults);
  std::vector<std::future<void>> acks;
  for (const auto& c : prog.commands) acks.push_back(handle.submit(c));
  for (auto& f : acks) CHECK_NOTHROW(f.get());
  const JobResult live = handle.finish();
  const JobResult batch = simulate_job(prog, kDefaults);
  CHECK(sim_dots(live) == sim_dots(batch));
  CHECK(live.ledger == batch.ledger);

  JobHandle failing(Backend::P2, kDefaults);
  auto bad = failing.submit(Extrude{});
  auto after = failing.submit(FeedRow{});
  CHECK_THROWS_AS(bad.get(), ThermalGateViolation);
  CHECK_THROWS_AS(after.get(), ThermalGateViolation);
  CHECK_THROWS_AS(failing.sync(), ThermalGateViolation);
}

TEST_CASE("timing config validation") {
  MachineConfig cfg;
  cfg.timing.punch = SimTime{};
  CHECK_THROWS_AS(Machine(Backend::P1, cfg), ConfigInvalid);
}
