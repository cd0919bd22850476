#include <doctest.h>

#include <random>

#include "braille/codegen.hpp"
#include "braille/encoding.hpp"
#include "braille/errors.hpp"
#include "support/oracles.hpp"

using namespace braille;

namespace {

PageLayout layout_of(std::initializer_list<Token> tokens) {
  std::vector<Token> v(tokens);
  return layout_document(v, {});
}

PageLayout layout_text(const std::string& s) { return layout_document(encode_text(s, {}).tokens, {}); }

using Cmds = std::vector<Command>;

}  // namespace

TEST_CASE("punch commands cover the six dots bijectively") {
  CHECK(punch_dot({DotRow::Top, Side::Left}) == 1);
  CHECK(punch_dot({DotRow::Mid, Side::Left}) == 2);
  CHECK(punch_dot({DotRow::Bottom, Side::Left}) == 3);
  CHECK(punch_dot({DotRow::Top, Side::Right}) == 4);
  CHECK(punch_dot({DotRow::Mid, Side::Right}) == 5);
  CHECK(punch_dot({DotRow::Bottom, Side::Right}) == 6);
  for (int d = 1; d <= 6; ++d) CHECK(punch_dot(punch_for_dot(d)) == d);
}

TEST_CASE("gen_p1 examples") {
  CHECK(gen_p1(layout_of({BrailleCell{1}})).commands ==
        Cmds{Punch{DotRow::Top, Side::Left}, AdvanceCell{}, LineReset{}});
  CHECK(gen_p1(layout_of({BrailleCell{}})).commands == Cmds{AdvanceCell{}, LineReset{}});

  const auto full = gen_p1(layout_text(std::string(24, 'b')));
  std::size_t advances = 0, resets = 0;
  for (const auto& c : full.commands) {
    advances += std::holds_alternative<AdvanceCell>(c);
    resets += std::holds_alternative<LineReset>(c);
  }
  CHECK(advances == 24);
  CHECK(resets == 1);
  CHECK(std::holds_alternative<LineReset>(full.commands.back()));

  // Punches come in dot order 1..6.
  CHECK(gen_p1(layout_of({BrailleCell{6, 1, 5}})).commands ==
        Cmds{Punch{DotRow::Top, Side::Left}, Punch{DotRow::Mid, Side::Right}, Punch{DotRow::Bottom, Side::Right},
             AdvanceCell{}, LineReset{}});
  CHECK(gen_p1(layout_of({})).commands.empty());
}

TEST_CASE("gen_p2 examples") {
  CHECK(gen_p2(layout_of({BrailleCell{1}})).commands ==
        Cmds{WaitTemp{}, MoveTo{0}, Extrude{}, FeedRow{}, FeedRow{}, FeedRow{true}});
  CHECK(gen_p2(layout_of({})).commands == Cmds{WaitTemp{}});
  CHECK(gen_p2(layout_of({LineBreak{}})).commands == Cmds{WaitTemp{}, FeedRow{}, FeedRow{}, FeedRow{true}});
  CHECK(gen_p2(layout_of({BrailleCell{1}, BrailleCell{4}})).commands ==
        Cmds{WaitTemp{}, MoveTo{0}, Extrude{}, MoveTo{3}, Extrude{}, FeedRow{}, FeedRow{}, FeedRow{true}});
}

TEST_CASE("page boundaries") {
  const auto l = layout_text(std::string(25, '\n') + "a");
  const auto p1 = gen_p1(l);
  const auto p2 = gen_p2(l);
  CHECK(std::count_if(p1.commands.begin(), p1.commands.end(),
                      [](const Command& c) { return std::holds_alternative<PagePause>(c); }) == 1);
  CHECK(std::count_if(p2.commands.begin(), p2.commands.end(),
                      [](const Command& c) { return std::holds_alternative<WaitTemp>(c); }) == 2);
  const auto pause = std::find_if(p2.commands.begin(), p2.commands.end(),
                                  [](const Command& c) { return std::holds_alternative<PagePause>(c); });
  REQUIRE(pause + 1 != p2.commands.end());
  CHECK(std::holds_alternative<WaitTemp>(*(pause + 1)));
}

TEST_CASE("structural properties on random documents") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 60; ++i) {
    const PageLayout l = layout_text(oracle::random_document(rng));
    const auto p1 = gen_p1(l);
    const auto p2 = gen_p2(l);
    CHECK_NOTHROW(validate_program(p1, l.cfg));
    CHECK_NOTHROW(validate_program(p2, l.cfg));

    // P1: advances per line equal the line's cell count; one reset per line.
    std::vector<std::size_t> expected_lines;
    for (const auto& page : l.pages)
      for (const auto& line : page.lines) expected_lines.push_back(line.size());
    std::vector<std::size_t> advances_per_line;
    std::size_t advances = 0;
    for (const auto& c : p1.commands) {
      if (std::holds_alternative<AdvanceCell>(c)) ++advances;
      if (std::holds_alternative<LineReset>(c)) {
        advances_per_line.push_back(advances);
        advances = 0;
      }
    }
    CHECK(advances == 0);
    CHECK(advances_per_line == expected_lines);

    // P2: columns never decrease between feeds, and stay in bounds.
    std::size_t last = 0;
    bool first = true;
    for (const auto& c : p2.commands) {
      if (auto* m = std::get_if<MoveTo>(&c)) {
        CHECK(m->dot_column < 48);
        if (!first) CHECK(m->dot_column > last);
        last = m->dot_column;
        first = false;
      } else if (std::holds_alternative<FeedRow>(c) || std::holds_alternative<PagePause>(c)) {
        first = true;
      }
    }
  }
}

TEST_CASE("StreamCompiler reproduces the batch generators") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 30; ++i) {
    const auto tokens = encode_text(oracle::random_document(rng), {}).tokens;
    const PageLayout l = layout_document(tokens, {});
    for (Backend b : {Backend::P1, Backend::P2}) {
      StreamCompiler sc(b);
      LayoutBuilder builder(l.cfg, sc);
      std::vector<Command> streamed = sc.take();
      for (const Token& t : tokens) {
        builder.push(t);
        auto more = sc.take();
        streamed.insert(streamed.end(), more.begin(), more.end());
      }
      builder.finish();
      auto rest = sc.take();
      streamed.insert(streamed.end(), rest.begin(), rest.end());
      CHECK(streamed == generate(l, b).commands);
    }
  }
}

TEST_CASE("serialization") {
  CHECK(serialize_program({Backend::P1, {AdvanceCell{}}}) == "ADVANCE\n");
  CHECK(serialize_program({Backend::P1, {Punch{DotRow::Top, Side::Left}}}) == "PUNCH TOP LEFT\n");
  CHECK(serialize_program({Backend::P2, {WaitTemp{}, MoveTo{3}, Extrude{}, FeedRow{}, FeedRow{true}, PagePause{}}}) ==
        "WAITTEMP\nMOVE 3\nEXTRUDE\nFEED\nFEED REMAINDER\nPAUSE\n");
  CHECK(serialize_program({Backend::P1, {LineReset{}, PagePause{}}}) == "RESET\nPAUSE\n");
}

TEST_CASE("parse(serialize(p)) == p for random programs") {
  std::mt19937_64 rng(29);
  for (int i = 0; i < 200; ++i) {
    DeviceProgram p{rng() % 2 ? Backend::P1 : Backend::P2, {}};
    const std::size_t n = rng() % 60;
    for (std::size_t k = 0; k < n; ++k) {
      const unsigned pick = static_cast<unsigned>(rng() % 5);
      if (p.backend == Backend::P1) {
        switch (pick) {
          case 0: p.commands.emplace_back(AdvanceCell{}); break;
          case 1: p.commands.emplace_back(LineReset{}); break;
          case 2: p.commands.emplace_back(PagePause{}); break;
          default: p.commands.emplace_back(punch_for_dot(static_cast<int>(1 + rng() % 6))); break;
        }
      } else {
        switch (pick) {
          case 0: p.commands.emplace_back(WaitTemp{}); break;
          case 1: p.commands.emplace_back(MoveTo{static_cast<std::size_t>(rng() % 48)}); break;
          case 2: p.commands.emplace_back(Extrude{}); break;
          case 3: p.commands.emplace_back(FeedRow{rng() % 2 == 0}); break;
          default: p.commands.emplace_back(PagePause{}); break;
        }
      }
    }
    const std::string text = serialize_program(p);
    CHECK(parse_program(text, p.backend) == p);
    CHECK(serialize_program(parse_program(text, p.backend)) == text);
  }
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_program("JUMP\n", Backend::P1), ParseError);
  CHECK_THROWS_AS(parse_program("PUNCH TOP\n", Backend::P1), ParseError);
  CHECK_THROWS_AS(parse_program("PUNCH UP LEFT\n", Backend::P1), ParseError);
  CHECK_THROWS_AS(parse_program("MOVE -1\n", Backend::P2), ParseError);
  CHECK_THROWS_AS(parse_program("MOVE 3x\n", Backend::P2), ParseError);
  CHECK_THROWS_AS(parse_program("FEED ROW\n", Backend::P2), ParseError);
  CHECK_THROWS_AS(parse_program("EXTRUDE\n", Backend::P1), ParseError);
  CHECK_THROWS_AS(parse_program("ADVANCE\n", Backend::P2), ParseError);
  try {
    parse_program("ADVANCE\n\nBOGUS\n", Backend::P1);
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK(parse_program("ADVANCE\r\n\nRESET", Backend::P1).commands == Cmds{AdvanceCell{}, LineReset{}});
}

TEST_CASE("validate_program rejects malformed streams") {
  const LayoutConfig cfg;
  CHECK_THROWS_AS(validate_program({Backend::P1, {Punch{DotRow::Top, Side::Left}}}, cfg), ProgramInvalid);
  CHECK_THROWS_AS(validate_program({Backend::P1, {Punch{DotRow::Top, Side::Left}, PagePause{}, AdvanceCell{}}}, cfg),
                  ProgramInvalid);
  CHECK_THROWS_AS(validate_program({Backend::P2, {MoveTo{0}, Extrude{}}}, cfg), ProgramInvalid);
  CHECK_THROWS_AS(validate_program({Backend::P2, {WaitTemp{}, PagePause{}, Extrude{}}}, cfg), ProgramInvalid);
  CHECK_THROWS_AS(validate_program({Backend::P2, {WaitTemp{}, MoveTo{48}}}, cfg), ProgramInvalid);
  CHECK_THROWS_AS(validate_program({Backend::P2, {AdvanceCell{}}}, cfg), ProgramInvalid);
  CHECK_NOTHROW(validate_program({Backend::P2, {WaitTemp{}, MoveTo{47}, Extrude{}}}, cfg));
}
