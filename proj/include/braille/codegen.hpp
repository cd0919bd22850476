#pragma once

#include <cstddef>
#include <vector>

#include "braille/layout.hpp"
#include "braille/program.hpp"

namespace braille {

/// Character-at-a-time embosser stream: each cell's punches (dots 1..6),
/// then ADVANCE; RESET after every line; PAUSE between pages.
class P1Emitter {
 public:
  void page_begin(std::size_t page, std::vector<Command>& out) const;
  void cell(BrailleCell cell, std::vector<Command>& out) const;
  void line_end(std::vector<Command>& out) const;
};

/// Line-at-a-time extruder stream: WAITTEMP opens every page, then each
/// character line becomes three dot rows of MOVE/EXTRUDE pairs separated by
/// feeds.
class P2Emitter {
 public:
  void page_begin(std::size_t page, std::vector<Command>& out) const;
  void line(const CellLine& cells, std::vector<Command>& out) const;
};

/// Adapts LayoutBuilder events into commands for one backend, so a live
/// keystroke stream compiles to the same program as the batch path.
class StreamCompiler final : public LayoutSink {
 public:
  explicit StreamCompiler(Backend backend) : backend_(backend) {}

  void page_begin(std::size_t page) override;
  void cell(std::size_t page, std::size_t line, std::size_t column, BrailleCell cell) override;
  void line_end(std::size_t page, std::size_t line, const CellLine& cells) override;

  /// Commands produced since the last call.
  std::vector<Command> take();

 private:
  Backend backend_;
  std::vector<Command> pending_;
};

DeviceProgram gen_p1(const PageLayout& layout);
DeviceProgram gen_p2(const PageLayout& layout);
DeviceProgram generate(const PageLayout& layout, Backend backend);

}  // namespace braille
