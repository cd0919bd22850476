#include "braille/codegen.hpp"

#include <utility>

namespace braille {

void P1Emitter::page_begin(std::size_t page, std::vector<Command>& out) const {
  if (page > 0) out.emplace_back(PagePause{});
}

void P1Emitter::cell(BrailleCell cell, std::vector<Command>& out) const {
  for (int dot = 1; dot <= 6; ++dot)
    if (cell.has(dot)) out.emplace_back(punch_for_dot(dot));
  out.emplace_back(AdvanceCell{});
}

void P1Emitter::line_end(std::vector<Command>& out) const { out.emplace_back(LineReset{}); }

void P2Emitter::page_begin(std::size_t page, std::vector<Command>& out) const {
  if (page > 0) out.emplace_back(PagePause{});
  out.emplace_back(WaitTemp{});
}

void P2Emitter::line(const CellLine& cells, std::vector<Command>& out) const {
  const DotRows rows = dot_rows_of_line(cells);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (const RowDot& d : rows[r]) {
      out.emplace_back(MoveTo{dot_column(d.column, d.side)});
      out.emplace_back(Extrude{});
    }
    out.emplace_back(FeedRow{r + 1 == rows.size()});
  }
}

void StreamCompiler::page_begin(std::size_t page) {
  if (backend_ == Backend::P1)
    P1Emitter{}.page_begin(page, pending_);
  else
    P2Emitter{}.page_begin(page, pending_);
}

void StreamCompiler::cell(std::size_t, std::size_t, std::size_t, BrailleCell cell) {
  if (backend_ == Backend::P1) P1Emitter{}.cell(cell, pending_);
}

void StreamCompiler::line_end(std::size_t, std::size_t, const CellLine& cells) {
  if (backend_ == Backend::P1)
    P1Emitter{}.line_end(pending_);
  else
    P2Emitter{}.line(cells, pending_);
}

std::vector<Command> StreamCompiler::take() { return std::exchange(pending_, {}); }

DeviceProgram gen_p1(const PageLayout& layout) {
  DeviceProgram program{Backend::P1, {}};
  P1Emitter emit;
  for (std::size_t p = 0; p < layout.pages.size(); ++p) {
    emit.page_begin(p, program.commands);
    for (const CellLine& line : layout.pages[p].lines) {
      for (BrailleCell c : line) emit.cell(c, program.commands);
      emit.line_end(program.commands);
    }
  }
  return program;
}

DeviceProgram gen_p2(const PageLayout& layout) {
  DeviceProgram program{Backend::P2, {}};
  P2Emitter emit;
  for (std::size_t p = 0; p < layout.pages.size(); ++p) {
    emit.page_begin(p, program.commands);
    for (const CellLine& line : layout.pages[p].lines) emit.line(line, program.commands);
  }
  return program;
}

DeviceProgram generate(const PageLayout& layout, Backend backend) {
  return backend == Backend::P1 ? gen_p1(layout) : gen_p2(layout);
}

}  // namespace braille
