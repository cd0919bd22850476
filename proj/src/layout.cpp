#include "braille/layout.hpp"

#include <ostream>

#include "braille/errors.hpp"

namespace braille {

void LayoutConfig::validate() const {
  auto fail = [](const std::string& why) { throw LayoutConfigInvalid("layout config: " + why); };
  if (cells_per_line < 1) fail("cells_per_line must be at least 1");
  if (lines_per_page < 1) fail("lines_per_page must be at least 1");
  const Microns zero{};
  if (cell_pitch <= zero || line_pitch <= zero || dot_pair_spacing <= zero ||
      dot_row_pitch <= zero || page_width <= zero || margin <= zero)
    fail("all lengths must be positive");
  if (margin + static_cast<std::int64_t>(cells_per_line) * cell_pitch > page_width)
    fail("margin + cells_per_line * cell_pitch exceeds page_width");
  if (dot_pair_spacing >= cell_pitch) fail("dot_pair_spacing must be less than cell_pitch");
  if (2 * dot_row_pitch >= line_pitch) fail("2 * dot_row_pitch must be less than line_pitch");
}

Dot dot_position(const LayoutConfig& cfg, std::size_t line, std::size_t column, int row, Side side) {
  Microns x = cfg.margin + static_cast<std::int64_t>(column) * cfg.cell_pitch;
  if (side == Side::Right) x += cfg.dot_pair_spacing;
  const Microns y = static_cast<std::int64_t>(line) * cfg.line_pitch + row * cfg.dot_row_pitch;
  return {x, y};
}

std::size_t PageLayout::dot_count() const {
  std::size_t n = 0;
  for (const auto& p : pages) n += p.dots.size();
  return n;
}

LayoutBuilder::LayoutBuilder(const LayoutConfig& cfg, LayoutSink& sink) : cfg_(cfg), sink_(sink) {
  cfg_.validate();
  current_.reserve(cfg_.cells_per_line);
  sink_.page_begin(0);
}

void LayoutBuilder::open_line() {
  if (lines_on_page_ == cfg_.lines_per_page) {
    ++page_;
    lines_on_page_ = 0;
    sink_.page_begin(page_);
  }
  line_open_ = true;
  current_.clear();
}

void LayoutBuilder::close_line() {
  sink_.line_end(page_, lines_on_page_, current_);
  ++lines_on_page_;
  line_open_ = false;
}

void LayoutBuilder::push(const Token& token) {
  if (finished_) throw std::logic_error("LayoutBuilder::push after finish");
  if (std::holds_alternative<LineBreak>(token)) {
    if (!line_open_) open_line();
    close_line();
    return;
  }
  if (!line_open_) {
    open_line();
  } else if (current_.size() == cfg_.cells_per_line) {
    close_line();
    open_line();
  }
  const BrailleCell cell = std::get<BrailleCell>(token);
  const std::size_t column = current_.size();
  current_.push_back(cell);
  sink_.cell(page_, lines_on_page_, column, cell);
}

void LayoutBuilder::finish() {
  if (finished_) return;
  if (line_open_) close_line();
  finished_ = true;
}

void LayoutCollector::page_begin(std::size_t) { layout_.pages.emplace_back(); }

void LayoutCollector::cell(std::size_t, std::size_t line, std::size_t column, BrailleCell cell) {
  auto& dots = layout_.pages.back().dots;
  for (int row = 0; row < 3; ++row) {
    if (cell.has(row + 1)) dots.push_back(dot_position(layout_.cfg, line, column, row, Side::Left));
    if (cell.has(row + 4)) dots.push_back(dot_position(layout_.cfg, line, column, row, Side::Right));
  }
}

void LayoutCollector::line_end(std::size_t, std::size_t, const CellLine& cells) {
  layout_.pages.back().lines.push_back(cells);
}

PageLayout layout_document(std::span<const Token> tokens, const LayoutConfig& cfg) {
  LayoutCollector sink(cfg);
  LayoutBuilder builder(cfg, sink);
  for (const Token& t : tokens) builder.push(t);
  builder.finish();
  return sink.take();
}

DotRows dot_rows_of_line(std::span<const BrailleCell> line) {
  DotRows rows;
  for (std::size_t col = 0; col < line.size(); ++col) {
    for (int r = 0; r < 3; ++r) {
      if (line[col].has(r + 1)) rows[r].push_back({col, Side::Left});
      if (line[col].has(r + 4)) rows[r].push_back({col, Side::Right});
    }
  }
  return rows;
}

void write_dot_csv(std::ostream& out, const PageLayout& layout) {
  out << "page,x_mm,y_mm\n";
  for (std::size_t p = 0; p < layout.pages.size(); ++p)
    for (const Dot& d : layout.pages[p].dots)
      out << p << ',' << format_mm(d.x) << ',' << format_mm(d.y) << '\n';
}

}  // namespace braille
