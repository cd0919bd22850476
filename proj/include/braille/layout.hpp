#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "braille/cell.hpp"
#include "braille/units.hpp"

namespace braille {

struct LayoutConfig {
  std::size_t cells_per_line = 24;
  std::size_t lines_per_page = 25;
  Microns cell_pitch = Microns::from_mm(10.0);
  Microns line_pitch = Microns::from_mm(10.0);
  Microns dot_pair_spacing = Microns::from_mm(6.0);
  Microns dot_row_pitch = Microns::from_mm(4.0);
  Microns page_width = Microns::from_mm(245.0);
  Microns margin = Microns::from_mm(5.0);

  /// Throws LayoutConfigInvalid.
  void validate() const;

  /// Height of the printable area (lines_per_page x line_pitch).
  Microns page_height() const { return static_cast<std::int64_t>(lines_per_page) * line_pitch; }
};

enum class Side { Left, Right };

/// Dot centre on the page; y grows down the sheet from the first baseline.
struct Dot {
  Microns x;
  Microns y;
  friend constexpr auto operator<=>(const Dot&, const Dot&) = default;
};

/// Physical position of one dot of the cell at (line, column).
/// row 0 is the top dot row.
Dot dot_position(const LayoutConfig& cfg, std::size_t line, std::size_t column, int row, Side side);

/// Column 2*C for the left dot of cell C, 2*C+1 for the right one.
constexpr std::size_t dot_column(std::size_t cell_column, Side side) {
  return 2 * cell_column + (side == Side::Right ? 1 : 0);
}

using CellLine = std::vector<BrailleCell>;

struct LayoutPage {
  std::vector<CellLine> lines;
  std::vector<Dot> dots;
};

struct PageLayout {
  LayoutConfig cfg;
  std::vector<LayoutPage> pages;

  std::size_t dot_count() const;
};

/// Receives the placement events of a LayoutBuilder in document order.
class LayoutSink {
 public:
  virtual ~LayoutSink() = default;
  virtual void page_begin(std::size_t page) = 0;
  virtual void cell(std::size_t page, std::size_t line, std::size_t column, BrailleCell cell) = 0;
  virtual void line_end(std::size_t page, std::size_t line, const CellLine& cells) = 0;
};

/// Incremental paginator. A line opens on its first cell or on a line break
/// and closes on a line break, on the cell that overflows it, or at finish().
/// The first page opens immediately; later pages open with their first line.
class LayoutBuilder {
 public:
  LayoutBuilder(const LayoutConfig& cfg, LayoutSink& sink);

  void push(const Token& token);
  void finish();

 private:
  void open_line();
  void close_line();

  LayoutConfig cfg_;
  LayoutSink& sink_;
  std::size_t page_ = 0;
  std::size_t lines_on_page_ = 0;
  bool line_open_ = false;
  CellLine current_;
  bool finished_ = false;
};

/// Builds a PageLayout from builder events.
class LayoutCollector final : public LayoutSink {
 public:
  explicit LayoutCollector(const LayoutConfig& cfg) { layout_.cfg = cfg; }

  void page_begin(std::size_t page) override;
  void cell(std::size_t page, std::size_t line, std::size_t column, BrailleCell cell) override;
  void line_end(std::size_t page, std::size_t line, const CellLine& cells) override;

  const PageLayout& layout() const { return layout_; }
  PageLayout take() { return std::move(layout_); }

 private:
  PageLayout layout_;
};

/// Hard-wrapped, paginated layout with every dot resolved. An empty
/// document yields one empty page.
PageLayout layout_document(std::span<const Token> tokens, const LayoutConfig& cfg);

/// A dot position within a line: (cell column, side).
struct RowDot {
  std::size_t column;
  Side side;
  friend constexpr bool operator==(const RowDot&, const RowDot&) = default;
};

using DotRows = std::array<std::vector<RowDot>, 3>;

/// The three dot rows of a line, each in ascending (column, side) order.
DotRows dot_rows_of_line(std::span<const BrailleCell> line);

/// `page,x_mm,y_mm` with a header row.
void write_dot_csv(std::ostream& out, const PageLayout& layout);

}  // namespace braille
