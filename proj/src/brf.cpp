#include "braille/brf.hpp"

#include <stdexcept>
#include <string_view>

namespace braille {
namespace {

// Indexed by dot mask (dot n -> bit n-1).
constexpr std::string_view kBrfTable =
    " A1B'K2L@CIF/MSP\"E3H9O6R^DJG>NTQ,*5<-U8V.%[$+X!&;:4\\0Z7(_?W]#Y)=";
static_assert(kBrfTable.size() == 64);

}  // namespace

char brf_char(BrailleCell cell) { return kBrfTable[cell.mask()]; }

std::string to_brf(std::span<const BrailleCell> cells, std::size_t cells_per_line) {
  if (cells_per_line == 0) throw std::invalid_argument("cells_per_line must be at least 1");
  std::string out;
  out.reserve(cells.size() + cells.size() / cells_per_line + 1);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    out.push_back(brf_char(cells[i]));
    if ((i + 1) % cells_per_line == 0 || i + 1 == cells.size()) out.push_back('\n');
  }
  return out;
}

}  // namespace braille
