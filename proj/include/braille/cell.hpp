#pragma once

#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <variant>
#include <vector>

namespace braille {

/// A six-dot Braille cell. Dots 1-3 run down the left column, 4-6 down the
/// right. Stored as a bit mask (dot n -> bit n-1), which is also the offset
/// of the cell in the Unicode Braille Patterns block.
class BrailleCell {
 public:
  constexpr BrailleCell() = default;
  constexpr BrailleCell(std::initializer_list<int> dots) {
    for (int d : dots) {
      if (d < 1 || d > 6) throw std::out_of_range("braille dot index must be in 1..6");
      mask_ = static_cast<std::uint8_t>(mask_ | (1u << (d - 1)));
    }
  }

  static constexpr BrailleCell from_mask(unsigned mask) {
    BrailleCell c;
    c.mask_ = static_cast<std::uint8_t>(mask & 0x3Fu);
    return c;
  }

  constexpr std::uint8_t mask() const { return mask_; }
  constexpr bool has(int dot) const { return dot >= 1 && dot <= 6 && (mask_ >> (dot - 1)) & 1u; }
  constexpr bool blank() const { return mask_ == 0; }
  constexpr int dot_count() const {
    int n = 0;
    for (unsigned m = mask_; m != 0; m &= m - 1) ++n;
    return n;
  }
  std::vector<int> dots() const {
    std::vector<int> out;
    for (int d = 1; d <= 6; ++d)
      if (has(d)) out.push_back(d);
    return out;
  }

  friend constexpr bool operator==(BrailleCell, BrailleCell) = default;

 private:
  std::uint8_t mask_ = 0;
};

inline constexpr BrailleCell kNumberSign{3, 4, 5, 6};
inline constexpr BrailleCell kCapitalSign{6};

/// Explicit line break carried through the cell stream.
struct LineBreak {
  friend constexpr bool operator==(LineBreak, LineBreak) = default;
};

using Token = std::variant<BrailleCell, LineBreak>;

}  // namespace braille
