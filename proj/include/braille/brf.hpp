#pragma once

#include <cstddef>
#include <span>
#include <string>

#include "braille/cell.hpp"

namespace braille {

/// North American ASCII-Braille character for a cell.
char brf_char(BrailleCell cell);

/// BRF text, wrapped every cells_per_line cells, each line LF-terminated.
std::string to_brf(std::span<const BrailleCell> cells, std::size_t cells_per_line);

}  // namespace braille
