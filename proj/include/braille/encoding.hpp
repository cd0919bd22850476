#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "braille/cell.hpp"

namespace braille {

enum class UnknownCharPolicy { Reject, SubstituteBlank };
enum class UppercasePolicy { FoldToLower, CapitalSignPrefix };

/// Uncontracted English Braille settings. Digits always take a number-sign
/// prefix, one per digit.
struct EncodingPolicy {
  UnknownCharPolicy unknown_char = UnknownCharPolicy::SubstituteBlank;
  UppercasePolicy uppercase = UppercasePolicy::FoldToLower;
};

/// A character replaced by a blank cell under SubstituteBlank.
struct Substitution {
  std::size_t position;  // code-point index into the input
  char32_t codepoint;
};

struct EncodedText {
  std::vector<Token> tokens;
  std::vector<Substitution> substitutions;
};

/// True for the characters that have a cell mapping (newline excluded).
bool is_supported(char32_t c);

/// Cells for one character. Space yields one blank cell; newline yields no
/// cells (line breaks are the caller's concern).
std::vector<BrailleCell> encode_char(char32_t c, const EncodingPolicy& policy,
                                     std::size_t position = 0);

/// Encodes UTF-8 text. '\n' becomes a LineBreak token; a '\r' directly
/// before '\n' is dropped. Throws UnsupportedCharacter under Reject.
EncodedText encode_text(std::string_view utf8, const EncodingPolicy& policy);

/// Inverse of encode_text. Throws AmbiguousCell for cells with no reading.
std::string decode_cells(std::span<const Token> tokens);
std::string decode_cells(std::span<const BrailleCell> cells);

/// What decode_cells(encode_text(s)) yields for a supported string s.
std::string canonical(std::string_view utf8, const EncodingPolicy& policy);

}  // namespace braille
