#include "braille/encoding.hpp"

#include <array>
#include <optional>

#include "braille/errors.hpp"

namespace braille {
namespace {

// Letters a..z, uncontracted English Braille.
constexpr std::array<BrailleCell, 26> kLetters = {{
    {1},          {1, 2},       {1, 4},       {1, 4, 5},       {1, 5},       {1, 2, 4},
    {1, 2, 4, 5}, {1, 2, 5},    {2, 4},       {2, 4, 5},       {1, 3},       {1, 2, 3},
    {1, 3, 4},    {1, 3, 4, 5}, {1, 3, 5},    {1, 2, 3, 4},    {1, 2, 3, 4, 5}, {1, 2, 3, 5},
    {2, 3, 4},    {2, 3, 4, 5}, {1, 3, 6},    {1, 2, 3, 6},    {2, 4, 5, 6}, {1, 3, 4, 6},
    {1, 3, 4, 5, 6}, {1, 3, 5, 6},
}};

struct Punct {
  char ch;
  BrailleCell cell;
};

constexpr std::array<Punct, 8> kPunctuation = {{
    {'.', {2, 5, 6}},
    {',', {2}},
    {';', {2, 3}},
    {':', {2, 5}},
    {'!', {2, 3, 5}},
    {'?', {2, 3, 6}},
    {'\'', {3}},
    {'-', {3, 6}},
}};

std::optional<BrailleCell> punctuation_cell(char32_t c) {
  for (const auto& p : kPunctuation)
    if (static_cast<char32_t>(p.ch) == c) return p.cell;
  return std::nullopt;
}

std::optional<char> punctuation_char(BrailleCell cell) {
  for (const auto& p : kPunctuation)
    if (p.cell == cell) return p.ch;
  return std::nullopt;
}

std::optional<int> letter_index(BrailleCell cell) {
  for (std::size_t i = 0; i < kLetters.size(); ++i)
    if (kLetters[i] == cell) return static_cast<int>(i);
  return std::nullopt;
}

bool is_lower(char32_t c) { return c >= U'a' && c <= U'z'; }
bool is_upper(char32_t c) { return c >= U'A' && c <= U'Z'; }
bool is_digit(char32_t c) { return c >= U'0' && c <= U'9'; }

// Decodes one code point; malformed sequences yield U+FFFD and consume one byte.
char32_t next_codepoint(std::string_view s, std::size_t& i) {
  const auto lead = static_cast<unsigned char>(s[i]);
  int extra = 0;
  char32_t cp = 0;
  if (lead < 0x80) {
    ++i;
    return lead;
  } else if ((lead & 0xE0) == 0xC0) {
    extra = 1;
    cp = lead & 0x1F;
  } else if ((lead & 0xF0) == 0xE0) {
    extra = 2;
    cp = lead & 0x0F;
  } else if ((lead & 0xF8) == 0xF0) {
    extra = 3;
    cp = lead & 0x07;
  } else {
    ++i;
    return 0xFFFD;
  }
  if (i + static_cast<std::size_t>(extra) >= s.size()) {
    ++i;
    return 0xFFFD;
  }
  for (int k = 1; k <= extra; ++k) {
    const auto b = static_cast<unsigned char>(s[i + k]);
    if ((b & 0xC0) != 0x80) {
      ++i;
      return 0xFFFD;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  i += static_cast<std::size_t>(extra) + 1;
  return cp;
}

template <typename Fn>
void for_each_codepoint(std::string_view s, Fn&& fn) {
  std::size_t i = 0;
  std::size_t index = 0;
  while (i < s.size()) {
    if (s[i] == '\r' && i + 1 < s.size() && s[i + 1] == '\n') {
      ++i;
      continue;
    }
    fn(next_codepoint(s, i), index++);
  }
}

}  // namespace

bool is_supported(char32_t c) {
  return is_lower(c) || is_upper(c) || is_digit(c) || c == U' ' || punctuation_cell(c).has_value();
}

std::vector<BrailleCell> encode_char(char32_t c, const EncodingPolicy& policy, std::size_t position) {
  if (c == U'\n') return {};
  if (c == U' ') return {BrailleCell{}};
  if (is_lower(c)) return {kLetters[c - U'a']};
  if (is_upper(c)) {
    const BrailleCell letter = kLetters[c - U'A'];
    if (policy.uppercase == UppercasePolicy::CapitalSignPrefix) return {kCapitalSign, letter};
    return {letter};
  }
  if (is_digit(c)) {
    // 1..9 read as a..i, 0 as j.
    const std::size_t idx = c == U'0' ? 9 : static_cast<std::size_t>(c - U'1');
    return {kNumberSign, kLetters[idx]};
  }
  if (auto p = punctuation_cell(c)) return {*p};
  if (policy.unknown_char == UnknownCharPolicy::Reject) throw UnsupportedCharacter(c, position);
  return {BrailleCell{}};
}

EncodedText encode_text(std::string_view utf8, const EncodingPolicy& policy) {
  EncodedText out;
  out.tokens.reserve(utf8.size());
  for_each_codepoint(utf8, [&](char32_t c, std::size_t index) {
    if (c == U'\n') {
      out.tokens.emplace_back(LineBreak{});
      return;
    }
    if (!is_supported(c) && policy.unknown_char == UnknownCharPolicy::SubstituteBlank)
      out.substitutions.push_back({index, c});
    for (BrailleCell cell : encode_char(c, policy, index)) out.tokens.emplace_back(cell);
  });
  return out;
}

std::string decode_cells(std::span<const Token> tokens) {
  std::string out;
  enum class Prefix { None, Number, Capital } pending = Prefix::None;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (std::holds_alternative<LineBreak>(tokens[i])) {
      if (pending != Prefix::None) throw AmbiguousCell(i, "line break after prefix sign");
      out.push_back('\n');
      continue;
    }
    const BrailleCell cell = std::get<BrailleCell>(tokens[i]);
    if (pending == Prefix::Number) {
      auto idx = letter_index(cell);
      if (!idx || *idx > 9) throw AmbiguousCell(i, "number sign not followed by a-j");
      out.push_back(*idx == 9 ? '0' : static_cast<char>('1' + *idx));
      pending = Prefix::None;
      continue;
    }
    if (pending == Prefix::Capital) {
      auto idx = letter_index(cell);
      if (!idx) throw AmbiguousCell(i, "capital sign not followed by a letter");
      out.push_back(static_cast<char>('A' + *idx));
      pending = Prefix::None;
      continue;
    }
    if (cell.blank()) {
      out.push_back(' ');
    } else if (cell == kNumberSign) {
      pending = Prefix::Number;
    } else if (cell == kCapitalSign) {
      pending = Prefix::Capital;
    } else if (auto idx = letter_index(cell)) {
      out.push_back(static_cast<char>('a' + *idx));
    } else if (auto p = punctuation_char(cell)) {
      out.push_back(*p);
    } else {
      throw AmbiguousCell(i, "no reverse mapping");
    }
  }
  if (pending != Prefix::None) throw AmbiguousCell(tokens.size(), "dangling prefix sign");
  return out;
}

std::string decode_cells(std::span<const BrailleCell> cells) {
  std::vector<Token> tokens(cells.begin(), cells.end());
  return decode_cells(std::span<const Token>(tokens));
}

std::string canonical(std::string_view utf8, const EncodingPolicy& policy) {
  std::string out;
  for_each_codepoint(utf8, [&](char32_t c, std::size_t) {
    if (c == U'\n') {
      out.push_back('\n');
    } else if (!is_supported(c)) {
      out.push_back(' ');
    } else if (is_upper(c) && policy.uppercase == UppercasePolicy::FoldToLower) {
      out.push_back(static_cast<char>(c - U'A' + U'a'));
    } else {
      out.push_back(static_cast<char>(c));
    }
  });
  return out;
}

}  // namespace braille
