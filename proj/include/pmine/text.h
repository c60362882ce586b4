#pragma once

#include <cstddef>
#include <string>
#include <string_view>

// Unicode helpers shared by segmentation, tokenization and normalization.
// Input is UTF-8; invalid byte sequences decode to U+FFFD.
namespace pmine::text {

struct DecodedChar {
  char32_t value;
  std::size_t next;  // byte offset just past this code point
};

DecodedChar decode_at(std::string_view s, std::size_t pos);

bool is_space(char32_t c);
bool is_letter(char32_t c);  // letters and combining marks
bool is_digit(char32_t c);
bool is_upper(char32_t c);  // uppercase or titlecase
bool is_word_char(char32_t c);

// NFC, lowercase, whitespace runs collapsed to one space, ends trimmed.
std::string normalize(std::string_view s);

// Whitespace runs collapsed to one space, ends trimmed. No case change.
std::string collapse_whitespace(std::string_view s);

}  // namespace pmine::text
