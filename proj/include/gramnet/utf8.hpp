#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace gramnet::utf8 {

// Decodes a whole UTF-8 string into code points. Throws data_error on
// malformed input (overlong forms, surrogates, truncated sequences).
std::vector<char32_t> decode(std::string_view text);

// True when text is well-formed UTF-8.
bool valid(std::string_view text);

// Encodes a single code point.
std::string encode(char32_t cp);

// Splits a valid UTF-8 string into one std::string per code point.
std::vector<std::string> chars(std::string_view text);

bool is_letter(char32_t cp);
bool is_digit(char32_t cp);

// Lowercase mapping covering ASCII, Latin-1, Latin Extended-A, Greek and
// Cyrillic; other code points pass through unchanged.
char32_t to_lower(char32_t cp);

}  // namespace gramnet::utf8
