#include "gramnet/utf8.hpp"

#include "gramnet/error.hpp"

namespace gramnet::utf8 {

namespace {

// Returns the code point starting at text[i] and advances i, or throws.
char32_t decode_one(std::string_view text, std::size_t& i) {
  const auto byte = [&](std::size_t j) -> std::uint8_t {
    return static_cast<std::uint8_t>(text[j]);
  };
  const std::uint8_t b0 = byte(i);
  if (b0 < 0x80) {
    ++i;
    return b0;
  }
  int extra;
  char32_t cp;
  if ((b0 & 0xE0) == 0xC0) {
    extra = 1;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    extra = 2;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    extra = 3;
    cp = b0 & 0x07;
  } else {
    throw data_error("invalid UTF-8 lead byte at offset " + std::to_string(i));
  }
  if (i + extra >= text.size()) {
    throw data_error("truncated UTF-8 sequence at offset " + std::to_string(i));
  }
  for (int k = 1; k <= extra; ++k) {
    const std::uint8_t b = byte(i + k);
    if ((b & 0xC0) != 0x80) {
      throw data_error("invalid UTF-8 continuation byte at offset " +
                       std::to_string(i + k));
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  static constexpr char32_t kMin[4] = {0, 0x80, 0x800, 0x10000};
  if (cp < kMin[extra] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
    throw data_error("invalid UTF-8 code point at offset " + std::to_string(i));
  }
  i += extra + 1;
  return cp;
}

}  // namespace

std::vector<char32_t> decode(std::string_view text) {
  std::vector<char32_t> out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) out.push_back(decode_one(text, i));
  return out;
}

bool valid(std::string_view text) {
  try {
    std::size_t i = 0;
    while (i < text.size()) decode_one(text, i);
    return true;
  } catch (const data_error&) {
    return false;
  }
}

std::string encode(char32_t cp) {
  std::string out;
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
  return out;
}

std::vector<std::string> chars(std::string_view text) {
  std::vector<std::string> out;
  for (char32_t cp : decode(text)) out.push_back(encode(cp));
  return out;
}

bool is_letter(char32_t cp) {
  if ((cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z')) return true;
  if (cp == 0xAA || cp == 0xB5 || cp == 0xBA) return true;
  if (cp >= 0xC0 && cp <= 0xFF) return cp != 0xD7 && cp != 0xF7;
  if (cp >= 0x100 && cp <= 0x24F) return true;   // Latin Extended-A/B
  if (cp >= 0x386 && cp <= 0x3FF) return cp != 0x387;  // Greek
  if (cp >= 0x400 && cp <= 0x4FF) return true;   // Cyrillic
  return false;
}

bool is_digit(char32_t cp) {
  if (cp >= '0' && cp <= '9') return true;
  return cp == 0xB2 || cp == 0xB3 || cp == 0xB9;  // superscript digits
}

char32_t to_lower(char32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;
  if (cp >= 0x100 && cp <= 0x137) return (cp % 2 == 0) ? cp + 1 : cp;
  if (cp >= 0x139 && cp <= 0x148) return (cp % 2 == 1) ? cp + 1 : cp;
  if (cp >= 0x14A && cp <= 0x177) return (cp % 2 == 0) ? cp + 1 : cp;
  if (cp == 0x178) return 0xFF;
  if (cp >= 0x179 && cp <= 0x17E) return (cp % 2 == 1) ? cp + 1 : cp;
  if (cp >= 0x391 && cp <= 0x3A9 && cp != 0x3A2) return cp + 0x20;
  if (cp >= 0x410 && cp <= 0x42F) return cp + 0x20;
  if (cp >= 0x400 && cp <= 0x40F) return cp + 0x50;
  return cp;
}

}  // namespace gramnet::utf8
