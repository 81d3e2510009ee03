#include "gramnet/text.hpp"

#include "gramnet/utf8.hpp"

namespace gramnet {

std::vector<std::string> normalize(std::string_view raw_text) {
  std::vector<std::string> tokens;
  std::string current;
  bool has_digit = false;

  const auto flush = [&] {
    if (!current.empty() && !has_digit) tokens.push_back(current);
    current.clear();
    has_digit = false;
  };

  for (char32_t cp : utf8::decode(raw_text)) {
    if (utf8::is_letter(cp)) {
      current += utf8::encode(utf8::to_lower(cp));
    } else if (utf8::is_digit(cp)) {
      has_digit = true;
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

}  // namespace gramnet
