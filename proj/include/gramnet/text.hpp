#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace gramnet {

// Tokenizes raw text into clean lowercase tokens. Tokens are maximal
// alphanumeric runs; any other character (punctuation, typographic marks,
// apostrophes, whitespace) ends the current token, so clitics like
// "l'italia" split into two tokens. Runs containing a digit are dropped
// entirely. Input must already be valid UTF-8.
std::vector<std::string> normalize(std::string_view raw_text);

}  // namespace gramnet
