#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "gramnet/text.hpp"
#include "gramnet/utf8.hpp"

using gramnet::normalize;

namespace {

std::string join(const std::vector<std::string>& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out += ' ';
    out += tokens[i];
  }
  return out;
}

}  // namespace

TEST_CASE("empty input yields no tokens") {
  CHECK(normalize("").empty());
  CHECK(normalize("   \t\n ").empty());
  CHECK(normalize("...!?-").empty());
}

TEST_CASE("lowercasing and punctuation stripping") {
  CHECK(normalize("La Russia, dichiara!") ==
        std::vector<std::string>{"la", "russia", "dichiara"});
}

TEST_CASE("typographic characters split tokens") {
  // em dash between the words
  CHECK(normalize("GUERRA—guerra") ==
        std::vector<std::string>{"guerra", "guerra"});
  CHECK(normalize("guerra…pace") == std::vector<std::string>{"guerra", "pace"});
}

TEST_CASE("apostrophes split clitics") {
  CHECK(normalize("l'italia") == std::vector<std::string>{"l", "italia"});
  // typographic apostrophe
  CHECK(normalize("dell’impero") == std::vector<std::string>{"dell", "impero"});
}

TEST_CASE("accented italian letters survive lowercased") {
  CHECK(normalize("PERCHÈ sì") ==
        std::vector<std::string>{"perchè", "sì"});
  CHECK(normalize("città") == std::vector<std::string>{"città"});
}

TEST_CASE("digit-bearing tokens are dropped entirely") {
  CHECK(normalize("nel 1877 la guerra") == std::vector<std::string>{"nel", "la", "guerra"});
  CHECK(normalize("anno1877") == std::vector<std::string>{});
  CHECK(normalize("4a pagina") == std::vector<std::string>{"pagina"});
}

TEST_CASE("reading order is preserved") {
  CHECK(normalize("uno due tre") == std::vector<std::string>{"uno", "due", "tre"});
}

TEST_CASE("normalize is idempotent over its own output") {
  std::mt19937_64 rng(20240811);
  const std::vector<std::string> pieces = {
      "La",     "RUSSIA",  "guerra,", "1877",   "l'arte", "perchè",
      "—", "zar!",    "...",     "Città:", "4ª", "bulgaro-",
      "(sic)",  "tur;chi", "«quote»"};
  for (int trial = 0; trial < 200; ++trial) {
    std::string text;
    const int len = static_cast<int>(rng() % 12);
    for (int i = 0; i < len; ++i) {
      text += pieces[rng() % pieces.size()];
      text += (rng() % 3 == 0) ? "" : " ";
    }
    const auto once = normalize(text);
    CHECK(normalize(join(once)) == once);
  }
}

TEST_CASE("utf8 validation catches malformed bytes") {
  CHECK(gramnet::utf8::valid("perchè"));
  CHECK_FALSE(gramnet::utf8::valid("\xff\xfe"));
  CHECK_FALSE(gramnet::utf8::valid("abc\xc3"));          // truncated
  CHECK_FALSE(gramnet::utf8::valid("\xc0\xaf"));         // overlong
  CHECK_FALSE(gramnet::utf8::valid("\xed\xa0\x80"));     // surrogate
}
