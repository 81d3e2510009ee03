#include <doctest.h>

#include <set>
#include <string>

#include "gramnet/bigram.hpp"
#include "gramnet/error.hpp"
#include "gramnet/keywords.hpp"

using namespace gramnet;

namespace {

BigramNetwork network_of(const std::set<std::string>& nodes) {
  BigramNetwork net;
  net.nodes = nodes;
  return net;
}

}  // namespace

TEST_CASE("end-anchored patterns still match whole lemmas") {
  const KeywordSet russia("Russia", {"^russ.*$"});
  const auto seeds =
      match_seeds(network_of({"russia", "russo", "prussia"}), russia);
  CHECK(seeds == std::set<std::string>{"russia", "russo"});
}

TEST_CASE("prefix patterns match any continuation") {
  const KeywordSet bulgaria("Bulgaria", {"^bulg.*"});
  const auto seeds = match_seeds(network_of({"bulgaria", "bulgaro"}), bulgaria);
  CHECK(seeds == std::set<std::string>{"bulgaria", "bulgaro"});
}

TEST_CASE("star quantifier applies to the previous character only") {
  const KeywordSet turkey("Turkey", {"^turchi*"});
  CHECK(turkey.matches("turchia"));
  CHECK(turkey.matches("turchi"));
  CHECK(turkey.matches("turch"));
  CHECK_FALSE(turkey.matches("turco"));
}

TEST_CASE("patterns anchor at the start, not mid-string") {
  const KeywordSet londra("Britain", {"^londra"});
  CHECK(londra.matches("londra"));
  CHECK_FALSE(londra.matches("alondra"));
}

TEST_CASE("empty network matches nothing") {
  const KeywordSet any("Any", {"^a.*"});
  CHECK(match_seeds(network_of({}), any).empty());
}

TEST_CASE("unanchored or broken patterns are configuration errors") {
  CHECK_THROWS_AS(KeywordSet("X", {"russ.*"}), config_error);
  CHECK_THROWS_AS(KeywordSet("X", {"^russ["}), config_error);
  CHECK_THROWS_AS(KeywordSet("X", {}), config_error);
  CHECK_THROWS_AS(KeywordSet("", {"^a"}), config_error);
}

TEST_CASE("keyword files parse into name-sorted sets") {
  const auto sets = parse_keyword_sets(
      R"({"War": ["^guerr*"], "Balkans": ["^balcan.*"]})");
  REQUIRE(sets.size() == 2);
  CHECK(sets[0].name() == "Balkans");
  CHECK(sets[1].name() == "War");
  CHECK(sets[1].matches("guerra"));
}

TEST_CASE("malformed keyword JSON is a configuration error") {
  CHECK_THROWS_AS(parse_keyword_sets("not json"), config_error);
  CHECK_THROWS_AS(parse_keyword_sets("[1,2]"), config_error);
  CHECK_THROWS_AS(parse_keyword_sets(R"({"X": "^a"})"), config_error);
  CHECK_THROWS_AS(parse_keyword_sets(R"({"X": [42]})"), config_error);
}
