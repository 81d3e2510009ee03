#pragma once

#include <filesystem>
#include <regex>
#include <set>
#include <string>
#include <vector>

#include "gramnet/bigram.hpp"

namespace gramnet {

// Named group of anchored lexical patterns treated as one concept. Patterns
// must start with '^'; a trailing '$' forces a full match, otherwise the
// pattern matches a prefix of the lemma.
class KeywordSet {
 public:
  KeywordSet() = default;
  // Throws config_error on unanchored or non-compiling patterns.
  KeywordSet(std::string name, std::vector<std::string> patterns);

  const std::string& name() const { return name_; }
  const std::vector<std::string>& patterns() const { return patterns_; }

  bool matches(const std::string& lemma) const;

 private:
  std::string name_;
  std::vector<std::string> patterns_;
  std::vector<std::regex> compiled_;
};

// All nodes whose lemma matches any pattern of the set.
std::set<std::string> match_seeds(const BigramNetwork& net, const KeywordSet& ks);

// JSON file mapping set name -> list of patterns. Names must be unique.
std::vector<KeywordSet> load_keyword_sets(const std::filesystem::path& path);

// Parses the same mapping from an already-loaded JSON string.
std::vector<KeywordSet> parse_keyword_sets(const std::string& json_text);

}  // namespace gramnet
