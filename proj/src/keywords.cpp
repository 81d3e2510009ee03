#include "gramnet/keywords.hpp"

#include <fstream>

#include <json.hpp>

#include "gramnet/error.hpp"

namespace gramnet {

KeywordSet::KeywordSet(std::string name, std::vector<std::string> patterns)
    : name_(std::move(name)), patterns_(std::move(patterns)) {
  if (name_.empty()) throw config_error("keyword set with empty name");
  if (patterns_.empty())
    throw config_error("keyword set '" + name_ + "' has no patterns");
  for (const auto& p : patterns_) {
    if (p.empty() || p[0] != '^') {
      throw config_error("pattern '" + p + "' in set '" + name_ +
                         "' is not anchored at the string start");
    }
    try {
      compiled_.emplace_back(p, std::regex::ECMAScript);
    } catch (const std::regex_error& e) {
      throw config_error("pattern '" + p + "' in set '" + name_ +
                         "' does not compile: " + e.what());
    }
  }
}

bool KeywordSet::matches(const std::string& lemma) const {
  for (const auto& re : compiled_) {
    if (std::regex_search(lemma, re)) return true;
  }
  return false;
}

std::set<std::string> match_seeds(const BigramNetwork& net, const KeywordSet& ks) {
  std::set<std::string> seeds;
  for (const auto& node : net.nodes) {
    if (ks.matches(node)) seeds.insert(node);
  }
  return seeds;
}

std::vector<KeywordSet> parse_keyword_sets(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw config_error(std::string("keyword set file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object())
    throw config_error("keyword set file must be an object mapping name to patterns");

  // Parsed JSON objects are keyed maps, so set names are unique and the
  // sets come out in sorted name order.
  std::vector<KeywordSet> sets;
  for (const auto& [name, value] : doc.items()) {
    if (!value.is_array())
      throw config_error("keyword set '" + name + "' must map to a pattern list");
    std::vector<std::string> patterns;
    for (const auto& p : value) {
      if (!p.is_string())
        throw config_error("keyword set '" + name + "' holds a non-string pattern");
      patterns.push_back(p.get<std::string>());
    }
    sets.emplace_back(name, std::move(patterns));
  }
  return sets;
}

std::vector<KeywordSet> load_keyword_sets(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open keyword set file: " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return parse_keyword_sets(text);
}

}  // namespace gramnet
