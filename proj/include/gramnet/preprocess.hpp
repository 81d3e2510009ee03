#pragma once

#include <compare>
#include <filesystem>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "gramnet/language_model.hpp"

namespace gramnet {

struct Date {
  int year = 0;
  int month = 0;
  int day = 0;

  auto operator<=>(const Date&) const = default;

  // Parses strict "YYYY-MM-DD". Throws data_error otherwise.
  static Date parse(const std::string& text);
  std::string to_string() const;
};

// One dated text unit (a newspaper issue).
struct Document {
  std::string id;
  Date date;
  std::string raw_text;
  std::vector<std::string> tokens;  // populated after processing
};

struct StopwordList {
  std::unordered_set<std::string> words;
  bool contains(const std::string& w) const { return words.count(w) > 0; }
};

struct LemmaDictionary {
  std::unordered_map<std::string, std::string> map;

  // Absent forms pass through unchanged.
  const std::string& lookup(const std::string& form) const {
    auto it = map.find(form);
    return it == map.end() ? form : it->second;
  }
};

// Order-preserving filter; drops every member of the list.
std::vector<std::string> remove_stopwords(const std::vector<std::string>& tokens,
                                          const StopwordList& list);

// Maps each token through the dictionary, identity fallback, order kept.
std::vector<std::string> lemmatize(const std::vector<std::string>& tokens,
                                   const LemmaDictionary& dict);

// One word per line, '#' starts a comment, words lowercased on load.
StopwordList load_stopwords(const std::filesystem::path& path);

// Tab-separated "form<TAB>lemma" lines, lowercased on load.
LemmaDictionary load_lemma_dictionary(const std::filesystem::path& path);

// Reads a whole file and rejects invalid UTF-8 (error names the file).
std::string read_text_file(const std::filesystem::path& path);

// Per-document token counts around each cleaning stage.
struct PreprocessStats {
  std::size_t tokens_normalized = 0;
  std::size_t tokens_corrected = 0;   // tokens altered by the spell corrector
  std::size_t tokens_after_stopwords = 0;
  std::size_t tokens_final = 0;
};

// Full cleaning pipeline for one document: normalize, spell-correct unknown
// tokens of length >= 3, drop stopwords, lemmatize. Fills doc.tokens.
PreprocessStats process_document(Document& doc, const LanguageModel& model,
                                 const StopwordList& stopwords,
                                 const LemmaDictionary& lemmas, int max_edit = 2);

}  // namespace gramnet
