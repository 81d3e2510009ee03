#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace gramnet {

// Unigram frequency table backing the spell corrector.
struct LanguageModel {
  std::unordered_map<std::string, std::uint64_t> counts;
  std::uint64_t total = 0;

  bool contains(const std::string& word) const {
    return counts.find(word) != counts.end();
  }
  double probability(const std::string& word) const {
    if (total == 0) return 0.0;
    auto it = counts.find(word);
    return it == counts.end() ? 0.0
                              : static_cast<double>(it->second) / static_cast<double>(total);
  }
};

// Counts token multiplicities over the corpus. Throws data_error when the
// corpus holds no tokens at all.
LanguageModel train_language_model(const std::vector<std::vector<std::string>>& corpus);

// ASCII a-z plus the Italian accented vowels, one UTF-8 code point per entry.
const std::vector<std::string>& default_alphabet();

// All strings one edit away from word: deletes, adjacent transposes,
// single-character replaces and inserts, deduplicated. Edits operate on
// code points, so multi-byte alphabet entries stay intact.
std::set<std::string> edits1(const std::string& word,
                             const std::vector<std::string>& alphabet);

// Norvig-style correction. A word known to the model is returned unchanged;
// otherwise the highest-count known candidate at edit distance 1 wins, then
// distance 2 when max_edit allows it, then the word itself. Count ties break
// to the lexicographically smallest candidate.
std::string correct(const std::string& word, const LanguageModel& model,
                    int max_edit,
                    const std::vector<std::string>& alphabet = default_alphabet());

}  // namespace gramnet
