#include "gramnet/language_model.hpp"

#include <algorithm>

#include "gramnet/error.hpp"
#include "gramnet/utf8.hpp"

namespace gramnet {

LanguageModel train_language_model(
    const std::vector<std::vector<std::string>>& corpus) {
  LanguageModel model;
  for (const auto& doc : corpus) {
    for (const auto& token : doc) {
      ++model.counts[token];
      ++model.total;
    }
  }
  if (model.total == 0) throw data_error("empty training corpus");
  return model;
}

const std::vector<std::string>& default_alphabet() {
  static const std::vector<std::string> alphabet = [] {
    std::vector<std::string> a;
    for (char c = 'a'; c <= 'z'; ++c) a.emplace_back(1, c);
    for (const char* v : {"à", "è", "é", "ì", "ò", "ù"})
      a.emplace_back(v);
    return a;
  }();
  return alphabet;
}

std::set<std::string> edits1(const std::string& word,
                             const std::vector<std::string>& alphabet) {
  const std::vector<std::string> units = utf8::chars(word);
  const std::size_t n = units.size();

  const auto join = [](const std::vector<std::string>& parts, std::size_t from,
                       std::size_t to) {
    std::string out;
    for (std::size_t i = from; i < to; ++i) out += parts[i];
    return out;
  };

  std::set<std::string> out;
  for (std::size_t i = 0; i <= n; ++i) {
    const std::string left = join(units, 0, i);
    const std::string right = join(units, i, n);
    if (i < n) {
      // delete
      out.insert(left + join(units, i + 1, n));
      // transpose
      if (i + 1 < n) out.insert(left + units[i + 1] + units[i] + join(units, i + 2, n));
      // replace
      for (const auto& c : alphabet) out.insert(left + c + join(units, i + 1, n));
    }
    // insert
    for (const auto& c : alphabet) out.insert(left + c + right);
  }
  return out;
}

namespace {

// Best known candidate from a set: highest count, ties to the
// lexicographically smallest. Empty when none is known.
std::string best_known(const std::set<std::string>& candidates,
                       const LanguageModel& model) {
  std::string best;
  std::uint64_t best_count = 0;
  for (const auto& c : candidates) {
    auto it = model.counts.find(c);
    if (it == model.counts.end()) continue;
    if (it->second > best_count) {  // set iteration is sorted, first wins ties
      best = c;
      best_count = it->second;
    }
  }
  return best;
}

}  // namespace

std::string correct(const std::string& word, const LanguageModel& model,
                    int max_edit, const std::vector<std::string>& alphabet) {
  if (model.contains(word)) return word;

  const std::set<std::string> e1 = edits1(word, alphabet);
  if (std::string best = best_known(e1, model); !best.empty()) return best;

  if (max_edit >= 2) {
    std::set<std::string> known2;
    for (const auto& e : e1) {
      for (const auto& e2 : edits1(e, alphabet)) {
        if (model.contains(e2)) known2.insert(e2);
      }
    }
    if (std::string best = best_known(known2, model); !best.empty()) return best;
  }
  return word;
}

}  // namespace gramnet
