#include "gramnet/preprocess.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "gramnet/error.hpp"
#include "gramnet/text.hpp"
#include "gramnet/utf8.hpp"

namespace gramnet {

Date Date::parse(const std::string& text) {
  const auto fail = [&] { throw data_error("malformed date '" + text + "'"); };
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') fail();
  for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u}) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) fail();
  }
  Date d;
  d.year = std::stoi(text.substr(0, 4));
  d.month = std::stoi(text.substr(5, 2));
  d.day = std::stoi(text.substr(8, 2));
  if (d.month < 1 || d.month > 12 || d.day < 1 || d.day > 31) fail();
  return d;
}

std::string Date::to_string() const {
  char buf[11];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, month, day);
  return buf;
}

std::vector<std::string> remove_stopwords(const std::vector<std::string>& tokens,
                                          const StopwordList& list) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) {
    if (!list.contains(t)) out.push_back(t);
  }
  return out;
}

std::vector<std::string> lemmatize(const std::vector<std::string>& tokens,
                                   const LemmaDictionary& dict) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(dict.lookup(t));
  return out;
}

namespace {

std::string lowercase_utf8(const std::string& s) {
  std::string out;
  for (char32_t cp : utf8::decode(s)) out += utf8::encode(utf8::to_lower(cp));
  return out;
}

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

}  // namespace

StopwordList load_stopwords(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open stopword list: " + path.string());
  StopwordList list;
  std::string line;
  while (std::getline(in, line)) {
    line = strip_cr(line);
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    // trim
    const auto is_space = [](unsigned char c) { return std::isspace(c); };
    while (!line.empty() && is_space(line.back())) line.pop_back();
    std::size_t start = 0;
    while (start < line.size() && is_space(line[start])) ++start;
    line.erase(0, start);
    if (line.empty()) continue;
    if (!utf8::valid(line))
      throw data_error("invalid UTF-8 in stopword list: " + path.string());
    list.words.insert(lowercase_utf8(line));
  }
  return list;
}

LemmaDictionary load_lemma_dictionary(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open lemma dictionary: " + path.string());
  LemmaDictionary dict;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = strip_cr(line);
    if (line.empty()) continue;
    if (!utf8::valid(line))
      throw data_error("invalid UTF-8 in lemma dictionary: " + path.string());
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 >= line.size()) {
      throw data_error("malformed lemma dictionary line " + std::to_string(lineno) +
                       " in " + path.string());
    }
    dict.map[lowercase_utf8(line.substr(0, tab))] =
        lowercase_utf8(line.substr(tab + 1));
  }
  return dict;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw data_error("cannot open file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  if (!utf8::valid(text)) throw data_error("invalid UTF-8 in file: " + path.string());
  return text;
}

PreprocessStats process_document(Document& doc, const LanguageModel& model,
                                 const StopwordList& stopwords,
                                 const LemmaDictionary& lemmas, int max_edit) {
  PreprocessStats stats;
  std::vector<std::string> tokens = normalize(doc.raw_text);
  stats.tokens_normalized = tokens.size();

  // Correction targets only unknown tokens of >= 3 code points; repeated
  // token types resolve through a per-document cache.
  std::unordered_map<std::string, std::string> cache;
  for (auto& t : tokens) {
    if (model.contains(t)) continue;
    if (utf8::decode(t).size() < 3) continue;
    auto it = cache.find(t);
    if (it == cache.end()) it = cache.emplace(t, correct(t, model, max_edit)).first;
    if (it->second != t) {
      t = it->second;
      ++stats.tokens_corrected;
    }
  }

  tokens = remove_stopwords(tokens, stopwords);
  stats.tokens_after_stopwords = tokens.size();

  doc.tokens = lemmatize(tokens, lemmas);
  stats.tokens_final = doc.tokens.size();
  return stats;
}

}  // namespace gramnet
