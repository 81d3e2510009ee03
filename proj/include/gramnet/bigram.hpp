#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gramnet/matrix.hpp"

namespace gramnet {

enum class WeightMode { count, conditional_probability };

// Directed weighted graph on lemmas. Absent edges are absent; weights are
// positive counts in count mode and out-normalized probabilities otherwise.
struct BigramNetwork {
  std::set<std::string> nodes;
  std::map<std::pair<std::string, std::string>, double> edges;
  WeightMode weight_mode = WeightMode::count;

  double weight(const std::string& a, const std::string& b) const {
    auto it = edges.find({a, b});
    return it == edges.end() ? 0.0 : it->second;
  }
};

// Sparse term-by-document count matrix.
struct DocTermMatrix {
  std::vector<std::string> documents;
  std::vector<std::string> terms;
  std::map<std::pair<std::string, std::string>, std::int64_t> cells;  // (term, doc)

  std::int64_t count(const std::string& term, const std::string& doc) const {
    auto it = cells.find({term, doc});
    return it == cells.end() ? 0 : it->second;
  }
};

using Corpus = std::vector<std::pair<std::string, std::vector<std::string>>>;

// Throws data_error on duplicate document ids.
DocTermMatrix build_bow(const Corpus& corpus);

// Adjacent ordered pairs summed over documents; pairs never span documents.
BigramNetwork build_bigrams(const Corpus& corpus);

// Rescales each node's outgoing weights to sum to one. Requires count mode.
BigramNetwork normalize_conditional(const BigramNetwork& net);

// Dense adjacency in the given node order. node_order must be a permutation
// of net.nodes.
Matrix to_matrix(const BigramNetwork& net, const std::vector<std::string>& node_order);

}  // namespace gramnet
