#include "gramnet/bigram.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "gramnet/error.hpp"

namespace gramnet {

DocTermMatrix build_bow(const Corpus& corpus) {
  DocTermMatrix bow;
  std::unordered_set<std::string> seen;
  std::set<std::string> terms;
  for (const auto& [id, tokens] : corpus) {
    if (!seen.insert(id).second) throw data_error("duplicate document id '" + id + "'");
    bow.documents.push_back(id);
    for (const auto& t : tokens) {
      ++bow.cells[{t, id}];
      terms.insert(t);
    }
  }
  bow.terms.assign(terms.begin(), terms.end());
  return bow;
}

BigramNetwork build_bigrams(const Corpus& corpus) {
  BigramNetwork net;
  net.weight_mode = WeightMode::count;
  for (const auto& [id, tokens] : corpus) {
    for (const auto& t : tokens) net.nodes.insert(t);
    for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
      net.edges[{tokens[i], tokens[i + 1]}] += 1.0;
    }
  }
  return net;
}

BigramNetwork normalize_conditional(const BigramNetwork& net) {
  if (net.weight_mode != WeightMode::count)
    throw internal_error("normalize_conditional expects a count-mode network");
  std::unordered_map<std::string, double> out_sum;
  for (const auto& [edge, w] : net.edges) out_sum[edge.first] += w;

  BigramNetwork result;
  result.weight_mode = WeightMode::conditional_probability;
  result.nodes = net.nodes;
  for (const auto& [edge, w] : net.edges) {
    result.edges[edge] = w / out_sum[edge.first];
  }
  return result;
}

Matrix to_matrix(const BigramNetwork& net, const std::vector<std::string>& node_order) {
  if (node_order.size() != net.nodes.size() ||
      !std::all_of(node_order.begin(), node_order.end(),
                   [&](const std::string& n) { return net.nodes.count(n) > 0; })) {
    throw data_error("node order is not a permutation of the network's nodes");
  }
  std::unordered_set<std::string> distinct(node_order.begin(), node_order.end());
  if (distinct.size() != node_order.size())
    throw data_error("node order is not a permutation of the network's nodes");

  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < node_order.size(); ++i) index[node_order[i]] = i;

  Matrix m(node_order.size());
  for (const auto& [edge, w] : net.edges) {
    m(index.at(edge.first), index.at(edge.second)) = w;
  }
  return m;
}

}  // namespace gramnet
