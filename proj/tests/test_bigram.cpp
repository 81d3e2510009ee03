#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "gramnet/bigram.hpp"
#include "gramnet/error.hpp"

using namespace gramnet;

namespace {

Corpus random_corpus(std::mt19937_64& rng, int max_docs, int max_len,
                     int alphabet_size) {
  Corpus corpus;
  const int docs = 1 + static_cast<int>(rng() % max_docs);
  for (int d = 0; d < docs; ++d) {
    std::vector<std::string> tokens;
    const int len = static_cast<int>(rng() % (max_len + 1));
    for (int i = 0; i < len; ++i)
      tokens.emplace_back(1, static_cast<char>('a' + rng() % alphabet_size));
    corpus.emplace_back("d" + std::to_string(d), std::move(tokens));
  }
  return corpus;
}

// Sliding-window recount, kept deliberately naive.
std::map<std::pair<std::string, std::string>, double> recount_bigrams(
    const Corpus& corpus) {
  std::map<std::pair<std::string, std::string>, double> counts;
  for (const auto& [id, tokens] : corpus) {
    (void)id;
    if (tokens.size() < 2) continue;
    for (std::size_t i = 0; i < tokens.size() - 1; ++i)
      counts[{tokens[i], tokens[i + 1]}] += 1.0;
  }
  return counts;
}

}  // namespace

TEST_CASE("bag of words counts multiplicities per document") {
  const DocTermMatrix bow = build_bow({{"d", {"a", "a", "b"}}});
  CHECK(bow.count("a", "d") == 2);
  CHECK(bow.count("b", "d") == 1);
  CHECK(bow.count("c", "d") == 0);
  CHECK(bow.documents == std::vector<std::string>{"d"});
  CHECK(bow.terms == std::vector<std::string>{"a", "b"});
}

TEST_CASE("empty corpus gives an empty matrix") {
  const DocTermMatrix bow = build_bow({});
  CHECK(bow.documents.empty());
  CHECK(bow.terms.empty());
  CHECK(bow.cells.empty());
}

TEST_CASE("duplicate document ids are rejected") {
  CHECK_THROWS_AS(build_bow({{"d", {"a"}}, {"d", {"b"}}}), data_error);
}

TEST_CASE("column sums equal document lengths") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const Corpus corpus = random_corpus(rng, 4, 25, 5);
    const DocTermMatrix bow = build_bow(corpus);
    for (const auto& [id, tokens] : corpus) {
      std::int64_t sum = 0;
      for (const auto& term : bow.terms) sum += bow.count(term, id);
      CHECK(sum == static_cast<std::int64_t>(tokens.size()));
    }
  }
}

TEST_CASE("bigram weights count adjacent ordered pairs") {
  const BigramNetwork net = build_bigrams({{"d", {"a", "b", "a", "b", "c"}}});
  CHECK(net.weight("a", "b") == 2.0);
  CHECK(net.weight("b", "a") == 1.0);
  CHECK(net.weight("b", "c") == 1.0);
  CHECK(net.weight("c", "a") == 0.0);
  CHECK(net.nodes == std::set<std::string>{"a", "b", "c"});
  CHECK(net.weight_mode == WeightMode::count);
}

TEST_CASE("single-token documents contribute no edges") {
  const BigramNetwork net = build_bigrams({{"d", {"solo"}}});
  CHECK(net.edges.empty());
  CHECK(net.nodes == std::set<std::string>{"solo"});
}

TEST_CASE("bigrams never span document boundaries and sum across documents") {
  const BigramNetwork net =
      build_bigrams({{"d1", {"a", "b"}}, {"d2", {"a", "b"}}});
  CHECK(net.weight("a", "b") == 2.0);
  CHECK(net.weight("b", "a") == 0.0);
  CHECK(net.edges.size() == 1);
}

TEST_CASE("bigram network equals the sliding-window recount") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const Corpus corpus = random_corpus(rng, 4, 50, 5);
    const BigramNetwork net = build_bigrams(corpus);
    CHECK(net.edges == recount_bigrams(corpus));
  }
}

TEST_CASE("total edge count equals the sum of document window counts") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const Corpus corpus = random_corpus(rng, 5, 30, 4);
    const BigramNetwork net = build_bigrams(corpus);
    double total = 0.0;
    for (const auto& [edge, w] : net.edges) {
      (void)edge;
      total += w;
    }
    double expected = 0.0;
    for (const auto& [id, tokens] : corpus) {
      (void)id;
      if (!tokens.empty()) expected += static_cast<double>(tokens.size() - 1);
    }
    CHECK(total == expected);
  }
}

TEST_CASE("corpus order does not change the network") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    Corpus corpus = random_corpus(rng, 5, 20, 3);
    const BigramNetwork net = build_bigrams(corpus);
    std::shuffle(corpus.begin(), corpus.end(), rng);
    const BigramNetwork shuffled = build_bigrams(corpus);
    CHECK(net.edges == shuffled.edges);
    CHECK(net.nodes == shuffled.nodes);
  }
}

TEST_CASE("conditional normalization divides by out-strength") {
  const BigramNetwork net = build_bigrams({{"d", {"a", "b", "a", "b", "c"}}});
  const BigramNetwork cond = normalize_conditional(net);
  CHECK(cond.weight_mode == WeightMode::conditional_probability);
  CHECK(cond.weight("a", "b") == doctest::Approx(1.0));
  CHECK(cond.weight("b", "a") == doctest::Approx(0.5));
  CHECK(cond.weight("b", "c") == doctest::Approx(0.5));
  CHECK(cond.nodes == net.nodes);
}

TEST_CASE("a lone out-edge normalizes to one") {
  BigramNetwork net;
  net.nodes = {"a", "b"};
  net.edges[{"a", "b"}] = 7.0;
  const BigramNetwork cond = normalize_conditional(net);
  CHECK(cond.weight("a", "b") == doctest::Approx(1.0));
}

TEST_CASE("nodes without out-edges stay edgeless after normalization") {
  BigramNetwork net;
  net.nodes = {"a", "b", "sink"};
  net.edges[{"a", "sink"}] = 2.0;
  net.edges[{"b", "sink"}] = 1.0;
  const BigramNetwork cond = normalize_conditional(net);
  CHECK(cond.nodes.count("sink") == 1);
  for (const auto& [edge, w] : cond.edges) {
    (void)w;
    CHECK(edge.first != "sink");
  }
}

TEST_CASE("normalization preserves support, out-sums and argmax") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 50; ++trial) {
    const Corpus corpus = random_corpus(rng, 3, 40, 5);
    const BigramNetwork net = build_bigrams(corpus);
    if (net.edges.empty()) continue;
    const BigramNetwork cond = normalize_conditional(net);

    CHECK(cond.edges.size() == net.edges.size());
    std::map<std::string, double> out_sum;
    std::map<std::string, std::pair<std::string, double>> count_argmax, cond_argmax;
    for (const auto& [edge, w] : net.edges) {
      auto& best = count_argmax[edge.first];
      if (best.first.empty() || w > best.second) best = {edge.second, w};
    }
    for (const auto& [edge, w] : cond.edges) {
      CHECK(net.edges.count(edge) == 1);
      CHECK(w > 0.0);
      out_sum[edge.first] += w;
      auto& best = cond_argmax[edge.first];
      if (best.first.empty() || w > best.second) best = {edge.second, w};
    }
    for (const auto& [node, sum] : out_sum) {
      (void)node;
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
    }
    for (const auto& [node, best] : count_argmax) {
      CHECK(cond_argmax.at(node).first == best.first);
    }
  }
}

TEST_CASE("matrix adapter places weights by node order") {
  const BigramNetwork empty_net{};
  CHECK(to_matrix(empty_net, {}).size() == 0);

  BigramNetwork net;
  net.nodes = {"a", "b"};
  net.edges[{"a", "b"}] = 2.0;
  const Matrix m = to_matrix(net, {"a", "b"});
  CHECK(m(0, 0) == 0.0);
  CHECK(m(0, 1) == 2.0);
  CHECK(m(1, 0) == 0.0);
  CHECK(m(1, 1) == 0.0);

  const Matrix permuted = to_matrix(net, {"b", "a"});
  CHECK(permuted(1, 0) == 2.0);
  CHECK(permuted(0, 1) == 0.0);
}

TEST_CASE("self-loops land on the diagonal") {
  BigramNetwork net;
  net.nodes = {"a"};
  net.edges[{"a", "a"}] = 3.0;
  const Matrix m = to_matrix(net, {"a"});
  CHECK(m(0, 0) == 3.0);
}

TEST_CASE("node order must be a permutation of the nodes") {
  BigramNetwork net;
  net.nodes = {"a", "b"};
  net.edges[{"a", "b"}] = 1.0;
  CHECK_THROWS_AS(to_matrix(net, {"a"}), data_error);
  CHECK_THROWS_AS(to_matrix(net, {"a", "c"}), data_error);
  CHECK_THROWS_AS(to_matrix(net, {"a", "a"}), data_error);
}

TEST_CASE("matrix round-trips the edge set") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 30; ++trial) {
    const Corpus corpus = random_corpus(rng, 3, 30, 4);
    const BigramNetwork net = build_bigrams(corpus);
    std::vector<std::string> order(net.nodes.begin(), net.nodes.end());
    std::shuffle(order.begin(), order.end(), rng);
    const Matrix m = to_matrix(net, order);

    std::map<std::pair<std::string, std::string>, double> readback;
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (std::size_t j = 0; j < order.size(); ++j) {
        if (m(i, j) != 0.0) readback[{order[i], order[j]}] = m(i, j);
      }
    }
    CHECK(readback == net.edges);
  }
}
