#include <doctest.h>

#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "gramnet/subnet.hpp"

using namespace gramnet;

namespace {

std::string node_name(int i) { return "n" + std::to_string(i); }

BigramNetwork from_pairs(int n, const std::vector<std::pair<int, int>>& edges) {
  BigramNetwork net;
  for (int i = 0; i < n; ++i) net.nodes.insert(node_name(i));
  for (auto [a, b] : edges) net.edges[{node_name(a), node_name(b)}] += 1.0;
  return net;
}

std::set<std::string> names(const std::set<int>& ids) {
  std::set<std::string> out;
  for (int i : ids) out.insert(node_name(i));
  return out;
}

// Undirected adjacency, self-loops dropped.
std::map<std::string, std::set<std::string>> undirected_adj(const BigramNetwork& net) {
  std::map<std::string, std::set<std::string>> adj;
  for (const auto& node : net.nodes) adj[node];
  for (const auto& [edge, w] : net.edges) {
    (void)w;
    if (edge.first == edge.second) continue;
    adj[edge.first].insert(edge.second);
    adj[edge.second].insert(edge.first);
  }
  return adj;
}

// Iterative peeling oracle: repeatedly delete nodes of degree < k.
std::set<std::string> peel_kcore(const BigramNetwork& net, std::size_t k) {
  auto adj = undirected_adj(net);
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto it = adj.begin(); it != adj.end();) {
      if (it->second.size() < k) {
        for (const auto& other : it->second) adj.at(other).erase(it->first);
        it = adj.erase(it);
        changed = true;
      } else {
        ++it;
      }
    }
  }
  std::set<std::string> out;
  for (const auto& [node, neigh] : adj) {
    (void)neigh;
    out.insert(node);
  }
  return out;
}

std::set<std::string> oracle_smallest_core(const BigramNetwork& net,
                                           std::size_t min_nodes) {
  std::set<std::string> chosen = peel_kcore(net, 1);
  for (std::size_t k = 2;; ++k) {
    const auto core = peel_kcore(net, k);
    if (core.size() >= min_nodes) chosen = core;
    else break;
    if (core.empty()) break;
  }
  return chosen;
}

BigramNetwork random_net(std::mt19937_64& rng, int max_n, double edge_prob) {
  const int n = 1 + static_cast<int>(rng() % max_n);
  std::vector<std::pair<int, int>> edges;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (a == b) continue;
      if ((rng() % 1000) / 1000.0 < edge_prob) edges.emplace_back(a, b);
    }
  }
  return from_pairs(n, edges);
}

bool is_induced(const BigramNetwork& whole, const BigramNetwork& part) {
  for (const auto& [edge, w] : part.edges) {
    if (whole.weight(edge.first, edge.second) != w) return false;
  }
  for (const auto& [edge, w] : whole.edges) {
    if (part.nodes.count(edge.first) > 0 && part.nodes.count(edge.second) > 0 &&
        part.weight(edge.first, edge.second) != w)
      return false;
  }
  return true;
}

}  // namespace

TEST_CASE("second-order neighborhood walks two undirected steps") {
  const BigramNetwork path = from_pairs(4, {{0, 1}, {1, 2}, {2, 3}});
  const Subnetwork sub = second_order_neighborhood(path, names({0}));
  CHECK(sub.net.nodes == names({0, 1, 2}));
  CHECK(sub.net.weight(node_name(0), node_name(1)) == 1.0);
  CHECK(sub.net.weight(node_name(1), node_name(2)) == 1.0);
  CHECK(sub.net.edges.size() == 2);
  CHECK(sub.seeds == names({0}));
}

TEST_CASE("edges are traversable against their direction") {
  // 3 -> 2 -> 0, seed 0: both reachable within two undirected steps
  const BigramNetwork net = from_pairs(4, {{3, 2}, {2, 0}});
  const Subnetwork sub = second_order_neighborhood(net, names({0}));
  CHECK(sub.net.nodes == names({0, 2, 3}));
}

TEST_CASE("an isolated seed keeps only itself") {
  const BigramNetwork net = from_pairs(3, {{1, 2}});
  const Subnetwork sub = second_order_neighborhood(net, names({0}));
  CHECK(sub.net.nodes == names({0}));
  CHECK(sub.net.edges.empty());
}

TEST_CASE("empty seeds give an empty subnetwork") {
  const BigramNetwork net = from_pairs(3, {{0, 1}});
  const Subnetwork sub = second_order_neighborhood(net, {});
  CHECK(sub.net.nodes.empty());
  CHECK(sub.net.edges.empty());
}

TEST_CASE("disjoint seed neighborhoods union") {
  const BigramNetwork net = from_pairs(8, {{0, 1}, {1, 2}, {5, 6}, {6, 7}});
  const Subnetwork a = second_order_neighborhood(net, names({0}));
  const Subnetwork b = second_order_neighborhood(net, names({5}));
  const Subnetwork both = second_order_neighborhood(net, names({0, 5}));
  std::set<std::string> expected = a.net.nodes;
  expected.insert(b.net.nodes.begin(), b.net.nodes.end());
  CHECK(both.net.nodes == expected);
}

TEST_CASE("neighborhoods are monotone in the seed set") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const BigramNetwork net = random_net(rng, 25, 0.08);
    std::set<std::string> small, large;
    for (const auto& node : net.nodes) {
      if (rng() % 4 == 0) {
        small.insert(node);
        large.insert(node);
      } else if (rng() % 4 == 0) {
        large.insert(node);
      }
    }
    const Subnetwork s = second_order_neighborhood(net, small);
    const Subnetwork l = second_order_neighborhood(net, large);
    for (const auto& node : s.net.nodes) CHECK(l.net.nodes.count(node) == 1);
    CHECK(is_induced(net, s.net));
    CHECK(is_induced(net, l.net));
  }
}

TEST_CASE("degree pruning keeps nodes at or above the median") {
  // Degrees: n0=1, n1=2, n2=3, n3=3, n4=5 over an undirected star-ish graph.
  // Median over {3,3,5} is 3, so n2, n3, n4 survive.
  const BigramNetwork net = from_pairs(
      9, {{0, 4},          // n0: degree 1
          {1, 4}, {1, 2},  // n1: degree 2
          {2, 4}, {2, 3},  // n2: degree 3 (n1, n4, n3)
          {3, 4}, {3, 5},  // n3: degree 3 (n2, n4, n5)
          {4, 5},          // n4: degree 5 (n0..n3, n5)
          {5, 6}, {6, 7}, {7, 8}, {8, 6}});
  Subnetwork sub;
  sub.net = net;
  const Subnetwork pruned = degree_prune(sub);
  CHECK(pruned.net.nodes.count(node_name(2)) == 1);
  CHECK(pruned.net.nodes.count(node_name(3)) == 1);
  CHECK(pruned.net.nodes.count(node_name(4)) == 1);
  CHECK(pruned.net.nodes.count(node_name(0)) == 0);
  CHECK(pruned.net.nodes.count(node_name(1)) == 0);
  REQUIRE(pruned.steps.size() == 1);
  CHECK(pruned.steps[0].name == "degree_prune");
  CHECK(pruned.steps[0].nodes_before == 9);
}

TEST_CASE("pruning is a no-op when no node has more than two neighbors") {
  const BigramNetwork cycle = from_pairs(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
  Subnetwork sub;
  sub.net = cycle;
  const Subnetwork pruned = degree_prune(sub);
  CHECK(pruned.net.nodes == cycle.nodes);
  CHECK(pruned.net.edges == cycle.edges);
}

TEST_CASE("a star prunes to its center") {
  std::vector<std::pair<int, int>> edges;
  for (int leaf = 1; leaf <= 10; ++leaf) edges.emplace_back(0, leaf);
  const BigramNetwork star = from_pairs(11, edges);
  Subnetwork sub;
  sub.net = star;
  const Subnetwork pruned = degree_prune(sub);
  CHECK(pruned.net.nodes == names({0}));
}

TEST_CASE("seeds survive degree pruning unconditionally") {
  std::vector<std::pair<int, int>> edges;
  for (int leaf = 1; leaf <= 10; ++leaf) edges.emplace_back(0, leaf);
  const BigramNetwork star = from_pairs(11, edges);
  Subnetwork sub;
  sub.net = star;
  sub.seeds = names({3});
  const Subnetwork pruned = degree_prune(sub);
  CHECK(pruned.net.nodes == names({0, 3}));
  CHECK(pruned.seeds == names({3}));
  CHECK(pruned.net.weight(node_name(0), node_name(3)) == 1.0);
}

TEST_CASE("k-core of a complete graph is the whole graph") {
  std::vector<std::pair<int, int>> edges;
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 5; ++b)
      if (a != b) edges.emplace_back(a, b);
  Subnetwork sub;
  sub.net = from_pairs(5, edges);
  const Subnetwork core = kcore_reduce(sub, 4);
  CHECK(core.net.nodes.size() == 5);
  REQUIRE(core.steps.size() == 1);
  CHECK(core.steps[0].name == "kcore_reduce_k4");
}

TEST_CASE("long paths only ever have a 1-core") {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < 200; ++i) edges.emplace_back(i, i + 1);
  Subnetwork sub;
  sub.net = from_pairs(200, edges);
  const Subnetwork core = kcore_reduce(sub, 95);
  CHECK(core.net.nodes.size() == 200);
  CHECK(core.steps[0].name == "kcore_reduce_k1");
}

TEST_CASE("unreachable node minimums fall back to the 1-core") {
  const BigramNetwork net = from_pairs(4, {{0, 1}, {1, 2}, {2, 0}});
  Subnetwork sub;
  sub.net = net;
  sub.seeds = names({3});
  const Subnetwork core = kcore_reduce(sub, 1000);
  // n3 is isolated: even the 1-core drops it, and so may the seed set.
  CHECK(core.net.nodes == names({0, 1, 2}));
  CHECK(core.seeds.empty());
}

TEST_CASE("k-core reduction matches the peeling oracle") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    const BigramNetwork net = random_net(rng, 40, 0.1);
    Subnetwork sub;
    sub.net = net;
    const std::size_t min_nodes = 1 + rng() % (net.nodes.size() + 3);
    const Subnetwork reduced = kcore_reduce(sub, min_nodes);
    CHECK(reduced.net.nodes == oracle_smallest_core(net, min_nodes));
    CHECK(is_induced(net, reduced.net));
  }
}

namespace {

// Hub-and-spoke construction sized to steer the staged reduction rules.
BigramNetwork hubs_and_leaves(int hubs, int leaves_per_hub) {
  std::vector<std::pair<int, int>> edges;
  // dense hub clique
  for (int a = 0; a < hubs; ++a)
    for (int b = a + 1; b < hubs; ++b) edges.emplace_back(a, b);
  int next = hubs;
  for (int h = 0; h < hubs; ++h)
    for (int l = 0; l < leaves_per_hub; ++l) edges.emplace_back(h, next++);
  return from_pairs(next, edges);
}

}  // namespace

TEST_CASE("under-cap subnetworks pass through unchanged") {
  std::mt19937_64 rng(19);
  const BigramNetwork net = random_net(rng, 30, 0.1);
  Subnetwork sub;
  sub.net = net;
  const Subnetwork out = reduce_pipeline(sub, 500, 95);
  CHECK(out.net.nodes == net.nodes);
  CHECK(out.steps.empty());
}

TEST_CASE("degree pruning alone can satisfy the cap") {
  // 20 hubs with 29 leaves each: 600 nodes; pruning keeps the hubs (degree
  // 48) and drops every leaf (degree 1), landing well under the cap.
  const BigramNetwork net = hubs_and_leaves(20, 29);
  REQUIRE(net.nodes.size() == 600);
  Subnetwork sub;
  sub.net = net;
  const Subnetwork out = reduce_pipeline(sub, 500, 95);
  REQUIRE(out.steps.size() == 1);
  CHECK(out.steps[0].name == "degree_prune");
  CHECK(out.net.nodes.size() == 20);
}

TEST_CASE("the k-core stage runs when pruning is not enough") {
  // 520 hubs in a clique plus 80 degree-1 leaves: median hub degree survives
  // pruning (520 nodes > 500), then the k-core stage bites.
  std::vector<std::pair<int, int>> edges;
  const int hubs = 520;
  for (int a = 0; a < hubs; ++a)
    for (int b = a + 1; b < hubs; ++b) edges.emplace_back(a, b);
  for (int l = 0; l < 80; ++l) edges.emplace_back(l, hubs + l);
  const BigramNetwork net = from_pairs(hubs + 80, edges);
  REQUIRE(net.nodes.size() == 600);

  Subnetwork sub;
  sub.net = net;
  const Subnetwork out = reduce_pipeline(sub, 500, 95);
  REQUIRE(out.steps.size() == 2);
  CHECK(out.steps[0].name == "degree_prune");
  CHECK(out.steps[0].nodes_after == 520);
  CHECK(out.steps[1].name.substr(0, 13) == "kcore_reduce_");
  CHECK(out.net.nodes.size() >= 95);
  CHECK(out.net.nodes.size() == 520);  // clique collapses to itself
}
