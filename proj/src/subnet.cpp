#include "gramnet/subnet.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

#include "gramnet/error.hpp"

namespace gramnet {

namespace {

// Indexed undirected view of a network; self-loops are not neighbors.
struct UndirectedView {
  std::vector<std::string> nodes;
  std::unordered_map<std::string, int> index;
  std::vector<std::vector<int>> adj;

  explicit UndirectedView(const BigramNetwork& net) {
    nodes.assign(net.nodes.begin(), net.nodes.end());
    for (int i = 0; i < static_cast<int>(nodes.size()); ++i) index[nodes[i]] = i;
    std::vector<std::set<int>> neigh(nodes.size());
    for (const auto& [edge, w] : net.edges) {
      (void)w;
      const int a = index.at(edge.first);
      const int b = index.at(edge.second);
      if (a == b) continue;
      neigh[a].insert(b);
      neigh[b].insert(a);
    }
    adj.resize(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i)
      adj[i].assign(neigh[i].begin(), neigh[i].end());
  }
};

// Induced subgraph: retained nodes, every edge among them, weights kept.
BigramNetwork induce(const BigramNetwork& net, const std::set<std::string>& keep) {
  BigramNetwork out;
  out.weight_mode = net.weight_mode;
  out.nodes = keep;
  for (const auto& [edge, w] : net.edges) {
    if (keep.count(edge.first) > 0 && keep.count(edge.second) > 0)
      out.edges[edge] = w;
  }
  return out;
}

std::set<std::string> intersect(const std::set<std::string>& a,
                                const std::set<std::string>& b) {
  std::set<std::string> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::inserter(out, out.begin()));
  return out;
}

}  // namespace

Subnetwork second_order_neighborhood(const BigramNetwork& net,
                                     const std::set<std::string>& seeds) {
  for (const auto& s : seeds) {
    if (net.nodes.count(s) == 0)
      throw internal_error("seed '" + s + "' is not a node of the network");
  }
  const UndirectedView view(net);

  std::vector<int> dist(view.nodes.size(), -1);
  std::deque<int> queue;
  for (const auto& s : seeds) {
    const int i = view.index.at(s);
    dist[i] = 0;
    queue.push_back(i);
  }
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    if (dist[u] == 2) continue;
    for (int v : view.adj[u]) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }

  std::set<std::string> keep;
  for (std::size_t i = 0; i < view.nodes.size(); ++i) {
    if (dist[i] >= 0) keep.insert(view.nodes[i]);
  }

  Subnetwork sub;
  sub.net = induce(net, keep);
  sub.seeds = seeds;
  return sub;
}

Subnetwork degree_prune(const Subnetwork& sub) {
  const UndirectedView view(sub.net);
  const std::size_t before = view.nodes.size();

  std::vector<std::size_t> degree(view.nodes.size());
  for (std::size_t i = 0; i < view.nodes.size(); ++i) degree[i] = view.adj[i].size();

  std::vector<std::size_t> above_two;
  for (std::size_t d : degree) {
    if (d > 2) above_two.push_back(d);
  }

  Subnetwork out;
  out.seeds = sub.seeds;
  out.steps = sub.steps;
  if (above_two.empty()) {
    out.net = sub.net;
    out.steps.push_back({"degree_prune", before, before});
    return out;
  }

  std::sort(above_two.begin(), above_two.end());
  const std::size_t median = above_two[(above_two.size() - 1) / 2];

  std::set<std::string> keep;
  for (std::size_t i = 0; i < view.nodes.size(); ++i) {
    if (degree[i] >= median || sub.seeds.count(view.nodes[i]) > 0)
      keep.insert(view.nodes[i]);
  }
  out.net = induce(sub.net, keep);
  out.steps.push_back({"degree_prune", before, keep.size()});
  return out;
}

Subnetwork kcore_reduce(const Subnetwork& sub, std::size_t min_nodes) {
  if (min_nodes < 1) throw internal_error("kcore_reduce requires min_nodes >= 1");
  const UndirectedView view(sub.net);
  const std::size_t n = view.nodes.size();

  // Core numbers by minimum-degree peeling.
  std::vector<std::size_t> degree(n), core(n, 0);
  for (std::size_t i = 0; i < n; ++i) degree[i] = view.adj[i].size();
  std::vector<char> removed(n, 0);
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;

  std::size_t current_k = 0;
  for (std::size_t round = 0; round < n; ++round) {
    std::size_t best = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (!removed[i] && (best == n || degree[i] < degree[best])) best = i;
    }
    current_k = std::max(current_k, degree[best]);
    core[best] = current_k;
    removed[best] = 1;
    for (int v : view.adj[best]) {
      if (!removed[v]) --degree[v];
    }
  }

  // Largest k whose core keeps at least min_nodes nodes, 1-core fallback.
  std::size_t max_core = 0;
  for (std::size_t c : core) max_core = std::max(max_core, c);
  std::size_t chosen_k = 1;
  for (std::size_t k = max_core; k >= 1; --k) {
    const auto count = static_cast<std::size_t>(
        std::count_if(core.begin(), core.end(), [&](std::size_t c) { return c >= k; }));
    if (count >= min_nodes) {
      chosen_k = k;
      break;
    }
    if (k == 1) break;
  }

  std::set<std::string> keep;
  for (std::size_t i = 0; i < n; ++i) {
    if (core[i] >= chosen_k) keep.insert(view.nodes[i]);
  }

  Subnetwork out;
  out.net = induce(sub.net, keep);
  out.seeds = intersect(sub.seeds, keep);
  out.steps = sub.steps;
  out.steps.push_back({"kcore_reduce_k" + std::to_string(chosen_k), n, keep.size()});
  return out;
}

Subnetwork reduce_pipeline(const Subnetwork& sub, std::size_t size_cap,
                           std::size_t min_core) {
  if (sub.net.nodes.size() <= size_cap) return sub;
  Subnetwork pruned = degree_prune(sub);
  if (pruned.net.nodes.size() <= size_cap) return pruned;
  return kcore_reduce(pruned, min_core);
}

}  // namespace gramnet
