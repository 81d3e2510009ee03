#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "gramnet/bigram.hpp"

namespace gramnet {

struct ReductionStep {
  std::string name;
  std::size_t nodes_before = 0;
  std::size_t nodes_after = 0;
};

// A bigram network restricted to a keyword neighborhood. seeds tracks which
// retained nodes matched the keyword set; steps logs each reduction applied.
// Degree pruning never removes a seed, k-core reduction may.
struct Subnetwork {
  BigramNetwork net;
  std::set<std::string> seeds;
  std::vector<ReductionStep> steps;
};

// Induced subgraph on all nodes within undirected distance 2 of any seed.
// Seeds must be nodes of net; empty seeds give an empty subnetwork.
Subnetwork second_order_neighborhood(const BigramNetwork& net,
                                     const std::set<std::string>& seeds);

// Keeps nodes whose distinct-neighbor degree reaches the median degree of
// nodes with more than two neighbors, plus all seeds. No node with degree
// above two means no-op. Even-size medians take the lower middle value.
Subnetwork degree_prune(const Subnetwork& sub);

// Smallest undirected k-core (largest k) still holding at least min_nodes
// nodes; falls back to the 1-core when even that is smaller.
Subnetwork kcore_reduce(const Subnetwork& sub, std::size_t min_nodes = 95);

// Degree pruning when above size_cap, then k-core reduction when still
// above it; under-cap subnetworks pass through unchanged.
Subnetwork reduce_pipeline(const Subnetwork& sub, std::size_t size_cap = 500,
                           std::size_t min_core = 95);

}  // namespace gramnet
