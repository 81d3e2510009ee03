#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "gramnet/matrix.hpp"

namespace gramnet {

enum class BlockType { null_block, complete_block };
enum class Measure { sum_of_squares, absolute_deviation };
enum class DiagonalMode { ignore, include };

std::string to_string(BlockType t);
std::string to_string(Measure m);

// Assignment of n nodes to clusters 0..k-1; no cluster may be empty.
struct Partition {
  std::vector<int> assignment;
  int k = 0;

  // Throws data_error on size mismatch, out-of-range index or empty cluster.
  void validate(std::size_t n) const;
};

// Relabels clusters by first appearance so equivalent partitions compare
// equal (node 0's cluster becomes 0, the next new cluster 1, ...).
std::vector<int> canonical_assignment(const std::vector<int>& assignment, int k);

struct BlockSpec {
  int k = 1;
  bool allow_null = true;
  bool allow_complete = true;
  Measure measure = Measure::sum_of_squares;
  DiagonalMode diagonal = DiagonalMode::ignore;
};

// Inconsistency of one block's cells under an ideal block type: null blocks
// deviate from 0, complete blocks from their central value (mean under
// sum_of_squares, median under absolute_deviation).
struct BlockScore {
  double score = 0.0;
  double ideal = 0.0;
};
BlockScore block_inconsistency(const std::vector<double>& values, BlockType type,
                               Measure measure);

// Criterion evaluation: per block the best allowed type (ties go to null)
// and the summed inconsistency.
struct CriterionEval {
  double total = 0.0;
  std::vector<BlockType> types;   // k*k, row-major by (row cluster, col cluster)
  std::vector<double> ideals;     // k*k
};
CriterionEval criterion(const Matrix& matrix, const Partition& partition,
                        const BlockSpec& spec);

struct BlockmodelResult {
  Partition partition;
  double criterion = 0.0;
  std::vector<BlockType> block_types;
  std::vector<double> block_ideals;
  int restarts_run = 0;
  int best_restart_index = -1;
};

// Incremental criterion bookkeeping for sum_of_squares: per-block count,
// sum and sum of squares support O(n) move deltas. Deltas must agree with
// full re-evaluation to 1e-9.
class SquaresCache {
 public:
  SquaresCache(const Matrix& matrix, std::vector<int> assignment,
               const BlockSpec& spec);

  double total() const { return total_; }
  const std::vector<int>& assignment() const { return assignment_; }

  // Criterion change if node u moved to cluster `to` (0 when to == current).
  double relocation_delta(std::size_t u, int to) const;
  // Criterion change if nodes u and v swapped clusters.
  double exchange_delta(std::size_t u, std::size_t v) const;

  void apply_relocation(std::size_t u, int to);
  void apply_exchange(std::size_t u, std::size_t v);

 private:
  void rebuild();
  double block_score(double count, double sum, double sumsq) const;

  const Matrix& matrix_;
  std::vector<int> assignment_;
  BlockSpec spec_;
  std::vector<double> count_, sum_, sumsq_;  // k*k each
  double total_ = 0.0;

  // Scratch for delta evaluation.
  mutable std::vector<double> dcount_, dsum_, dsumsq_;
  mutable std::vector<int> touched_;
};

// Restart-based best-improvement search over relocations and exchanges.
// Deterministic for fixed (seed, restarts) regardless of thread count:
// restart r draws from seed + r, and the winner is the lexicographic
// minimum of (criterion, restart index, canonical assignment).
BlockmodelResult local_search(const Matrix& matrix, const BlockSpec& spec,
                              int restarts, std::uint64_t seed, int threads = 0);

// Exhaustive oracle over all partitions into exactly k non-empty clusters.
// Refuses instances with more than one million partitions.
BlockmodelResult brute_force(const Matrix& matrix, const BlockSpec& spec);

// Number of partitions of n items into exactly k non-empty clusters,
// saturating at 2 million to keep the oracle guard overflow-free.
std::uint64_t partition_count(std::size_t n, int k);

// Calls fn with every canonical assignment of n nodes into exactly k
// non-empty clusters, in lexicographic order.
void for_each_partition(std::size_t n, int k,
                        const std::function<void(const std::vector<int>&)>& fn);

// Matrix rows/columns reordered by cluster then original node order, with
// the permutation and internal cluster boundaries for plotting.
struct PermutedImage {
  Matrix matrix;
  std::vector<std::size_t> node_order;   // original index per permuted row
  std::vector<std::size_t> boundaries;   // k-1 internal cluster edges
};
PermutedImage permuted_image(const Matrix& matrix, const BlockmodelResult& result);

}  // namespace gramnet
