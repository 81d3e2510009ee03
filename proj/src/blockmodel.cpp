#include "gramnet/blockmodel.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

#include "gramnet/error.hpp"

namespace gramnet {

namespace {

constexpr double kImprovementEps = 1e-12;
constexpr std::uint64_t kOracleGuard = 1'000'000;

void validate_spec(const BlockSpec& spec) {
  if (spec.k < 1) throw config_error("cluster count must be at least 1");
  if (!spec.allow_null && !spec.allow_complete)
    throw config_error("at least one block type must be allowed");
}

// Deterministic bounded draw; avoids the implementation-defined
// std::uniform_int_distribution.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
  return rng() % bound;
}

}  // namespace

std::string to_string(BlockType t) {
  return t == BlockType::null_block ? "null" : "complete";
}

std::string to_string(Measure m) {
  return m == Measure::sum_of_squares ? "sum_of_squares" : "absolute_deviation";
}

void Partition::validate(std::size_t n) const {
  if (k < 1) throw data_error("partition has no clusters");
  if (assignment.size() != n)
    throw data_error("partition size " + std::to_string(assignment.size()) +
                     " does not match matrix dimension " + std::to_string(n));
  std::vector<std::size_t> sizes(k, 0);
  for (int c : assignment) {
    if (c < 0 || c >= k)
      throw data_error("cluster index " + std::to_string(c) + " out of range");
    ++sizes[c];
  }
  for (int c = 0; c < k; ++c) {
    if (sizes[c] == 0) throw data_error("cluster " + std::to_string(c) + " is empty");
  }
}

std::vector<int> canonical_assignment(const std::vector<int>& assignment, int k) {
  std::vector<int> relabel(k, -1);
  std::vector<int> out(assignment.size());
  int next = 0;
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    int& label = relabel[assignment[i]];
    if (label < 0) label = next++;
    out[i] = label;
  }
  return out;
}

BlockScore block_inconsistency(const std::vector<double>& values, BlockType type,
                               Measure measure) {
  BlockScore result;
  if (values.empty()) return result;

  if (type == BlockType::complete_block) {
    if (measure == Measure::sum_of_squares) {
      double sum = 0.0;
      for (double x : values) sum += x;
      result.ideal = sum / static_cast<double>(values.size());
    } else {
      std::vector<double> sorted = values;
      std::sort(sorted.begin(), sorted.end());
      result.ideal = sorted[(sorted.size() - 1) / 2];  // lower middle
    }
  }

  for (double x : values) {
    const double dev = x - result.ideal;
    result.score += measure == Measure::sum_of_squares ? dev * dev : std::abs(dev);
  }
  return result;
}

CriterionEval criterion(const Matrix& matrix, const Partition& partition,
                        const BlockSpec& spec) {
  validate_spec(spec);
  const std::size_t n = matrix.size();
  if (partition.k != spec.k)
    throw data_error("partition cluster count does not match the block spec");
  partition.validate(n);

  const int k = spec.k;
  std::vector<std::vector<double>> cells(static_cast<std::size_t>(k) * k);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (u == v && spec.diagonal == DiagonalMode::ignore) continue;
      cells[partition.assignment[u] * k + partition.assignment[v]].push_back(
          matrix(u, v));
    }
  }

  CriterionEval eval;
  eval.types.resize(cells.size());
  eval.ideals.resize(cells.size());
  for (std::size_t b = 0; b < cells.size(); ++b) {
    BlockType chosen = BlockType::null_block;
    BlockScore best;
    if (spec.allow_null && spec.allow_complete) {
      const BlockScore null_s =
          block_inconsistency(cells[b], BlockType::null_block, spec.measure);
      const BlockScore comp_s =
          block_inconsistency(cells[b], BlockType::complete_block, spec.measure);
      if (comp_s.score < null_s.score) {
        chosen = BlockType::complete_block;
        best = comp_s;
      } else {
        best = null_s;  // ties go to null
      }
    } else if (spec.allow_null) {
      best = block_inconsistency(cells[b], BlockType::null_block, spec.measure);
    } else {
      chosen = BlockType::complete_block;
      best = block_inconsistency(cells[b], BlockType::complete_block, spec.measure);
    }
    eval.types[b] = chosen;
    eval.ideals[b] = best.ideal;
    eval.total += best.score;
  }
  return eval;
}

// --- SquaresCache ---------------------------------------------------------

SquaresCache::SquaresCache(const Matrix& matrix, std::vector<int> assignment,
                           const BlockSpec& spec)
    : matrix_(matrix), assignment_(std::move(assignment)), spec_(spec) {
  validate_spec(spec_);
  if (spec_.measure != Measure::sum_of_squares)
    throw internal_error("SquaresCache supports sum_of_squares only");
  const std::size_t kk = static_cast<std::size_t>(spec_.k) * spec_.k;
  count_.resize(kk);
  sum_.resize(kk);
  sumsq_.resize(kk);
  dcount_.resize(kk);
  dsum_.resize(kk);
  dsumsq_.resize(kk);
  rebuild();
}

void SquaresCache::rebuild() {
  std::fill(count_.begin(), count_.end(), 0.0);
  std::fill(sum_.begin(), sum_.end(), 0.0);
  std::fill(sumsq_.begin(), sumsq_.end(), 0.0);
  const std::size_t n = matrix_.size();
  const int k = spec_.k;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (u == v && spec_.diagonal == DiagonalMode::ignore) continue;
      const std::size_t b = assignment_[u] * k + assignment_[v];
      const double x = matrix_(u, v);
      count_[b] += 1.0;
      sum_[b] += x;
      sumsq_[b] += x * x;
    }
  }
  total_ = 0.0;
  for (std::size_t b = 0; b < count_.size(); ++b)
    total_ += block_score(count_[b], sum_[b], sumsq_[b]);
}

double SquaresCache::block_score(double count, double sum, double sumsq) const {
  const double null_s = sumsq;
  if (!spec_.allow_complete) return null_s;
  const double comp_s = count > 0.0 ? std::max(0.0, sumsq - sum * sum / count) : 0.0;
  if (!spec_.allow_null) return comp_s;
  return std::min(null_s, comp_s);
}

double SquaresCache::relocation_delta(std::size_t u, int to) const {
  const int from = assignment_[u];
  if (from == to) return 0.0;
  const std::size_t n = matrix_.size();
  const int k = spec_.k;
  touched_.clear();

  const auto shift = [&](int bi, int bj, double x, double sign) {
    const std::size_t b = static_cast<std::size_t>(bi) * k + bj;
    if (dcount_[b] == 0.0 && dsum_[b] == 0.0 && dsumsq_[b] == 0.0)
      touched_.push_back(static_cast<int>(b));
    dcount_[b] += sign;
    dsum_[b] += sign * x;
    dsumsq_[b] += sign * x * x;
  };

  for (std::size_t w = 0; w < n; ++w) {
    if (w == u) continue;
    const int cw = assignment_[w];
    const double out = matrix_(u, w);
    shift(from, cw, out, -1.0);
    shift(to, cw, out, +1.0);
    const double in = matrix_(w, u);
    shift(cw, from, in, -1.0);
    shift(cw, to, in, +1.0);
  }
  if (spec_.diagonal == DiagonalMode::include) {
    const double self = matrix_(u, u);
    shift(from, from, self, -1.0);
    shift(to, to, self, +1.0);
  }

  double delta = 0.0;
  for (int b : touched_) {
    delta += block_score(count_[b] + dcount_[b], sum_[b] + dsum_[b],
                         sumsq_[b] + dsumsq_[b]) -
             block_score(count_[b], sum_[b], sumsq_[b]);
    dcount_[b] = dsum_[b] = dsumsq_[b] = 0.0;
  }
  return delta;
}

double SquaresCache::exchange_delta(std::size_t u, std::size_t v) const {
  const int a = assignment_[u];
  const int b = assignment_[v];
  if (a == b) return 0.0;
  const std::size_t n = matrix_.size();
  const int k = spec_.k;
  touched_.clear();

  const auto shift = [&](int bi, int bj, double x, double sign) {
    const std::size_t blk = static_cast<std::size_t>(bi) * k + bj;
    if (dcount_[blk] == 0.0 && dsum_[blk] == 0.0 && dsumsq_[blk] == 0.0)
      touched_.push_back(static_cast<int>(blk));
    dcount_[blk] += sign;
    dsum_[blk] += sign * x;
    dsumsq_[blk] += sign * x * x;
  };

  for (std::size_t w = 0; w < n; ++w) {
    if (w == u || w == v) continue;
    const int cw = assignment_[w];
    shift(a, cw, matrix_(u, w), -1.0);
    shift(b, cw, matrix_(u, w), +1.0);
    shift(b, cw, matrix_(v, w), -1.0);
    shift(a, cw, matrix_(v, w), +1.0);
    shift(cw, a, matrix_(w, u), -1.0);
    shift(cw, b, matrix_(w, u), +1.0);
    shift(cw, b, matrix_(w, v), -1.0);
    shift(cw, a, matrix_(w, v), +1.0);
  }
  // the u-v cells swap blocks
  shift(a, b, matrix_(u, v), -1.0);
  shift(b, a, matrix_(u, v), +1.0);
  shift(b, a, matrix_(v, u), -1.0);
  shift(a, b, matrix_(v, u), +1.0);
  if (spec_.diagonal == DiagonalMode::include) {
    shift(a, a, matrix_(u, u), -1.0);
    shift(b, b, matrix_(u, u), +1.0);
    shift(b, b, matrix_(v, v), -1.0);
    shift(a, a, matrix_(v, v), +1.0);
  }

  double delta = 0.0;
  for (int blk : touched_) {
    delta += block_score(count_[blk] + dcount_[blk], sum_[blk] + dsum_[blk],
                         sumsq_[blk] + dsumsq_[blk]) -
             block_score(count_[blk], sum_[blk], sumsq_[blk]);
    dcount_[blk] = dsum_[blk] = dsumsq_[blk] = 0.0;
  }
  return delta;
}

void SquaresCache::apply_relocation(std::size_t u, int to) {
  assignment_[u] = to;
  rebuild();
}

void SquaresCache::apply_exchange(std::size_t u, std::size_t v) {
  std::swap(assignment_[u], assignment_[v]);
  rebuild();
}

// --- local search ---------------------------------------------------------

namespace {

// Full-evaluation fallback used for the absolute_deviation measure.
class ExactEvaluator {
 public:
  ExactEvaluator(const Matrix& matrix, std::vector<int> assignment,
                 const BlockSpec& spec)
      : matrix_(matrix), assignment_(std::move(assignment)), spec_(spec) {
    total_ = evaluate(assignment_);
  }

  double total() const { return total_; }
  const std::vector<int>& assignment() const { return assignment_; }

  double relocation_delta(std::size_t u, int to) const {
    std::vector<int> tmp = assignment_;
    tmp[u] = to;
    return evaluate(tmp) - total_;
  }
  double exchange_delta(std::size_t u, std::size_t v) const {
    std::vector<int> tmp = assignment_;
    std::swap(tmp[u], tmp[v]);
    return evaluate(tmp) - total_;
  }
  void apply_relocation(std::size_t u, int to) {
    assignment_[u] = to;
    total_ = evaluate(assignment_);
  }
  void apply_exchange(std::size_t u, std::size_t v) {
    std::swap(assignment_[u], assignment_[v]);
    total_ = evaluate(assignment_);
  }

 private:
  double evaluate(const std::vector<int>& assignment) const {
    Partition p{assignment, spec_.k};
    return criterion(matrix_, p, spec_).total;
  }

  const Matrix& matrix_;
  std::vector<int> assignment_;
  BlockSpec spec_;
  double total_ = 0.0;
};

// Best-improvement hill climbing; fixed scan order (relocations by node then
// target cluster, exchanges by node pair) keeps tie-breaking deterministic.
template <class Evaluator>
void hill_climb(Evaluator& eval, int k) {
  const std::size_t n = eval.assignment().size();
  std::vector<std::size_t> sizes(k, 0);
  for (int c : eval.assignment()) ++sizes[c];

  while (true) {
    double best_delta = 0.0;
    bool is_exchange = false;
    std::size_t best_u = 0, best_v = 0;
    int best_to = -1;

    for (std::size_t u = 0; u < n; ++u) {
      const int from = eval.assignment()[u];
      if (sizes[from] <= 1) continue;  // move would empty its cluster
      for (int to = 0; to < k; ++to) {
        if (to == from) continue;
        const double d = eval.relocation_delta(u, to);
        if (d < best_delta) {
          best_delta = d;
          is_exchange = false;
          best_u = u;
          best_to = to;
        }
      }
    }
    for (std::size_t u = 0; u + 1 < n; ++u) {
      for (std::size_t v = u + 1; v < n; ++v) {
        if (eval.assignment()[u] == eval.assignment()[v]) continue;
        const double d = eval.exchange_delta(u, v);
        if (d < best_delta) {
          best_delta = d;
          is_exchange = true;
          best_u = u;
          best_v = v;
        }
      }
    }

    if (best_delta >= -kImprovementEps) break;
    if (is_exchange) {
      eval.apply_exchange(best_u, best_v);
    } else {
      --sizes[eval.assignment()[best_u]];
      ++sizes[best_to];
      eval.apply_relocation(best_u, best_to);
    }
  }
}

std::vector<int> random_valid_assignment(std::size_t n, int k,
                                         std::mt19937_64& rng) {
  std::vector<int> assignment(n);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<char> used(k, 0);
    int distinct = 0;
    for (std::size_t i = 0; i < n; ++i) {
      assignment[i] = static_cast<int>(bounded(rng, k));
      if (!used[assignment[i]]) {
        used[assignment[i]] = 1;
        ++distinct;
      }
    }
    if (distinct == k) return assignment;
  }
  // Constructive fallback: one random node per cluster, rest uniform.
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  for (std::size_t i = n; i > 1; --i)
    std::swap(order[i - 1], order[bounded(rng, i)]);
  for (std::size_t i = 0; i < n; ++i) {
    assignment[order[i]] =
        i < static_cast<std::size_t>(k) ? static_cast<int>(i)
                                        : static_cast<int>(bounded(rng, k));
  }
  return assignment;
}

struct RestartOutcome {
  double total = 0.0;
  int restart_index = -1;
  std::vector<int> canonical;

  bool better_than(const RestartOutcome& other) const {
    if (other.restart_index < 0) return true;
    if (total != other.total) return total < other.total;
    if (restart_index != other.restart_index) return restart_index < other.restart_index;
    return canonical < other.canonical;
  }
};

RestartOutcome run_restart(const Matrix& matrix, const BlockSpec& spec,
                           int restart_index, std::uint64_t seed) {
  std::mt19937_64 rng(seed + static_cast<std::uint64_t>(restart_index));
  std::vector<int> init = random_valid_assignment(matrix.size(), spec.k, rng);

  RestartOutcome out;
  out.restart_index = restart_index;
  if (spec.measure == Measure::sum_of_squares) {
    SquaresCache cache(matrix, std::move(init), spec);
    hill_climb(cache, spec.k);
    out.total = cache.total();
    out.canonical = canonical_assignment(cache.assignment(), spec.k);
  } else {
    ExactEvaluator eval(matrix, std::move(init), spec);
    hill_climb(eval, spec.k);
    out.total = eval.total();
    out.canonical = canonical_assignment(eval.assignment(), spec.k);
  }
  return out;
}

}  // namespace

BlockmodelResult local_search(const Matrix& matrix, const BlockSpec& spec,
                              int restarts, std::uint64_t seed, int threads) {
  validate_spec(spec);
  const std::size_t n = matrix.size();
  if (n < static_cast<std::size_t>(spec.k))
    throw data_error("matrix has fewer nodes (" + std::to_string(n) +
                     ") than clusters (" + std::to_string(spec.k) + ")");
  if (restarts < 1) throw config_error("restarts must be at least 1");

  unsigned worker_count = threads > 0 ? static_cast<unsigned>(threads)
                                      : std::max(1u, std::thread::hardware_concurrency());
  worker_count = std::min<unsigned>(worker_count, static_cast<unsigned>(restarts));

  std::vector<RestartOutcome> per_worker(worker_count);
  const auto work = [&](unsigned t) {
    RestartOutcome best;
    for (int r = static_cast<int>(t); r < restarts; r += static_cast<int>(worker_count)) {
      RestartOutcome candidate = run_restart(matrix, spec, r, seed);
      if (candidate.better_than(best)) best = std::move(candidate);
    }
    per_worker[t] = std::move(best);
  };

  if (worker_count <= 1) {
    work(0);
  } else {
    std::vector<std::thread> workers;
    workers.reserve(worker_count);
    for (unsigned t = 0; t < worker_count; ++t) workers.emplace_back(work, t);
    for (auto& w : workers) w.join();
  }

  RestartOutcome best;
  for (auto& outcome : per_worker) {
    if (outcome.better_than(best)) best = std::move(outcome);
  }

  BlockmodelResult result;
  result.partition = Partition{best.canonical, spec.k};
  const CriterionEval eval = criterion(matrix, result.partition, spec);
  result.criterion = eval.total;
  result.block_types = eval.types;
  result.block_ideals = eval.ideals;
  result.restarts_run = restarts;
  result.best_restart_index = best.restart_index;
  return result;
}

std::uint64_t partition_count(std::size_t n, int k) {
  if (k < 1 || n < static_cast<std::size_t>(k)) return 0;
  const std::uint64_t cap = 2 * kOracleGuard;
  // Stirling numbers of the second kind, saturating at cap.
  std::vector<std::uint64_t> row(k + 1, 0);
  row[0] = 1;
  for (std::size_t i = 1; i <= n; ++i) {
    for (int j = std::min<int>(k, static_cast<int>(i)); j >= 1; --j) {
      const std::uint64_t grow = row[j] > cap / j ? cap : row[j] * j;
      row[j] = std::min(cap, grow + row[j - 1]);
    }
    row[0] = 0;
  }
  return row[k];
}

void for_each_partition(std::size_t n, int k,
                        const std::function<void(const std::vector<int>&)>& fn) {
  if (n == 0 || k < 1 || n < static_cast<std::size_t>(k)) return;
  // Restricted growth strings: a[i] <= 1 + max(a[0..i-1]); exactly k labels.
  std::vector<int> assignment(n, 0);
  std::vector<int> prefix_max(n, 0);

  std::size_t i = 1;
  while (true) {
    if (i == n) {
      if (prefix_max[n - 1] == k - 1) fn(assignment);
      // backtrack to the last position that can still be incremented
      std::size_t j = n - 1;
      while (j >= 1) {
        const int limit = std::min(prefix_max[j - 1] + 1, k - 1);
        if (assignment[j] < limit) break;
        --j;
      }
      if (j == 0) return;
      ++assignment[j];
      prefix_max[j] = std::max(prefix_max[j - 1], assignment[j]);
      i = j + 1;
    } else {
      assignment[i] = 0;
      prefix_max[i] = prefix_max[i - 1];
      ++i;
    }
  }
}

BlockmodelResult brute_force(const Matrix& matrix, const BlockSpec& spec) {
  validate_spec(spec);
  const std::size_t n = matrix.size();
  if (n < static_cast<std::size_t>(spec.k))
    throw data_error("matrix has fewer nodes (" + std::to_string(n) +
                     ") than clusters (" + std::to_string(spec.k) + ")");
  if (partition_count(n, spec.k) > kOracleGuard)
    throw data_error("instance too large for oracle");

  bool found = false;
  double best_total = 0.0;
  std::vector<int> best_assignment;
  for_each_partition(n, spec.k, [&](const std::vector<int>& assignment) {
    Partition p{assignment, spec.k};
    const double total = criterion(matrix, p, spec).total;
    if (!found || total < best_total) {  // first hit wins ties: lex order
      found = true;
      best_total = total;
      best_assignment = assignment;
    }
  });
  if (!found) throw internal_error("no partition enumerated");

  BlockmodelResult result;
  result.partition = Partition{best_assignment, spec.k};
  const CriterionEval eval = criterion(matrix, result.partition, spec);
  result.criterion = eval.total;
  result.block_types = eval.types;
  result.block_ideals = eval.ideals;
  result.restarts_run = 0;
  result.best_restart_index = -1;
  return result;
}

PermutedImage permuted_image(const Matrix& matrix, const BlockmodelResult& result) {
  const std::size_t n = matrix.size();
  result.partition.validate(n);

  PermutedImage image;
  image.node_order.resize(n);
  for (std::size_t i = 0; i < n; ++i) image.node_order[i] = i;
  std::stable_sort(image.node_order.begin(), image.node_order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return result.partition.assignment[a] <
                            result.partition.assignment[b];
                   });

  image.matrix = Matrix(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      image.matrix(i, j) = matrix(image.node_order[i], image.node_order[j]);
    }
  }

  std::vector<std::size_t> sizes(result.partition.k, 0);
  for (int c : result.partition.assignment) ++sizes[c];
  std::size_t acc = 0;
  for (int c = 0; c + 1 < result.partition.k; ++c) {
    acc += sizes[c];
    image.boundaries.push_back(acc);
  }
  return image;
}

}  // namespace gramnet
