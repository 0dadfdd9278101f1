#pragma once

#include <vector>

#include "corrauct/mechanism.hpp"
#include "corrauct/solve2.hpp"

namespace corrauct {

struct BruteForceNResult {
  Mechanism mechanism;
  Rat revenue;
};

/// Exact optimum over all monotone deterministic allocations with threshold
/// payments. Depth-first over grid points in lexicographic order with forced
/// winner propagation and a surplus upper bound for pruning. Guarded to small
/// grids (n <= 4 bidders, at most 32 grid points for n >= 2).
BruteForceNResult brute_force_n(const JointPrior& prior);

struct BestPairResult {
  int bidder_a = 0;
  int bidder_b = 0;
  Mechanism mechanism;  // lifted to all n bidders; rejected bidders never win
  Rat revenue;
  std::vector<std::vector<Rat>> pair_revenue;  // [a][b] for a < b, else 0
};

/// Runs the exact two-bidder auction on every marginal pair and keeps the most
/// profitable one; everyone else is rejected up front, which preserves ex-post
/// truthfulness. The winning pair earns at least 2/n of the optimal revenue:
/// split the optimal auction's profit into the bidders' marginal contributions
/// and observe that each bidder's share appears in n-1 of the pair problems,
/// each of which the pair optimum dominates.
BestPairResult best_pair(const JointPrior& prior);

}  // namespace corrauct
