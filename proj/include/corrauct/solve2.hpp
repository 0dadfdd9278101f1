#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "corrauct/density.hpp"
#include "corrauct/mechanism.hpp"
#include "corrauct/mwis.hpp"

namespace corrauct {

/// Raised when an exhaustive routine would exceed its instance-size guard.
struct SizeGuardError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DiscreteSolveResult {
  AllocationPair pair;
  Mechanism mechanism;
  Rat revenue;  // normalized expected revenue
  ConflictInstance instance;
  IndependentSetSolution mwis;
};

/// Exact optimal two-bidder auction for a discrete prior: marginal profit
/// grids, weak-southeast conflict instance, lexicographic MWIS, monotone
/// closure, threshold payments.
DiscreteSolveResult solve_discrete2(const JointPrior& prior);

struct BruteForce2Result {
  AllocationPair pair;
  Mechanism mechanism;
  Rat revenue;
};

/// Exhaustive oracle over all valid allocation pairs: every alpha function,
/// best feasible beta per column, payment-route revenue only. Guarded to
/// (N1+1)^N2 <= 1e6 enumerations.
BruteForce2Result brute_force2(const JointPrior& prior);

struct ErrorBudget {
  double epsilon_request = 0;
  double epsilon_prime = 0;  // 1/resolution
  int resolution = 0;
  double boundary_term = 0;    // 2 (1+lambda) eps'
  double quadrature_term = 0;  // n^2 per-cell tolerance = eps'
  double overlap_term = 0;     // measured exactly, see overlap_loss
  double proper_term = 0;      // 8 (1+lambda) eps'
  double reported_bound = 0;   // boundary + quadrature + overlap
  double true_revenue_bound = 0;  // + proper fixup
};

struct ContinuousSolveResult {
  int resolution = 0;
  AllocationPair pair;     // boundaries in cell indices on the eps-grid
  Mechanism mechanism;     // over grid values {0, eps, ..., (n-1) eps}
  Rat revenue;             // exact mass revenue of the emitted pair
  /// Strict edges ignore same-row/column dominance, so the selection may put
  /// both bidders on one column; the emitted mechanism hands contested cells
  /// to bidder 1 and starts bidder 2's column above them. This is the weight
  /// that resolution discards (boundary-sized in practice).
  Rat overlap_loss;
  ConflictInstance instance;  // strict edges
  IndependentSetSolution mwis;
  ErrorBudget budget;
};

/// Additively eps-approximate two-bidder auction for a Lipschitz density:
/// cell-mass grids at resolution n = ceil((3 + 2 lambda) / eps), strict-edge
/// MWIS, closure and grid-properness. The reported revenue is the exact value
/// of the emitted mechanism under the discretized masses; the budget records
/// how far it can sit from the true continuous optimum.
ContinuousSolveResult solve_continuous(const DensityOracle& oracle, double epsilon);

/// Grid-index properness for discretized pipelines: boundaries move past
/// zero-weight cells to the largest index preserving the suffix weight.
AllocationPair make_proper_cells(const AllocationPair& pair, const ConflictInstance& inst);

struct TransportWitness {
  std::map<std::pair<int, int>, Rat> scale;  // per edge: y_uv / (w_u w_v)
  /// Edges with exactly one massless endpoint: the product form degenerates,
  /// so the transfer density is uniform over the massless cell instead
  /// (coverage and cost are unchanged). Keyed like `scale`, value y_uv.
  std::map<std::pair<int, int>, Rat> uniform_fill;
  Rat cost;  // scale-route cost plus the uniform-fill amounts
  bool feasible = false;
  std::string detail;
};

/// Piecewise-product witness for the continuous dual: on each cell pair the
/// density transferred is f * g * scale (uniform over a massless endpoint).
/// Checks the grid-aggregated covering constraints and recomputes the cost
/// from the descriptors. Flow between two massless cells is rejected.
TransportWitness transport_witness_continuous(const TransshipmentPlan& plan,
                                              const ConflictInstance& inst);

}  // namespace corrauct
