#pragma once

#include <optional>
#include <string>
#include <vector>

#include "corrauct/allocation.hpp"
#include "corrauct/mpc.hpp"
#include "corrauct/prior.hpp"

namespace corrauct {

/// Deterministic mechanism: winner map plus the threshold table and explicit
/// payments. A winner pays the minimum own value at which they still win given
/// the others' values; losers pay nothing. Payments are stored (not derived)
/// so tampered mechanisms can be round-tripped into the verifier.
struct Mechanism {
  ValueGrid grid;
  AllocationMatrix alloc;
  /// threshold_index[b] is flattened over the grid with axis b removed;
  /// value size(b) means the bidder never wins that column.
  std::vector<std::vector<int>> threshold_index;
  /// payments[b] over the full grid, zero whenever b is not the winner.
  std::vector<std::vector<Rat>> payments;

  std::size_t reduced_index(int bidder, std::span<const int> point) const;
  std::optional<Rat> threshold_value(int bidder, std::span<const int> point) const;
};

/// Thrown when an allocation fails monotonicity; carries the violating pair.
struct MonotonicityError : std::invalid_argument {
  MonotonicityError(std::vector<int> low_, std::vector<int> high_);
  std::vector<int> low, high;
};

Mechanism thresholds_and_payments(const AllocationMatrix& alloc, const ValueGrid& grid);

struct TruthfulnessViolation {
  enum class Kind { IC, IR, NPT };
  Kind kind;
  int bidder = 0;
  std::vector<int> point;  // full profile where the constraint fails
  int deviation = -1;      // deviating own index for IC, -1 otherwise
  std::string describe() const;
};

/// Brute-force scan of every bidder, profile, and on-grid deviation. Returns
/// the lexicographically first violated constraint, or nothing when the
/// mechanism is ex-post IC, IR, and NPT.
std::optional<TruthfulnessViolation> verify_truthful(const Mechanism& mech);

/// Payment-route expected revenue: sum of phi(v) * payments(v) / total mass.
Rat expected_revenue(const Mechanism& mech, const JointPrior& prior);

/// Marginal-profit-route revenue of an allocation pair: the f-sum over bidder
/// 1's region plus the g-sum over bidder 2's, normalized by total mass. Agrees
/// with expected_revenue exactly on proper pairs.
Rat revenue_via_mpc(const AllocationPair& pair, const MarginalProfitGrid& f,
                    const MarginalProfitGrid& g, const Rat& total_mass);

/// A pair is proper when every boundary threshold attains the running maximum
/// of suffix revenues on its line (so the two revenue routes coincide).
bool pair_is_proper(const AllocationPair& pair, const JointPrior& prior);

/// Pushes each boundary to the largest grid index attaining the suffix-revenue
/// maximum (rows whose whole suffix earns nothing become "never"). Never
/// decreases revenue and never breaks non-crossing.
AllocationPair make_proper(const AllocationPair& pair, const JointPrior& prior);

}  // namespace corrauct
