#pragma once

#include <span>
#include <vector>

#include "corrauct/prior.hpp"

namespace corrauct {

/// Marginal profit contribution of one bidder over the whole grid, same
/// row-major layout as the prior's pmf. Entries are nonnegative and their
/// suffix sums along the bidder's axis equal the running maximum of the
/// suffix revenues on that line (the skyline identity).
struct MarginalProfitGrid {
  int bidder = 0;
  std::vector<int> shape;
  std::vector<Rat> value;

  std::size_t flat_index(std::span<const int> point) const;
  const Rat& at(std::span<const int> point) const { return value[flat_index(point)]; }

  /// Sum of all entries, i.e. the aggregate marginal profit of this bidder.
  Rat total() const;
};

/// Backward recurrence along the bidder's axis, highest level first:
///   mpc(k) = max(v_k * suffix_mass(k) - sum_{k' > k} mpc(k'), 0).
/// Uses actual grid values, so non-uniform levels work unchanged.
MarginalProfitGrid mpc_discrete(const JointPrior& prior, int bidder);

}  // namespace corrauct
