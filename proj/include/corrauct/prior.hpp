#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "corrauct/rational.hpp"

namespace corrauct {

/// Per-bidder valuation levels, strictly increasing and nonnegative.
struct ValueGrid {
  std::vector<std::vector<Rat>> levels;

  int bidders() const { return static_cast<int>(levels.size()); }
  int size(int bidder) const { return static_cast<int>(levels[bidder].size()); }
  const Rat& value(int bidder, int index) const { return levels[bidder][index]; }
  std::vector<int> shape() const;

  /// Throws std::invalid_argument on empty axes, negative or non-increasing levels.
  void validate() const;
};

/// Dense joint probability mass over a ValueGrid, row-major, exact rationals.
/// Masses need not sum to one; operations that report probabilities or expected
/// revenue divide by total_mass().
struct JointPrior {
  ValueGrid grid;
  std::vector<Rat> mass;

  int bidders() const { return grid.bidders(); }
  std::vector<int> shape() const { return grid.shape(); }
  std::size_t cell_count() const { return mass.size(); }

  std::size_t flat_index(std::span<const int> point) const;
  const Rat& at(std::span<const int> point) const { return mass[flat_index(point)]; }
  Rat& at(std::span<const int> point) { return mass[flat_index(point)]; }

  Rat total_mass() const;
  void validate() const;
};

/// Advances a row-major multi-index; returns false after the last one.
bool next_point(std::span<int> point, std::span<const int> shape);

/// v_k * (suffix mass along `bidder` starting at point[bidder]), other
/// coordinates fixed. The grid-value analogue of posting price v_k on a line.
Rat suffix_revenue(const JointPrior& prior, int bidder, std::span<const int> point);

/// Sums out every bidder except {a, b}; preserves total mass.
JointPrior marginalize(const JointPrior& prior, int a, int b);

/// Uniform iid prior over the given per-bidder levels, each cell carrying
/// 1 / cell_count. Test and CLI convenience.
JointPrior uniform_prior(std::vector<std::vector<Rat>> levels);

}  // namespace corrauct
