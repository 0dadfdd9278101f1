#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "corrauct/prior.hpp"

namespace corrauct {

struct GridPoint {
  int i = 0;
  int j = 0;
};

/// Two-bidder allocation boundaries. alpha[j] is the minimal bidder-1 index
/// that wins when bidder 2 sits at level j (nx means "never"); beta is the
/// symmetric bidder-2 boundary (ny means "never"). Bidder 1 wins at (i,j) iff
/// i >= alpha[j], bidder 2 iff j >= beta[i]; non-crossing keeps those regions
/// from overlapping.
struct AllocationPair {
  std::vector<int> alpha;
  std::vector<int> beta;

  int nx() const { return static_cast<int>(beta.size()); }
  int ny() const { return static_cast<int>(alpha.size()); }
  bool bidder1_wins(int i, int j) const { return i >= alpha[j]; }
  bool bidder2_wins(int i, int j) const { return j >= beta[i]; }
};

/// strict (point-mass grids): j >= beta[i] implies i < alpha[j].
/// non-strict (continuous boundary curves): j >= beta[i] implies i <= alpha[j].
bool non_crossing(const AllocationPair& pair, bool strict = true);

/// n-dimensional winner map; entry 0 means the auctioneer keeps the item,
/// entries 1..n name the winning bidder.
struct AllocationMatrix {
  std::vector<int> shape;
  std::vector<int> winner;

  int bidders() const { return static_cast<int>(shape.size()); }
  std::size_t flat_index(std::span<const int> point) const;
  int at(std::span<const int> point) const { return winner[flat_index(point)]; }

  /// Monotone: raising the winner's own coordinate keeps them winning.
  /// Returns the first violating pair of points (lexicographic) if any.
  bool is_monotone(std::vector<int>* bad_low = nullptr, std::vector<int>* bad_high = nullptr) const;
};

AllocationMatrix pair_to_matrix(const AllocationPair& pair);

/// Reads the boundaries off a monotone 2-bidder matrix. Throws if the matrix
/// is not monotone.
AllocationPair matrix_to_pair(const AllocationMatrix& alloc);

/// Closes A rightward and B upward: alpha[j] = min{i : (i,j) in A}, beta
/// symmetric. Throws std::invalid_argument when the input sets contain a
/// weak-southeast pair across sets (the closure could not be non-crossing).
AllocationPair monotone_closure(std::span<const GridPoint> a_points,
                                std::span<const GridPoint> b_points, int nx, int ny);

}  // namespace corrauct
