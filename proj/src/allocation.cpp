#include "corrauct/allocation.hpp"

#include <algorithm>

namespace corrauct {

bool non_crossing(const AllocationPair& pair, bool strict) {
  for (int i = 0; i < pair.nx(); ++i) {
    for (int j = 0; j < pair.ny(); ++j) {
      if (j >= pair.beta[i]) {
        if (strict ? !(i < pair.alpha[j]) : !(i <= pair.alpha[j])) return false;
      }
    }
  }
  return true;
}

std::size_t AllocationMatrix::flat_index(std::span<const int> point) const {
  std::size_t idx = 0;
  for (std::size_t b = 0; b < shape.size(); ++b) {
    if (point[b] < 0 || point[b] >= shape[b]) throw std::out_of_range("point out of range");
    idx = idx * static_cast<std::size_t>(shape[b]) + static_cast<std::size_t>(point[b]);
  }
  return idx;
}

bool AllocationMatrix::is_monotone(std::vector<int>* bad_low, std::vector<int>* bad_high) const {
  std::vector<int> point(shape.size(), 0);
  do {
    int win = at(point);
    if (win > 0) {
      int axis = win - 1;
      if (point[axis] + 1 < shape[axis]) {
        std::vector<int> up = point;
        ++up[axis];
        if (at(up) != win) {
          if (bad_low) *bad_low = point;
          if (bad_high) *bad_high = up;
          return false;
        }
      }
    }
  } while (next_point(point, shape));
  return true;
}

AllocationMatrix pair_to_matrix(const AllocationPair& pair) {
  AllocationMatrix alloc;
  alloc.shape = {pair.nx(), pair.ny()};
  alloc.winner.assign(static_cast<std::size_t>(pair.nx()) * pair.ny(), 0);
  for (int i = 0; i < pair.nx(); ++i) {
    for (int j = 0; j < pair.ny(); ++j) {
      int& cell = alloc.winner[static_cast<std::size_t>(i) * pair.ny() + j];
      if (pair.bidder1_wins(i, j)) {
        cell = 1;
      } else if (pair.bidder2_wins(i, j)) {
        cell = 2;
      }
    }
  }
  return alloc;
}

AllocationPair matrix_to_pair(const AllocationMatrix& alloc) {
  if (alloc.bidders() != 2) throw std::invalid_argument("pair view needs two bidders");
  std::vector<int> low, high;
  if (!alloc.is_monotone(&low, &high)) throw std::invalid_argument("allocation is not monotone");
  const int nx = alloc.shape[0], ny = alloc.shape[1];
  AllocationPair pair;
  pair.alpha.assign(ny, nx);
  pair.beta.assign(nx, ny);
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < ny; ++j) {
      int win = alloc.winner[static_cast<std::size_t>(i) * ny + j];
      if (win == 1) pair.alpha[j] = std::min(pair.alpha[j], i);
      if (win == 2) pair.beta[i] = std::min(pair.beta[i], j);
    }
  }
  return pair;
}

AllocationPair monotone_closure(std::span<const GridPoint> a_points,
                                std::span<const GridPoint> b_points, int nx, int ny) {
  AllocationPair pair;
  pair.alpha.assign(ny, nx);
  pair.beta.assign(nx, ny);
  for (const GridPoint& p : a_points) {
    if (p.i < 0 || p.i >= nx || p.j < 0 || p.j >= ny) throw std::out_of_range("A point off grid");
    pair.alpha[p.j] = std::min(pair.alpha[p.j], p.i);
  }
  for (const GridPoint& p : b_points) {
    if (p.i < 0 || p.i >= nx || p.j < 0 || p.j >= ny) throw std::out_of_range("B point off grid");
    pair.beta[p.i] = std::min(pair.beta[p.i], p.j);
  }
  if (!non_crossing(pair, /*strict=*/true)) {
    throw std::invalid_argument("input point sets conflict (weak-southeast pair)");
  }
  return pair;
}

}  // namespace corrauct
