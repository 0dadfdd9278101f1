#include "corrauct/mpc.hpp"

#include <stdexcept>

namespace corrauct {

std::size_t MarginalProfitGrid::flat_index(std::span<const int> point) const {
  std::size_t idx = 0;
  for (std::size_t b = 0; b < shape.size(); ++b) {
    if (point[b] < 0 || point[b] >= shape[b]) throw std::out_of_range("mpc index out of range");
    idx = idx * static_cast<std::size_t>(shape[b]) + static_cast<std::size_t>(point[b]);
  }
  return idx;
}

Rat MarginalProfitGrid::total() const {
  Rat t = 0;
  for (const Rat& v : value) t += v;
  return t;
}

MarginalProfitGrid mpc_discrete(const JointPrior& prior, int bidder) {
  prior.validate();
  if (bidder < 0 || bidder >= prior.bidders()) throw std::out_of_range("bidder out of range");

  MarginalProfitGrid out;
  out.bidder = bidder;
  out.shape = prior.shape();
  out.value.assign(prior.cell_count(), Rat(0));

  const int n = out.shape[bidder];
  // Iterate over lines along the bidder's axis: fix all other coordinates.
  std::vector<int> line_shape = out.shape;
  line_shape[bidder] = 1;
  std::vector<int> point(out.shape.size(), 0);
  do {
    Rat suffix_mass = 0;
    Rat mpc_above = 0;
    for (int k = n - 1; k >= 0; --k) {
      point[bidder] = k;
      suffix_mass += prior.at(point);
      Rat raw = prior.grid.value(bidder, k) * suffix_mass - mpc_above;
      Rat entry = raw > 0 ? raw : Rat(0);
      out.value[out.flat_index(point)] = entry;
      mpc_above += entry;
    }
    point[bidder] = 0;
  } while (next_point(point, line_shape));
  return out;
}

}  // namespace corrauct
