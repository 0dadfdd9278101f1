#include "corrauct/prior.hpp"

#include <stdexcept>

namespace corrauct {

std::vector<int> ValueGrid::shape() const {
  std::vector<int> s(levels.size());
  for (std::size_t b = 0; b < levels.size(); ++b) s[b] = static_cast<int>(levels[b].size());
  return s;
}

void ValueGrid::validate() const {
  if (levels.empty()) throw std::invalid_argument("grid has no bidders");
  for (const auto& axis : levels) {
    if (axis.empty()) throw std::invalid_argument("grid axis has no levels");
    if (axis.front() < 0) throw std::invalid_argument("negative valuation level");
    for (std::size_t k = 1; k < axis.size(); ++k) {
      if (axis[k] <= axis[k - 1]) {
        throw std::invalid_argument("valuation levels must be strictly increasing");
      }
    }
  }
}

std::size_t JointPrior::flat_index(std::span<const int> point) const {
  if (point.size() != static_cast<std::size_t>(bidders())) {
    throw std::out_of_range("point dimension mismatch");
  }
  std::size_t idx = 0;
  for (int b = 0; b < bidders(); ++b) {
    int n = grid.size(b);
    if (point[b] < 0 || point[b] >= n) throw std::out_of_range("grid index out of range");
    idx = idx * static_cast<std::size_t>(n) + static_cast<std::size_t>(point[b]);
  }
  return idx;
}

Rat JointPrior::total_mass() const {
  Rat total = 0;
  for (const Rat& m : mass) total += m;
  return total;
}

void JointPrior::validate() const {
  grid.validate();
  std::size_t expect = 1;
  for (int b = 0; b < bidders(); ++b) expect *= static_cast<std::size_t>(grid.size(b));
  if (mass.size() != expect) throw std::invalid_argument("pmf size does not match grid");
  for (const Rat& m : mass) {
    if (m < 0) throw std::invalid_argument("negative probability mass");
  }
  if (total_mass() <= 0) throw std::invalid_argument("total mass must be positive");
}

bool next_point(std::span<int> point, std::span<const int> shape) {
  for (int b = static_cast<int>(point.size()) - 1; b >= 0; --b) {
    if (++point[b] < shape[b]) return true;
    point[b] = 0;
  }
  return false;
}

Rat suffix_revenue(const JointPrior& prior, int bidder, std::span<const int> point) {
  std::vector<int> p(point.begin(), point.end());
  if (bidder < 0 || bidder >= prior.bidders()) throw std::out_of_range("bidder out of range");
  const int start = p[bidder];
  const int n = prior.grid.size(bidder);
  if (start < 0 || start >= n) throw std::out_of_range("grid index out of range");
  Rat suffix = 0;
  for (int k = start; k < n; ++k) {
    p[bidder] = k;
    suffix += prior.at(p);
  }
  return prior.grid.value(bidder, start) * suffix;
}

JointPrior marginalize(const JointPrior& prior, int a, int b) {
  if (prior.bidders() < 2) throw std::invalid_argument("marginalize needs >= 2 bidders");
  if (a == b) throw std::invalid_argument("marginalize needs distinct bidders");
  if (a < 0 || b < 0 || a >= prior.bidders() || b >= prior.bidders()) {
    throw std::out_of_range("bidder out of range");
  }
  JointPrior out;
  out.grid.levels = {prior.grid.levels[a], prior.grid.levels[b]};
  out.mass.assign(static_cast<std::size_t>(prior.grid.size(a)) * prior.grid.size(b), Rat(0));

  std::vector<int> shape = prior.shape();
  std::vector<int> point(shape.size(), 0);
  do {
    std::size_t idx = static_cast<std::size_t>(point[a]) * prior.grid.size(b) + point[b];
    out.mass[idx] += prior.at(point);
  } while (next_point(point, shape));
  return out;
}

JointPrior uniform_prior(std::vector<std::vector<Rat>> levels) {
  JointPrior prior;
  prior.grid.levels = std::move(levels);
  std::size_t cells = 1;
  for (int b = 0; b < prior.bidders(); ++b) cells *= static_cast<std::size_t>(prior.grid.size(b));
  prior.mass.assign(cells, Rat(1) / Rat(static_cast<unsigned long>(cells)));
  prior.validate();
  return prior;
}

}  // namespace corrauct
