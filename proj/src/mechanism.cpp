#include "corrauct/mechanism.hpp"

#include <algorithm>
#include <sstream>

namespace corrauct {

namespace {

std::string point_str(std::span<const int> point) {
  std::ostringstream out;
  out << "(";
  for (std::size_t k = 0; k < point.size(); ++k) out << (k ? "," : "") << point[k];
  out << ")";
  return out.str();
}

}  // namespace

MonotonicityError::MonotonicityError(std::vector<int> low_, std::vector<int> high_)
    : std::invalid_argument("allocation not monotone between " + point_str(low_) + " and " +
                            point_str(high_)),
      low(std::move(low_)),
      high(std::move(high_)) {}

std::size_t Mechanism::reduced_index(int bidder, std::span<const int> point) const {
  std::size_t idx = 0;
  for (int b = 0; b < grid.bidders(); ++b) {
    if (b == bidder) continue;
    idx = idx * static_cast<std::size_t>(grid.size(b)) + static_cast<std::size_t>(point[b]);
  }
  return idx;
}

std::optional<Rat> Mechanism::threshold_value(int bidder, std::span<const int> point) const {
  int t = threshold_index[bidder][reduced_index(bidder, point)];
  if (t >= grid.size(bidder)) return std::nullopt;
  return grid.value(bidder, t);
}

Mechanism thresholds_and_payments(const AllocationMatrix& alloc, const ValueGrid& grid) {
  grid.validate();
  if (alloc.shape != grid.shape()) throw std::invalid_argument("allocation/grid shape mismatch");
  std::vector<int> low, high;
  if (!alloc.is_monotone(&low, &high)) throw MonotonicityError(low, high);

  Mechanism mech;
  mech.grid = grid;
  mech.alloc = alloc;

  const int n = grid.bidders();
  std::size_t cells = alloc.winner.size();
  mech.threshold_index.resize(n);
  mech.payments.assign(n, std::vector<Rat>(cells, Rat(0)));

  for (int b = 0; b < n; ++b) {
    std::size_t reduced_cells = cells / static_cast<std::size_t>(grid.size(b));
    mech.threshold_index[b].assign(reduced_cells, grid.size(b));
  }

  std::vector<int> point(n, 0);
  do {
    int win = alloc.at(point);
    if (win > 0) {
      int b = win - 1;
      std::size_t r = mech.reduced_index(b, point);
      mech.threshold_index[b][r] = std::min(mech.threshold_index[b][r], point[b]);
    }
  } while (next_point(point, alloc.shape));

  std::fill(point.begin(), point.end(), 0);
  do {
    int win = alloc.at(point);
    if (win > 0) {
      int b = win - 1;
      std::size_t r = mech.reduced_index(b, point);
      mech.payments[b][alloc.flat_index(point)] = grid.value(b, mech.threshold_index[b][r]);
    }
  } while (next_point(point, alloc.shape));
  return mech;
}

std::string TruthfulnessViolation::describe() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::IC: out << "IC"; break;
    case Kind::IR: out << "IR"; break;
    case Kind::NPT: out << "NPT"; break;
  }
  out << " violated for bidder " << bidder + 1 << " at " << point_str(point);
  if (deviation >= 0) out << " deviating to index " << deviation;
  return out.str();
}

std::optional<TruthfulnessViolation> verify_truthful(const Mechanism& mech) {
  const int n = mech.grid.bidders();
  const auto shape = mech.grid.shape();
  for (int b = 0; b < n; ++b) {
    std::vector<int> point(n, 0);
    do {
      std::size_t idx = mech.alloc.flat_index(point);
      bool wins = mech.alloc.winner[idx] == b + 1;
      const Rat& pay = mech.payments[b][idx];
      if (pay < 0) {
        return TruthfulnessViolation{TruthfulnessViolation::Kind::NPT, b, point, -1};
      }
      Rat utility = (wins ? mech.grid.value(b, point[b]) : Rat(0)) - pay;
      if (utility < 0) {
        return TruthfulnessViolation{TruthfulnessViolation::Kind::IR, b, point, -1};
      }
      std::vector<int> reported = point;
      for (int dev = 0; dev < shape[b]; ++dev) {
        if (dev == point[b]) continue;
        reported[b] = dev;
        std::size_t ridx = mech.alloc.flat_index(reported);
        bool rwins = mech.alloc.winner[ridx] == b + 1;
        Rat dev_utility = (rwins ? mech.grid.value(b, point[b]) : Rat(0)) - mech.payments[b][ridx];
        if (dev_utility > utility) {
          return TruthfulnessViolation{TruthfulnessViolation::Kind::IC, b, point, dev};
        }
      }
    } while (next_point(point, shape));
  }
  return std::nullopt;
}

Rat expected_revenue(const Mechanism& mech, const JointPrior& prior) {
  prior.validate();
  if (prior.shape() != mech.alloc.shape) throw std::invalid_argument("mechanism/prior shape mismatch");
  Rat total = 0;
  std::vector<int> point(prior.bidders(), 0);
  const auto shape = prior.shape();
  do {
    const Rat& mass = prior.at(point);
    if (mass == 0) continue;
    std::size_t idx = mech.alloc.flat_index(point);
    Rat paid = 0;
    for (int b = 0; b < prior.bidders(); ++b) paid += mech.payments[b][idx];
    total += mass * paid;
  } while (next_point(point, shape));
  return total / prior.total_mass();
}

Rat revenue_via_mpc(const AllocationPair& pair, const MarginalProfitGrid& f,
                    const MarginalProfitGrid& g, const Rat& total_mass) {
  if (f.shape.size() != 2 || f.shape != g.shape) throw std::invalid_argument("mpc shape mismatch");
  const int nx = f.shape[0], ny = f.shape[1];
  if (pair.nx() != nx || pair.ny() != ny) throw std::invalid_argument("pair/mpc shape mismatch");
  Rat sum = 0;
  for (int j = 0; j < ny; ++j) {
    for (int i = pair.alpha[j]; i < nx; ++i) sum += f.value[static_cast<std::size_t>(i) * ny + j];
  }
  for (int i = 0; i < nx; ++i) {
    for (int j = pair.beta[i]; j < ny; ++j) sum += g.value[static_cast<std::size_t>(i) * ny + j];
  }
  return sum / total_mass;
}

namespace {

// Largest index >= from attaining the maximum suffix revenue on the line, or
// `size` (never) when the whole suffix earns nothing.
int proper_boundary(const JointPrior& prior, int bidder, std::vector<int> point, int from) {
  const int n = prior.grid.size(bidder);
  Rat best = 0;
  int arg = n;
  for (int k = from; k < n; ++k) {
    point[bidder] = k;
    Rat rev = suffix_revenue(prior, bidder, point);
    if (rev > best || (rev == best && rev > 0)) {
      best = rev;
      arg = k;
    }
  }
  return arg;
}

}  // namespace

bool pair_is_proper(const AllocationPair& pair, const JointPrior& prior) {
  if (prior.bidders() != 2) throw std::invalid_argument("pair view needs two bidders");
  const int nx = prior.grid.size(0), ny = prior.grid.size(1);
  if (pair.nx() != nx || pair.ny() != ny) throw std::invalid_argument("pair/prior shape mismatch");
  for (int j = 0; j < ny; ++j) {
    if (pair.alpha[j] >= nx) continue;
    Rat at_boundary = suffix_revenue(prior, 0, std::vector<int>{pair.alpha[j], j});
    Rat best = 0;
    for (int i = pair.alpha[j]; i < nx; ++i) {
      Rat rev = suffix_revenue(prior, 0, std::vector<int>{i, j});
      if (rev > best) best = rev;
    }
    if (at_boundary != best) return false;
  }
  for (int i = 0; i < nx; ++i) {
    if (pair.beta[i] >= ny) continue;
    Rat at_boundary = suffix_revenue(prior, 1, std::vector<int>{i, pair.beta[i]});
    Rat best = 0;
    for (int j = pair.beta[i]; j < ny; ++j) {
      Rat rev = suffix_revenue(prior, 1, std::vector<int>{i, j});
      if (rev > best) best = rev;
    }
    if (at_boundary != best) return false;
  }
  return true;
}

AllocationPair make_proper(const AllocationPair& pair, const JointPrior& prior) {
  if (prior.bidders() != 2) throw std::invalid_argument("pair view needs two bidders");
  const int nx = prior.grid.size(0), ny = prior.grid.size(1);
  if (pair.nx() != nx || pair.ny() != ny) throw std::invalid_argument("pair/prior shape mismatch");
  AllocationPair out = pair;
  for (int j = 0; j < ny; ++j) {
    if (out.alpha[j] >= nx) continue;
    out.alpha[j] = proper_boundary(prior, 0, {0, j}, out.alpha[j]);
  }
  for (int i = 0; i < nx; ++i) {
    if (out.beta[i] >= ny) continue;
    out.beta[i] = proper_boundary(prior, 1, {i, 0}, out.beta[i]);
  }
  return out;
}

}  // namespace corrauct
