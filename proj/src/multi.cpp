#include "corrauct/multi.hpp"

#include <algorithm>
#include <numeric>

namespace corrauct {

namespace {

struct BruteSearch {
  const JointPrior& prior;
  std::vector<int> shape;
  int n;
  std::size_t cells;
  std::vector<std::size_t> stride;
  std::vector<std::vector<int>> points;        // lexicographic multi-indices
  std::vector<std::vector<Rat>> cap;           // [bidder][point] = mass * value
  std::vector<Rat> max_cap;                    // per point
  std::vector<Rat> surplus_suffix;             // sum of max_cap from point k on
  std::vector<int> winner;
  std::vector<int> best_winner;
  Rat best = -1;

  explicit BruteSearch(const JointPrior& p) : prior(p) {
    shape = p.shape();
    n = p.bidders();
    cells = p.cell_count();
    stride.assign(n, 1);
    for (int a = n - 2; a >= 0; --a) stride[a] = stride[a + 1] * shape[a + 1];

    points.reserve(cells);
    std::vector<int> point(n, 0);
    do {
      points.push_back(point);
    } while (next_point(point, shape));

    cap.assign(n, std::vector<Rat>(cells, Rat(0)));
    max_cap.assign(cells, Rat(0));
    for (std::size_t k = 0; k < cells; ++k) {
      const Rat& mass = prior.mass[k];
      for (int b = 0; b < n; ++b) {
        cap[b][k] = mass * prior.grid.value(b, points[k][b]);
        if (cap[b][k] > max_cap[k]) max_cap[k] = cap[b][k];
      }
    }
    surplus_suffix.assign(cells + 1, Rat(0));
    for (std::size_t k = cells; k-- > 0;) surplus_suffix[k] = surplus_suffix[k + 1] + max_cap[k];
    winner.assign(cells, 0);
  }

  Rat leaf_value() const {
    Rat total = 0;
    for (int b = 0; b < n; ++b) {
      std::vector<int> line_shape = shape;
      line_shape[b] = 1;
      std::vector<int> point(n, 0);
      do {
        int t = -1;
        Rat suffix_mass = 0;
        for (int k = 0; k < shape[b]; ++k) {
          point[b] = k;
          std::size_t idx = prior.flat_index(point);
          if (winner[idx] == b + 1) {
            if (t < 0) t = k;
            suffix_mass += prior.mass[idx];
          }
        }
        if (t >= 0) total += prior.grid.value(b, t) * suffix_mass;
        point[b] = 0;
      } while (next_point(point, line_shape));
    }
    return total;
  }

  void run(std::size_t k, const Rat& assigned_cap) {
    if (k == cells) {
      Rat value = leaf_value();
      if (value > best) {
        best = value;
        best_winner = winner;
      }
      return;
    }
    if (assigned_cap + surplus_suffix[k] <= best) return;

    const std::vector<int>& point = points[k];
    int forced = 0;
    for (int a = 0; a < n; ++a) {
      if (point[a] == 0) continue;
      int prev = winner[k - stride[a]];
      if (prev == a + 1) {
        if (forced != 0 && forced != prev) return;  // two bidders both demand p
        forced = prev;
      }
    }

    std::vector<int> choices;
    if (forced != 0) {
      choices.push_back(forced);
    } else {
      choices.resize(n);
      std::iota(choices.begin(), choices.end(), 1);
      std::stable_sort(choices.begin(), choices.end(),
                       [&](int x, int y) { return cap[x - 1][k] > cap[y - 1][k]; });
      choices.push_back(0);
    }
    for (int choice : choices) {
      winner[k] = choice;
      run(k + 1, choice > 0 ? Rat(assigned_cap + cap[choice - 1][k]) : assigned_cap);
    }
    winner[k] = 0;
  }
};

}  // namespace

BruteForceNResult brute_force_n(const JointPrior& prior) {
  prior.validate();
  const int n = prior.bidders();
  if (n > 4 || (n >= 2 && prior.cell_count() > 32)) {
    throw SizeGuardError("brute_force_n guard: " + std::to_string(prior.cell_count()) +
                         " grid points over " + std::to_string(n) + " bidders");
  }

  BruteForceNResult result;
  if (n == 1) {
    // Posted price: best level by suffix revenue, "never" if nothing earns.
    const int levels = prior.grid.size(0);
    Rat best = 0;
    int arg = levels;
    for (int k = 0; k < levels; ++k) {
      Rat rev = suffix_revenue(prior, 0, std::vector<int>{k});
      if (rev > best) {
        best = rev;
        arg = k;
      }
    }
    AllocationMatrix alloc;
    alloc.shape = {levels};
    alloc.winner.assign(levels, 0);
    for (int k = arg; k < levels; ++k) alloc.winner[k] = 1;
    result.mechanism = thresholds_and_payments(alloc, prior.grid);
    result.revenue = best / prior.total_mass();
    return result;
  }

  BruteSearch search(prior);
  search.run(0, Rat(0));
  AllocationMatrix alloc;
  alloc.shape = search.shape;
  alloc.winner = search.best_winner;
  result.mechanism = thresholds_and_payments(alloc, prior.grid);
  result.revenue = search.best / prior.total_mass();
  return result;
}

BestPairResult best_pair(const JointPrior& prior) {
  prior.validate();
  const int n = prior.bidders();
  if (n < 2) throw std::invalid_argument("best_pair needs at least two bidders");

  BestPairResult result;
  result.pair_revenue.assign(n, std::vector<Rat>(n, Rat(0)));
  Rat best = -1;
  DiscreteSolveResult best_solved;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      JointPrior marg = marginalize(prior, a, b);
      DiscreteSolveResult solved = solve_discrete2(marg);
      result.pair_revenue[a][b] = solved.revenue;
      if (solved.revenue > best) {
        best = solved.revenue;
        best_solved = std::move(solved);
        result.bidder_a = a;
        result.bidder_b = b;
      }
    }
  }

  // Lift the winning two-bidder allocation: everyone else is rejected before
  // bidding, so their values never matter and the pair thresholds carry over.
  AllocationMatrix alloc;
  alloc.shape = prior.shape();
  alloc.winner.assign(prior.cell_count(), 0);
  std::vector<int> point(n, 0);
  do {
    int w = best_solved.mechanism.alloc.at(std::vector<int>{point[result.bidder_a],
                                                            point[result.bidder_b]});
    if (w == 1) {
      alloc.winner[prior.flat_index(point)] = result.bidder_a + 1;
    } else if (w == 2) {
      alloc.winner[prior.flat_index(point)] = result.bidder_b + 1;
    }
  } while (next_point(point, alloc.shape));

  result.mechanism = thresholds_and_payments(alloc, prior.grid);
  result.revenue = best;
  return result;
}

}  // namespace corrauct
