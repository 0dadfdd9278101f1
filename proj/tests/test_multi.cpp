#include <doctest.h>

#include <random>

#include "corrauct/multi.hpp"

using namespace corrauct;

namespace {

JointPrior random_prior(std::mt19937_64& rng, std::vector<int> shape) {
  JointPrior p;
  p.grid.levels.resize(shape.size());
  for (std::size_t b = 0; b < shape.size(); ++b) {
    for (int k = 0; k < shape[b]; ++k) p.grid.levels[b].push_back(k + 1);
  }
  std::size_t cells = 1;
  for (int s : shape) cells *= static_cast<std::size_t>(s);
  std::uniform_int_distribution<int> num(0, 8);
  p.mass.assign(cells, Rat(0));
  Rat total = 0;
  for (auto& m : p.mass) {
    m = Rat(num(rng)) / 16;
    total += m;
  }
  if (total == 0) p.mass[0] = Rat(1, 16);
  return p;
}

}  // namespace

TEST_CASE("single bidder reduces to the best posted price") {
  JointPrior p;
  p.grid.levels = {{1, 2, 3}};
  p.mass = {Rat(1, 2), Rat(1, 4), Rat(1, 4)};
  // posted revenues: 1, 2 * 1/2 = 1, 3 * 1/4 = 3/4 -> best is 1
  BruteForceNResult result = brute_force_n(p);
  CHECK(result.revenue == 1);
  CHECK(!verify_truthful(result.mechanism).has_value());
}

TEST_CASE("point mass: the highest value is extracted") {
  JointPrior p;
  p.grid.levels = {{2}, {5}, {3}};
  p.mass = {Rat(1)};
  BruteForceNResult result = brute_force_n(p);
  CHECK(result.revenue == 5);
}

TEST_CASE("two-bidder brute forces agree") {
  std::mt19937_64 rng(13);
  for (int round = 0; round < 25; ++round) {
    JointPrior p = random_prior(rng, {3, 3});
    CHECK(brute_force_n(p).revenue == brute_force2(p).revenue);
  }
}

TEST_CASE("three-bidder uniform iid golden value") {
  JointPrior p = uniform_prior({{1, 2}, {1, 2}, {1, 2}});
  BruteForceNResult result = brute_force_n(p);
  // pinned after the first exhaustive run; see the acceptance suite as well
  CHECK(result.revenue == Rat(7, 4));
  CHECK(!verify_truthful(result.mechanism).has_value());
  CHECK(expected_revenue(result.mechanism, p) == result.revenue);
}

TEST_CASE("size guard on large multi-bidder grids") {
  JointPrior p = uniform_prior({{1, 2, 3}, {1, 2, 3}, {1, 2, 3}, {1, 2}});
  CHECK_THROWS_AS(brute_force_n(p), SizeGuardError);
}

TEST_CASE("best pair on two bidders is the exact solver") {
  std::mt19937_64 rng(19);
  for (int round = 0; round < 10; ++round) {
    JointPrior p = random_prior(rng, {3, 3});
    BestPairResult result = best_pair(p);
    CHECK(result.bidder_a == 0);
    CHECK(result.bidder_b == 1);
    CHECK(result.revenue == solve_discrete2(p).revenue);
  }
}

TEST_CASE("best pair keeps the bidder holding all the value") {
  JointPrior p;
  p.grid.levels = {{1, 2}, {1, 2}, {10, 20}};
  p.mass.assign(8, Rat(0));
  // bidder 3 is always at its top value; others are iid noise
  p.at(std::vector<int>{0, 0, 1}) = Rat(1, 4);
  p.at(std::vector<int>{0, 1, 1}) = Rat(1, 4);
  p.at(std::vector<int>{1, 0, 1}) = Rat(1, 4);
  p.at(std::vector<int>{1, 1, 1}) = Rat(1, 4);
  BestPairResult result = best_pair(p);
  CHECK(result.bidder_b == 2);
  CHECK(result.revenue >= 20);
}

TEST_CASE("best pair achieves at least two thirds of optimum on small grids") {
  std::mt19937_64 rng(23);
  for (int round = 0; round < 25; ++round) {
    JointPrior p = random_prior(rng, {2, 2, 2});
    BestPairResult pair = best_pair(p);
    BruteForceNResult opt = brute_force_n(p);
    CHECK(3 * pair.revenue >= 2 * opt.revenue);
    CHECK(!verify_truthful(pair.mechanism).has_value());
    CHECK(expected_revenue(pair.mechanism, p) == pair.revenue);
    // the lifted mechanism never allocates to the rejected bidder
    int rejected = 3 - pair.bidder_a - pair.bidder_b;
    for (int w : pair.mechanism.alloc.winner) CHECK(w != rejected + 1);
  }
}
