#include <doctest.h>

#include <random>

#include "corrauct/solve2.hpp"

using namespace corrauct;

namespace {

JointPrior random_prior(std::mt19937_64& rng, std::vector<int> shape, bool random_values = false) {
  JointPrior p;
  p.grid.levels.resize(shape.size());
  for (std::size_t b = 0; b < shape.size(); ++b) {
    if (random_values) {
      int level = 0;
      for (int k = 0; k < shape[b]; ++k) {
        level += 1 + static_cast<int>(rng() % 4);
        p.grid.levels[b].push_back(Rat(level, 2));
      }
    } else {
      for (int k = 0; k < shape[b]; ++k) p.grid.levels[b].push_back(k + 1);
    }
  }
  std::size_t cells = 1;
  for (int s : shape) cells *= static_cast<std::size_t>(s);
  std::uniform_int_distribution<int> num(0, 10);
  p.mass.assign(cells, Rat(0));
  Rat total = 0;
  for (auto& m : p.mass) {
    m = Rat(num(rng)) / 32;
    total += m;
  }
  if (total == 0) p.mass[0] = Rat(1, 32);
  return p;
}

}  // namespace

TEST_CASE("solver and oracle agree on the pinned two-bidder instances") {
  JointPrior uniform = uniform_prior({{1, 2}, {1, 2}});
  DiscreteSolveResult solved = solve_discrete2(uniform);
  BruteForce2Result brute = brute_force2(uniform);
  CHECK(solved.revenue == Rat(3, 2));
  CHECK(brute.revenue == Rat(3, 2));
  CHECK(!verify_truthful(solved.mechanism).has_value());
  CHECK(expected_revenue(solved.mechanism, uniform) == solved.revenue);

  JointPrior corr;
  corr.grid.levels = {{1, 2}, {1, 2}};
  corr.mass = {Rat(1, 2), Rat(0), Rat(0), Rat(1, 2)};
  CHECK(solve_discrete2(corr).revenue == Rat(3, 2));  // full surplus
  CHECK(brute_force2(corr).revenue == Rat(3, 2));
}

TEST_CASE("single-point support posts the higher value") {
  JointPrior p;
  p.grid.levels = {{Rat(2, 3)}, {Rat(7, 2)}};
  p.mass = {Rat(1)};
  DiscreteSolveResult solved = solve_discrete2(p);
  CHECK(solved.revenue == Rat(7, 2));
  CHECK(brute_force2(p).revenue == Rat(7, 2));
}

TEST_CASE("brute force size guard") {
  JointPrior p = uniform_prior({{1, 2, 3, 4, 5, 6, 7, 8, 9},
                                {1, 2, 3, 4, 5, 6, 7, 8, 9}});
  CHECK_THROWS_AS(brute_force2(p), SizeGuardError);
}

TEST_CASE("paired random runs: solver equals oracle exactly") {
  std::mt19937_64 rng(3);
  for (int round = 0; round < 120; ++round) {
    int nx = 2 + static_cast<int>(rng() % 3);
    int ny = 2 + static_cast<int>(rng() % 3);
    JointPrior p = random_prior(rng, {nx, ny}, round % 3 == 0);
    DiscreteSolveResult solved = solve_discrete2(p);
    BruteForce2Result brute = brute_force2(p);
    CHECK(solved.revenue == brute.revenue);
    CHECK(!verify_truthful(solved.mechanism).has_value());
    CHECK(expected_revenue(solved.mechanism, p) == solved.revenue);
    // the emitted pair is proper, so the two revenue routes coincide
    CHECK(pair_is_proper(solved.pair, p));
    MarginalProfitGrid f = mpc_discrete(p, 0);
    MarginalProfitGrid g = mpc_discrete(p, 1);
    CHECK(revenue_via_mpc(solved.pair, f, g, p.total_mass()) == solved.revenue);
  }
}

TEST_CASE("solver certificates: primal equals dual on discrete instances") {
  std::mt19937_64 rng(9);
  for (int round = 0; round < 30; ++round) {
    JointPrior p = random_prior(rng, {3, 4});
    DiscreteSolveResult solved = solve_discrete2(p);
    TransshipmentPlan plan = extract_transshipment(solved.instance);
    DualityReport report = check_duality(solved.instance, solved.mwis, plan);
    CHECK(report.pass);
    CHECK(report.isolated_weight == 0);
  }
}
