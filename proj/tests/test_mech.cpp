#include <doctest.h>

#include <random>

#include "corrauct/mechanism.hpp"

using namespace corrauct;

namespace {

JointPrior uniform22() { return uniform_prior({{1, 2}, {1, 2}}); }

// The optimal pair for the uniform iid prior: A = {(2,1),(2,2)}, B = {(1,2)}.
AllocationPair optimal_pair22() {
  AllocationPair pair;
  pair.alpha = {1, 1};  // bidder 1 wins at top value in both rows
  pair.beta = {1, 2};   // bidder 2 wins at (1,2); never in column 2
  return pair;
}

JointPrior random_prior(std::mt19937_64& rng, std::vector<int> shape) {
  JointPrior p;
  p.grid.levels.resize(shape.size());
  for (std::size_t b = 0; b < shape.size(); ++b) {
    for (int k = 0; k < shape[b]; ++k) p.grid.levels[b].push_back(k + 1);
  }
  std::size_t cells = 1;
  for (int s : shape) cells *= static_cast<std::size_t>(s);
  std::uniform_int_distribution<int> num(0, 6);
  p.mass.assign(cells, Rat(0));
  Rat total = 0;
  for (auto& m : p.mass) {
    m = Rat(num(rng)) / 12;
    total += m;
  }
  if (total == 0) p.mass[0] = Rat(1, 12);
  return p;
}

AllocationPair random_valid_pair(std::mt19937_64& rng, int nx, int ny) {
  AllocationPair pair;
  pair.alpha.resize(ny);
  pair.beta.assign(nx, ny);
  for (int j = 0; j < ny; ++j) pair.alpha[j] = static_cast<int>(rng() % (nx + 1));
  for (int i = 0; i < nx; ++i) {
    int min_beta = 0;
    for (int j = 0; j < ny; ++j) {
      if (pair.alpha[j] <= i) min_beta = std::max(min_beta, j + 1);
    }
    pair.beta[i] = min_beta + static_cast<int>(rng() % (ny - min_beta + 1));
  }
  return pair;
}

}  // namespace

TEST_CASE("thresholds and payments on the uniform iid optimum") {
  JointPrior p = uniform22();
  Mechanism mech = thresholds_and_payments(pair_to_matrix(optimal_pair22()), p.grid);
  CHECK(mech.threshold_value(0, std::vector<int>{0, 0}) == Rat(2));
  CHECK(mech.threshold_value(0, std::vector<int>{0, 1}) == Rat(2));
  CHECK(mech.payments[0][mech.alloc.flat_index(std::vector<int>{1, 0})] == 2);
  CHECK(mech.payments[0][mech.alloc.flat_index(std::vector<int>{1, 1})] == 2);
  CHECK(mech.payments[1][mech.alloc.flat_index(std::vector<int>{0, 1})] == 2);
  // losers pay nothing
  CHECK(mech.payments[1][mech.alloc.flat_index(std::vector<int>{1, 1})] == 0);
  CHECK(mech.payments[0][mech.alloc.flat_index(std::vector<int>{0, 0})] == 0);
}

TEST_CASE("a bidder winning everywhere pays the lowest level") {
  ValueGrid grid;
  grid.levels = {{1, 2, 3}, {1, 2}};
  AllocationMatrix alloc;
  alloc.shape = {3, 2};
  alloc.winner.assign(6, 1);
  Mechanism mech = thresholds_and_payments(alloc, grid);
  CHECK(mech.threshold_value(0, std::vector<int>{0, 0}) == Rat(1));
  CHECK(mech.threshold_value(0, std::vector<int>{0, 1}) == Rat(1));
}

TEST_CASE("non-monotone allocations are rejected with the violating pair") {
  ValueGrid grid;
  grid.levels = {{1, 2}, {1, 2}};
  AllocationMatrix alloc;
  alloc.shape = {2, 2};
  alloc.winner = {1, 0, 0, 0};  // bidder 1 wins at (0,0) but not at (1,0)
  try {
    thresholds_and_payments(alloc, grid);
    FAIL("expected MonotonicityError");
  } catch (const MonotonicityError& err) {
    CHECK(err.low == std::vector<int>{0, 0});
    CHECK(err.high == std::vector<int>{1, 0});
  }
}

TEST_CASE("verifier passes threshold mechanisms and catches tampering") {
  JointPrior p = uniform22();
  Mechanism mech = thresholds_and_payments(pair_to_matrix(optimal_pair22()), p.grid);
  CHECK(!verify_truthful(mech).has_value());

  SUBCASE("first-price payments break IC once a winner beats their threshold") {
    AllocationPair wide;
    wide.alpha = {0, 1};  // bidder 1 wins the whole first row
    wide.beta = {2, 2};
    Mechanism tampered = thresholds_and_payments(pair_to_matrix(wide), p.grid);
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        std::vector<int> v = {i, j};
        std::size_t idx = tampered.alloc.flat_index(v);
        if (tampered.alloc.winner[idx] == 1) tampered.payments[0][idx] = p.grid.value(0, i);
        if (tampered.alloc.winner[idx] == 2) tampered.payments[1][idx] = p.grid.value(1, j);
      }
    }
    auto violation = verify_truthful(tampered);
    REQUIRE(violation.has_value());
    CHECK(violation->kind == TruthfulnessViolation::Kind::IC);
    // the profitable deviation is down to the threshold level
    CHECK(violation->point == std::vector<int>{1, 0});
    CHECK(violation->deviation == 0);
  }

  SUBCASE("overcharging the threshold breaks IR") {
    Mechanism tampered = mech;
    for (Rat& pay : tampered.payments[0]) {
      if (pay > 0) pay += 1;
    }
    auto violation = verify_truthful(tampered);
    REQUIRE(violation.has_value());
    CHECK(violation->kind == TruthfulnessViolation::Kind::IR);
    CHECK(violation->bidder == 0);
  }

  SUBCASE("negative payments break NPT") {
    Mechanism tampered = mech;
    tampered.payments[1][0] = -1;
    auto violation = verify_truthful(tampered);
    REQUIRE(violation.has_value());
    CHECK(violation->kind == TruthfulnessViolation::Kind::NPT);
  }
}

TEST_CASE("expected revenue of the known optima") {
  JointPrior p = uniform22();
  Mechanism mech = thresholds_and_payments(pair_to_matrix(optimal_pair22()), p.grid);
  CHECK(expected_revenue(mech, p) == Rat(3, 2));

  JointPrior corr;
  corr.grid.levels = {{1, 2}, {1, 2}};
  corr.mass = {Rat(1, 2), Rat(0), Rat(0), Rat(1, 2)};
  // full surplus: post 1 to bidder 1 at (1,1), 2 at (2,2) via thresholds
  AllocationPair pair;
  pair.alpha = {0, 1};
  pair.beta = {2, 2};
  Mechanism full = thresholds_and_payments(pair_to_matrix(pair), corr.grid);
  CHECK(expected_revenue(full, corr) == Rat(3, 2));

  AllocationMatrix nobody;
  nobody.shape = {2, 2};
  nobody.winner.assign(4, 0);
  Mechanism empty = thresholds_and_payments(nobody, p.grid);
  CHECK(expected_revenue(empty, p) == 0);
}

TEST_CASE("marginal-profit revenue equals payment revenue on proper pairs") {
  JointPrior p = uniform22();
  MarginalProfitGrid f = mpc_discrete(p, 0);
  MarginalProfitGrid g = mpc_discrete(p, 1);
  AllocationPair pair = optimal_pair22();
  REQUIRE(pair_is_proper(pair, p));
  Rat via_mpc = revenue_via_mpc(pair, f, g, p.total_mass());
  CHECK(via_mpc == Rat(3, 2));
  Mechanism mech = thresholds_and_payments(pair_to_matrix(pair), p.grid);
  CHECK(via_mpc == expected_revenue(mech, p));

  AllocationPair nothing;
  nothing.alpha = {2, 2};
  nothing.beta = {2, 2};
  CHECK(revenue_via_mpc(nothing, f, g, p.total_mass()) == 0);
}

TEST_CASE("proper-pair revenue identity on random priors") {
  std::mt19937_64 rng(77);
  int proper_checked = 0;
  for (int round = 0; round < 120; ++round) {
    JointPrior p = random_prior(rng, {3, 3});
    MarginalProfitGrid f = mpc_discrete(p, 0);
    MarginalProfitGrid g = mpc_discrete(p, 1);
    AllocationPair pair = make_proper(random_valid_pair(rng, 3, 3), p);
    REQUIRE(non_crossing(pair));
    REQUIRE(pair_is_proper(pair, p));
    ++proper_checked;
    Mechanism mech = thresholds_and_payments(pair_to_matrix(pair), p.grid);
    CHECK(revenue_via_mpc(pair, f, g, p.total_mass()) == expected_revenue(mech, p));
  }
  CHECK(proper_checked == 120);
}

TEST_CASE("make_proper never decreases revenue and is idempotent") {
  std::mt19937_64 rng(101);
  for (int round = 0; round < 120; ++round) {
    JointPrior p = random_prior(rng, {4, 3});
    AllocationPair pair = random_valid_pair(rng, 4, 3);
    AllocationPair proper = make_proper(pair, p);
    CHECK(non_crossing(proper));
    Mechanism before = thresholds_and_payments(pair_to_matrix(pair), p.grid);
    Mechanism after = thresholds_and_payments(pair_to_matrix(proper), p.grid);
    CHECK(expected_revenue(after, p) >= expected_revenue(before, p));
    AllocationPair again = make_proper(proper, p);
    CHECK(again.alpha == proper.alpha);
    CHECK(again.beta == proper.beta);
  }
}

TEST_CASE("make_proper moves a dominated boundary up (tie to the largest level)") {
  JointPrior p = uniform22();
  AllocationPair pair;
  pair.alpha = {0, 0};
  pair.beta = {2, 2};
  AllocationPair proper = make_proper(pair, p);
  // both levels post the same suffix revenue 1/2; ties go to the larger one
  CHECK(proper.alpha == std::vector<int>{1, 1});
}

TEST_CASE("make_proper keeps already-proper pairs unchanged") {
  JointPrior p = uniform22();
  AllocationPair pair = optimal_pair22();
  AllocationPair proper = make_proper(pair, p);
  CHECK(proper.alpha == pair.alpha);
  CHECK(proper.beta == pair.beta);
}

TEST_CASE("monotone closure fills rightward and upward") {
  std::vector<GridPoint> a = {{1, 0}};
  AllocationPair pair = monotone_closure(a, {}, 3, 2);
  CHECK(pair.alpha == std::vector<int>{1, 3});
  CHECK(pair.beta == std::vector<int>{2, 2, 2});

  AllocationPair empty = monotone_closure({}, {}, 2, 2);
  CHECK(empty.alpha == std::vector<int>{2, 2});
  CHECK(empty.beta == std::vector<int>{2, 2});
}

TEST_CASE("monotone closure rejects conflicting inputs") {
  std::vector<GridPoint> a = {{0, 1}};
  std::vector<GridPoint> b = {{1, 0}};  // weakly southeast of (0,1)
  CHECK_THROWS_AS(monotone_closure(a, b, 2, 2), std::invalid_argument);
}

TEST_CASE("round trip: random monotone allocations verify truthful") {
  std::mt19937_64 rng(131);
  for (int round = 0; round < 60; ++round) {
    int nx = 2 + static_cast<int>(rng() % 3);
    int ny = 2 + static_cast<int>(rng() % 3);
    JointPrior p = random_prior(rng, {nx, ny});
    AllocationPair pair = random_valid_pair(rng, nx, ny);
    Mechanism mech = thresholds_and_payments(pair_to_matrix(pair), p.grid);
    CHECK(!verify_truthful(mech).has_value());
    // closure of the induced regions reproduces the same allocation
    AllocationPair back = matrix_to_pair(mech.alloc);
    CHECK(pair_to_matrix(back).winner == mech.alloc.winner);
  }
}
