#include <doctest.h>

#include <random>

#include "corrauct/mpc.hpp"
#include "corrauct/prior.hpp"
#include "corrauct/revenue_curve.hpp"

using namespace corrauct;

namespace {

JointPrior uniform22() { return uniform_prior({{1, 2}, {1, 2}}); }

JointPrior correlated22() {
  JointPrior p;
  p.grid.levels = {{1, 2}, {1, 2}};
  p.mass = {Rat(1, 2), Rat(0), Rat(0), Rat(1, 2)};  // mass on (1,1) and (2,2)
  return p;
}

JointPrior random_prior(std::mt19937_64& rng, std::vector<int> shape, int max_num = 8,
                        int den = 16) {
  JointPrior p;
  p.grid.levels.resize(shape.size());
  for (std::size_t b = 0; b < shape.size(); ++b) {
    for (int k = 0; k < shape[b]; ++k) p.grid.levels[b].push_back(k + 1);
  }
  std::size_t cells = 1;
  for (int s : shape) cells *= static_cast<std::size_t>(s);
  std::uniform_int_distribution<int> num(0, max_num);
  p.mass.assign(cells, Rat(0));
  Rat total = 0;
  for (auto& m : p.mass) {
    m = Rat(num(rng)) / den;
    total += m;
  }
  if (total == 0) p.mass[0] = Rat(1, den);
  return p;
}

// direct-summation oracle, no shared code with suffix_revenue
Rat suffix_by_enumeration(const JointPrior& p, int bidder, std::vector<int> point) {
  Rat mass = 0;
  std::vector<int> q = point;
  for (int k = point[bidder]; k < p.grid.size(bidder); ++k) {
    q[bidder] = k;
    mass += p.at(q);
  }
  return p.grid.value(bidder, point[bidder]) * mass;
}

}  // namespace

TEST_CASE("suffix revenue on the uniform iid {1,2} prior") {
  JointPrior p = uniform22();
  CHECK(suffix_revenue(p, 0, std::vector<int>{0, 0}) == Rat(1, 2));  // 1 * (1/4 + 1/4)
  CHECK(suffix_revenue(p, 0, std::vector<int>{1, 0}) == Rat(1, 2));  // 2 * 1/4
  CHECK_THROWS_AS(suffix_revenue(p, 0, std::vector<int>{2, 0}), std::out_of_range);
}

TEST_CASE("suffix revenue is zero past the support") {
  JointPrior p = correlated22();
  // row j=0 has no mass at i=1
  CHECK(suffix_revenue(p, 0, std::vector<int>{1, 0}) == 0);
}

TEST_CASE("suffix revenue matches direct enumeration on random priors") {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 50; ++round) {
    JointPrior p = random_prior(rng, {3, 4});
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 4; ++j) {
        for (int b = 0; b < 2; ++b) {
          CHECK(suffix_revenue(p, b, std::vector<int>{i, j}) ==
                suffix_by_enumeration(p, b, {i, j}));
        }
      }
    }
  }
}

TEST_CASE("marginal profit of the uniform iid prior") {
  JointPrior p = uniform22();
  MarginalProfitGrid f = mpc_discrete(p, 0);
  for (int j = 0; j < 2; ++j) {
    CHECK(f.at(std::vector<int>{1, j}) == Rat(1, 2));
    CHECK(f.at(std::vector<int>{0, j}) == 0);  // max(1*1/2 - 1/2, 0)
  }
}

TEST_CASE("marginal profit of the perfectly correlated prior") {
  JointPrior p = correlated22();
  MarginalProfitGrid f = mpc_discrete(p, 0);
  CHECK(f.at(std::vector<int>{1, 1}) == 1);
  CHECK(f.at(std::vector<int>{1, 0}) == 0);
  CHECK(f.at(std::vector<int>{0, 0}) == Rat(1, 2));
  CHECK(f.at(std::vector<int>{0, 1}) == 0);
}

TEST_CASE("top row of the recurrence is value times mass") {
  std::mt19937_64 rng(11);
  JointPrior p = random_prior(rng, {4, 3});
  MarginalProfitGrid f = mpc_discrete(p, 0);
  for (int j = 0; j < 3; ++j) {
    CHECK(f.at(std::vector<int>{3, j}) == p.grid.value(0, 3) * p.at(std::vector<int>{3, j}));
  }
}

TEST_CASE("skyline identity: suffix sums of mpc equal running suffix-revenue maxima") {
  std::mt19937_64 rng(23);
  for (int round = 0; round < 40; ++round) {
    JointPrior p = random_prior(rng, {4, 4});
    for (int bidder = 0; bidder < 2; ++bidder) {
      MarginalProfitGrid g = mpc_discrete(p, bidder);
      const int n = p.grid.size(bidder);
      const int other = p.grid.size(1 - bidder);
      for (int fixed = 0; fixed < other; ++fixed) {
        Rat suffix_sum = 0;
        Rat best = 0;
        for (int k = n - 1; k >= 0; --k) {
          std::vector<int> point(2);
          point[bidder] = k;
          point[1 - bidder] = fixed;
          suffix_sum += g.at(point);
          Rat rev = suffix_revenue(p, bidder, point);
          if (rev > best) best = rev;
          CHECK(suffix_sum == best);
        }
      }
    }
  }
}

TEST_CASE("mpc entries are nonnegative and invariant under zero-mass padding") {
  std::mt19937_64 rng(31);
  JointPrior p = random_prior(rng, {3, 3});
  MarginalProfitGrid f = mpc_discrete(p, 0);
  for (const Rat& v : f.value) CHECK(v >= 0);

  JointPrior padded = p;
  padded.grid.levels[0].push_back(Rat(99));
  padded.mass.clear();
  padded.mass.resize(4 * 3, Rat(0));
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      padded.at(std::vector<int>{i, j}) = p.at(std::vector<int>{i, j});
    }
  }
  MarginalProfitGrid fp = mpc_discrete(padded, 0);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      CHECK(fp.at(std::vector<int>{i, j}) == f.at(std::vector<int>{i, j}));
    }
  }
  for (int j = 0; j < 3; ++j) CHECK(fp.at(std::vector<int>{3, j}) == 0);
}

TEST_CASE("marginalize: 3-bidder uniform collapses to 2-bidder uniform") {
  JointPrior p = uniform_prior({{1, 2}, {1, 2}, {1, 2}});
  JointPrior m = marginalize(p, 0, 1);
  for (const Rat& v : m.mass) CHECK(v == Rat(1, 4));
  CHECK(m.total_mass() == 1);
  CHECK_THROWS_AS(marginalize(p, 1, 1), std::invalid_argument);
}

TEST_CASE("marginalize preserves mass and matches brute-force summation") {
  std::mt19937_64 rng(41);
  JointPrior p = random_prior(rng, {2, 3, 2});
  JointPrior m = marginalize(p, 0, 2);
  CHECK(m.total_mass() == p.total_mass());
  for (int a = 0; a < 2; ++a) {
    for (int c = 0; c < 2; ++c) {
      Rat direct = 0;
      for (int b = 0; b < 3; ++b) direct += p.at(std::vector<int>{a, b, c});
      CHECK(m.at(std::vector<int>{a, c}) == direct);
    }
  }
}

TEST_CASE("marginalize of a product prior is the product of factors") {
  JointPrior p;
  p.grid.levels = {{1, 2}, {1, 3}, {2, 5}};
  std::vector<Rat> fa = {Rat(1, 4), Rat(3, 4)};
  std::vector<Rat> fb = {Rat(1, 2), Rat(1, 2)};
  std::vector<Rat> fc = {Rat(1, 3), Rat(2, 3)};
  p.mass.resize(8);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      for (int c = 0; c < 2; ++c) {
        p.at(std::vector<int>{a, b, c}) = fa[a] * fb[b] * fc[c];
      }
    }
  }
  JointPrior m = marginalize(p, 0, 1);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      CHECK(m.at(std::vector<int>{a, b}) == fa[a] * fb[b]);
    }
  }
}

TEST_CASE("discrete revenue curve on the two-point uniform line") {
  // conditional masses 1/2, 1/2 at values 1, 2
  JointPrior p = uniform22();
  auto curve = revenue_curve_discrete(p, 0, std::vector<int>{0, 0});
  REQUIRE(curve.size() == 2);
  CHECK(curve[0].q == Rat(1, 2));
  CHECK(curve[0].revenue == 1);
  CHECK(curve[1].q == 1);
  CHECK(curve[1].revenue == 1);
  CHECK(curve[0].skyline == 1);
  CHECK(curve[1].skyline == 1);
}

TEST_CASE("revenue curve on a point mass is a single step") {
  JointPrior p;
  p.grid.levels = {{Rat(3, 2)}, {1}};
  p.mass = {Rat(1)};
  auto curve = revenue_curve_discrete(p, 0, std::vector<int>{0, 0});
  REQUIRE(curve.size() == 1);
  CHECK(curve[0].q == 1);
  CHECK(curve[0].revenue == Rat(3, 2));
  CHECK(curve[0].skyline == curve[0].revenue);
}

TEST_CASE("curve ordering: envelope >= skyline >= revenue, skyline nondecreasing") {
  std::mt19937_64 rng(53);
  for (int round = 0; round < 30; ++round) {
    JointPrior p = random_prior(rng, {5, 2});
    std::vector<int> fixed = {0, static_cast<int>(rng() % 2)};
    Rat line = 0;
    for (int k = 0; k < 5; ++k) {
      fixed[0] = k;
      line += p.at(fixed);
    }
    if (line == 0) continue;
    auto curve = revenue_curve_discrete(p, 0, fixed);
    for (std::size_t k = 0; k < curve.size(); ++k) {
      CHECK(curve[k].skyline >= curve[k].revenue);
      CHECK(curve[k].envelope >= curve[k].skyline);
      if (k > 0) CHECK(curve[k].skyline >= curve[k - 1].skyline);
    }
  }
}

TEST_CASE("continuous revenue curve of the uniform density") {
  UniformDensity uniform;
  auto curve = revenue_curve_continuous(uniform, 0, 0.5, 200);
  // R(q) = (1-q) q; running max from q=0
  for (const CurvePointD& pt : curve) {
    CHECK(pt.revenue == doctest::Approx((1 - pt.q) * pt.q).epsilon(1e-6));
  }
  // R'(0.25) = 3/16 (max not yet reached), R'(0.75) = 1/4
  for (const CurvePointD& pt : curve) {
    if (std::abs(pt.q - 0.25) < 1e-9) CHECK(pt.skyline == doctest::Approx(3.0 / 16).epsilon(1e-6));
    if (std::abs(pt.q - 0.75) < 1e-9) CHECK(pt.skyline == doctest::Approx(0.25).epsilon(1e-6));
  }
}
