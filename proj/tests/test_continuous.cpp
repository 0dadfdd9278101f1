#include <doctest.h>

#include <cmath>
#include <random>

#include "corrauct/solve2.hpp"

using namespace corrauct;

namespace {

// Closed form for the uniform density: the posted-price profile is
// max(x(1-x), 1/4 for x <= 1/2), so a cell's mass is eps times the profile
// drop across it.
Rat uniform_f_cell_exact(int i, int n) {
  auto profile = [n](int k) -> Rat {
    Rat x = Rat(k) / n;
    if (2 * k <= n) return Rat(1, 4);
    return x * (1 - x);
  };
  return (profile(i) - profile(i + 1)) / n;
}

}  // namespace

TEST_CASE("uniform cell masses match the closed form") {
  UniformDensity uniform;
  const int n = 10;
  DiscretizedDensity d = discretize_density(uniform, n);
  Rat tol = rat_from_double(d.per_cell_tolerance);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Rat want = uniform_f_cell_exact(i, n);
      Rat got = d.f_cell[static_cast<std::size_t>(i) * n + j];
      Rat err = got - want;
      if (err < 0) err = -err;
      CHECK(err <= tol);
      if (i + 1 <= n / 2 - 1) CHECK(got == 0);  // strictly left of the reserve
      CHECK(got >= 0);
    }
  }
  // g is the transpose for a symmetric density
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Rat diff = d.g_cell[static_cast<std::size_t>(i) * n + j] -
                 d.f_cell[static_cast<std::size_t>(j) * n + i];
      if (diff < 0) diff = -diff;
      CHECK(diff <= 2 * tol);
    }
  }
}

TEST_CASE("single-cell view agrees with the grid computation") {
  UniformDensity uniform;
  const int n = 8;
  DiscretizedDensity d = discretize_density(uniform, n);
  CHECK(cell_mass_continuous(uniform, 0, 6, 3, n) == d.f_cell[6 * n + 3]);
  CHECK(cell_mass_continuous(uniform, 1, 2, 5, n) == d.g_cell[2 * n + 5]);
  CHECK_THROWS_AS(cell_mass_continuous(uniform, 2, 0, 0, n), std::out_of_range);
}

TEST_CASE("rows telescope to the aggregated profile start") {
  UniformDensity uniform;
  const int n = 12;
  DiscretizedDensity d = discretize_density(uniform, n);
  // sum over a row of f equals eps * m(0) = (1/n)(1/4) for the uniform density
  for (int j = 0; j < n; ++j) {
    Rat row = 0;
    for (int i = 0; i < n; ++i) row += d.f_cell[static_cast<std::size_t>(i) * n + j];
    Rat want = Rat(1, 4 * n);
    Rat err = row - want;
    if (err < 0) err = -err;
    CHECK(err <= rat_from_double(d.per_cell_tolerance) * n);
  }
}

TEST_CASE("coarsest grid still yields nonnegative masses") {
  GaussianBumpDensity bump(0.7, 0.7, 0.25, 0.2);
  DiscretizedDensity d = discretize_density(bump, 2);
  for (const Rat& v : d.f_cell) CHECK(v >= 0);
  for (const Rat& v : d.g_cell) CHECK(v >= 0);
}

TEST_CASE("builtin oracles respect their documented Lipschitz bound") {
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> coord(0.0, 1.0);
  auto spot_check = [&](const DensityOracle& oracle) {
    for (int round = 0; round < 2000; ++round) {
      double x1 = coord(rng), y1 = coord(rng), x2 = coord(rng), y2 = coord(rng);
      double lhs = std::abs(oracle.density(x1, y1) - oracle.density(x2, y2));
      double rhs = oracle.lipschitz() * (std::abs(x1 - x2) + std::abs(y1 - y2));
      CHECK(lhs <= rhs + 1e-9);
      CHECK(oracle.density(x1, y1) >= oracle.min_density() - 1e-12);
    }
  };
  spot_check(UniformDensity());
  spot_check(ProductBetaDensity(2, 2, 0.1));
  spot_check(ProductBetaDensity(2, 1, 0.25));
  spot_check(GaussianBumpDensity(0.8, 0.8, 0.15, 0.1));
}

TEST_CASE("oracles that dip below their floor are rejected") {
  struct Lying final : DensityOracle {
    double density(double x, double) const override { return x < 0.5 ? 0.05 : 1.0; }
    double lipschitz() const override { return 10; }
    double min_density() const override { return 0.5; }
    std::string name() const override { return "lying"; }
  } lying;
  CHECK_THROWS_AS(discretize_density(lying, 4), std::domain_error);
}

TEST_CASE("factory parses the builtin specs") {
  CHECK(make_builtin_density("uniform")->lipschitz() == 0.0);
  CHECK(make_builtin_density("product-beta(2,2)")->min_density() == doctest::Approx(0.1));
  CHECK(make_builtin_density("gaussian-bump(0.5,0.5,0.2,0.3)")->min_density() > 0);
  CHECK_THROWS_AS(make_builtin_density("no-such"), std::invalid_argument);
  CHECK_THROWS_AS(make_builtin_density("product-beta(1.5,2)"), std::invalid_argument);
}

TEST_CASE("continuous solve on the uniform density tracks the reserve-price optimum") {
  UniformDensity uniform;
  ContinuousSolveResult result = solve_continuous(uniform, 0.1);
  CHECK(result.resolution == 30);

  const double optimum = 5.0 / 12.0;
  double reported = rat_to_double(result.revenue);
  CHECK(std::abs(reported - optimum) <= result.budget.reported_bound);

  // boundaries: alpha tracks max(1/2, y), beta the transpose
  const double ep = result.budget.epsilon_prime;
  for (int j = 0; j < result.resolution; ++j) {
    double alpha = result.pair.alpha[j] * ep;
    double want = std::max(0.5, j * ep);
    CHECK(std::abs(alpha - want) <= 0.1 + 2 * ep);
  }

  CHECK(!verify_truthful(result.mechanism).has_value());

  // grid properness is already established by the pipeline
  AllocationPair again = make_proper_cells(result.pair, result.instance);
  CHECK(again.alpha == result.pair.alpha);
  CHECK(again.beta == result.pair.beta);
}

TEST_CASE("halving epsilon never drops the estimate by more than the budget") {
  UniformDensity uniform;
  ContinuousSolveResult coarse = solve_continuous(uniform, 0.2);
  ContinuousSolveResult fine = solve_continuous(uniform, 0.1);
  CHECK(rat_to_double(fine.revenue) >=
        rat_to_double(coarse.revenue) - coarse.budget.reported_bound);
}

TEST_CASE("separable density: pipeline consistency on its own grid") {
  ProductBetaDensity density(2, 1, 0.25);  // floor + scaled 4xy
  ContinuousSolveResult result = solve_continuous(density, 0.25);
  DiscretizedDensity cells = discretize_density(density, result.resolution);
  ConflictInstance inst;
  inst.nx = inst.ny = result.resolution;
  inst.u_weight = cells.f_cell;
  inst.w_weight = cells.g_cell;
  inst.strict = true;
  IndependentSetSolution sol = solve_mwis_lex(inst);
  CHECK(sol.objective == result.mwis.objective);
  CHECK(result.revenue == result.mwis.objective - result.overlap_loss);
  CHECK(result.overlap_loss >= 0);
}

TEST_CASE("continuous duality certificate and transport witness") {
  UniformDensity uniform;
  ContinuousSolveResult result = solve_continuous(uniform, 0.15);
  TransshipmentPlan plan = extract_transshipment(result.instance);
  DualityReport report = check_duality(result.instance, result.mwis, plan);
  CHECK(report.pass);
  CHECK(report.gap == 0);
  CHECK(report.isolated_weight > 0);  // strict instances strand boundary cells

  TransportWitness witness = transport_witness_continuous(plan, result.instance);
  CHECK(witness.feasible);
  CHECK(witness.cost == plan.cost());

  // weak duality sandwich: any valid pair's mass revenue is at most the
  // witness cost plus the vacuous-constraint weight
  MarginalProfitGrid f{0, {result.resolution, result.resolution}, result.instance.u_weight};
  MarginalProfitGrid g{1, {result.resolution, result.resolution}, result.instance.w_weight};
  AllocationPair posted;  // post 1/2 to bidder 1 only
  posted.alpha.assign(result.resolution, result.resolution / 2);
  posted.beta.assign(result.resolution, result.resolution);
  Rat posted_value = revenue_via_mpc(posted, f, g, Rat(1));
  CHECK(posted_value <= witness.cost + report.isolated_weight);
  CHECK(result.revenue <= witness.cost + report.isolated_weight);

  SUBCASE("an under-covering plan is reported with the failing cell") {
    TransshipmentPlan broken = plan;
    REQUIRE(!broken.flow.empty());
    broken.flow.erase(broken.flow.begin());
    TransportWitness bad = transport_witness_continuous(broken, result.instance);
    CHECK(!bad.feasible);
    CHECK(bad.detail.find("covering violated") != std::string::npos);
  }
}
