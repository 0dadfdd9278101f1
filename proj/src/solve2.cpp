#include "corrauct/solve2.hpp"

#include <algorithm>
#include <cmath>

namespace corrauct {

namespace {

std::pair<std::vector<GridPoint>, std::vector<GridPoint>> selected_points(
    const ConflictInstance& inst, const IndependentSetSolution& sol) {
  std::vector<GridPoint> a, b;
  for (int i = 0; i < inst.nx; ++i) {
    for (int j = 0; j < inst.ny; ++j) {
      if (sol.u_selected[inst.cell(i, j)]) a.push_back({i, j});
      if (sol.w_selected[inst.cell(i, j)]) b.push_back({i, j});
    }
  }
  return {a, b};
}

}  // namespace

DiscreteSolveResult solve_discrete2(const JointPrior& prior) {
  prior.validate();
  if (prior.bidders() != 2) throw std::invalid_argument("solve_discrete2 needs two bidders");

  DiscreteSolveResult result;
  MarginalProfitGrid f = mpc_discrete(prior, 0);
  MarginalProfitGrid g = mpc_discrete(prior, 1);
  result.instance = build_conflict_instance(f, g, /*strict=*/false);
  result.mwis = solve_mwis_lex(result.instance);

  auto [a_points, b_points] = selected_points(result.instance, result.mwis);
  result.pair = monotone_closure(a_points, b_points, result.instance.nx, result.instance.ny);
  result.mechanism = thresholds_and_payments(pair_to_matrix(result.pair), prior.grid);
  result.revenue = result.mwis.objective / prior.total_mass();
  return result;
}

BruteForce2Result brute_force2(const JointPrior& prior) {
  prior.validate();
  if (prior.bidders() != 2) throw std::invalid_argument("brute_force2 needs two bidders");
  const int nx = prior.grid.size(0), ny = prior.grid.size(1);

  double work = std::pow(nx + 1, ny);
  if (work > 1e6) {
    throw SizeGuardError("brute_force2 guard: (N1+1)^N2 = " + std::to_string(work));
  }

  // suffix revenues per line, indexed [j][i] for rows and [i][j] for columns;
  // the extra slot at the end means "never" and earns nothing.
  std::vector<std::vector<Rat>> row_rev(ny, std::vector<Rat>(nx + 1, Rat(0)));
  std::vector<std::vector<Rat>> col_rev(nx, std::vector<Rat>(ny + 1, Rat(0)));
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      row_rev[j][i] = suffix_revenue(prior, 0, std::vector<int>{i, j});
    }
  }
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < ny; ++j) {
      col_rev[i][j] = suffix_revenue(prior, 1, std::vector<int>{i, j});
    }
  }

  std::vector<int> alpha(ny, 0);
  std::vector<int> best_alpha, best_beta;
  Rat best = -1;

  while (true) {
    // Given alpha, beta(i) may be anything above the highest row that already
    // allocates column i to bidder 1; pick the best suffix revenue per column.
    Rat value = 0;
    for (int j = 0; j < ny; ++j) {
      if (alpha[j] < nx) value += row_rev[j][alpha[j]];
    }
    std::vector<int> beta(nx, ny);
    for (int i = 0; i < nx; ++i) {
      int min_beta = 0;
      for (int j = 0; j < ny; ++j) {
        if (alpha[j] <= i) min_beta = std::max(min_beta, j + 1);
      }
      Rat col_best = 0;
      int arg = ny;
      for (int j = min_beta; j < ny; ++j) {
        if (col_rev[i][j] > col_best) {
          col_best = col_rev[i][j];
          arg = j;
        }
      }
      beta[i] = arg;
      value += col_best;
    }
    if (value > best) {
      best = value;
      best_alpha = alpha;
      best_beta = beta;
    }
    // odometer over alpha in [0..nx]^ny
    int pos = ny - 1;
    while (pos >= 0 && alpha[pos] == nx) {
      alpha[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
    ++alpha[pos];
  }

  BruteForce2Result result;
  result.pair.alpha = best_alpha;
  result.pair.beta = best_beta;
  result.mechanism = thresholds_and_payments(pair_to_matrix(result.pair), prior.grid);
  result.revenue = best / prior.total_mass();
  return result;
}

AllocationPair make_proper_cells(const AllocationPair& pair, const ConflictInstance& inst) {
  AllocationPair out = pair;
  for (int j = 0; j < inst.ny; ++j) {
    int i = out.alpha[j];
    while (i < inst.nx && inst.u_weight[inst.cell(i, j)] == 0) ++i;
    out.alpha[j] = i;
  }
  for (int i = 0; i < inst.nx; ++i) {
    int j = out.beta[i];
    while (j < inst.ny && inst.w_weight[inst.cell(i, j)] == 0) ++j;
    out.beta[i] = j;
  }
  return out;
}

ContinuousSolveResult solve_continuous(const DensityOracle& oracle, double epsilon) {
  if (!(epsilon > 0) || epsilon > 0.25) {
    throw std::invalid_argument("epsilon must lie in (0, 1/4]");
  }
  const double lambda = oracle.lipschitz();
  const int n = static_cast<int>(std::ceil((3.0 + 2.0 * lambda) / epsilon));
  if (n > 1200) throw std::invalid_argument("resolution overflow: need grid " + std::to_string(n));

  ContinuousSolveResult result;
  result.resolution = n;
  DiscretizedDensity cells = discretize_density(oracle, n);

  result.instance.nx = n;
  result.instance.ny = n;
  result.instance.u_weight = std::move(cells.f_cell);
  result.instance.w_weight = std::move(cells.g_cell);
  result.instance.strict = true;
  result.mwis = solve_mwis_lex(result.instance);

  // Strict independence allows selected u and w cells to share a column, so
  // the closures can overlap. Ties go to bidder 1; bidder 2's suffix starts
  // above the highest bidder-1 cell of its column and the skipped w weight is
  // recorded as overlap_loss.
  result.pair.alpha.assign(n, n);
  std::vector<int> beta_raw(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      int c = result.instance.cell(i, j);
      if (result.mwis.u_selected[c]) result.pair.alpha[j] = std::min(result.pair.alpha[j], i);
      if (result.mwis.w_selected[c]) beta_raw[i] = std::min(beta_raw[i], j);
    }
  }
  result.pair.beta.assign(n, n);
  for (int i = 0; i < n; ++i) {
    int top_a = -1;
    for (int j = 0; j < n; ++j) {
      if (result.pair.alpha[j] <= i) top_a = j;
    }
    result.pair.beta[i] = std::max(beta_raw[i], top_a + 1);
  }
  if (!non_crossing(result.pair, /*strict=*/true)) {
    throw std::logic_error("continuous stair pair failed non-crossing");
  }
  result.pair = make_proper_cells(result.pair, result.instance);

  result.revenue = 0;
  for (int j = 0; j < n; ++j) {
    for (int i = result.pair.alpha[j]; i < n; ++i) {
      result.revenue += result.instance.u_weight[result.instance.cell(i, j)];
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = result.pair.beta[i]; j < n; ++j) {
      result.revenue += result.instance.w_weight[result.instance.cell(i, j)];
    }
  }
  result.overlap_loss = result.mwis.objective - result.revenue;
  if (result.overlap_loss < 0) throw std::logic_error("emitted pair exceeds the optimum");

  ValueGrid grid;
  grid.levels.resize(2);
  for (int b = 0; b < 2; ++b) {
    grid.levels[b].reserve(n);
    for (int k = 0; k < n; ++k) grid.levels[b].push_back(Rat(k) / Rat(n));
  }
  result.mechanism = thresholds_and_payments(pair_to_matrix(result.pair), grid);

  const double ep = 1.0 / n;
  result.budget.epsilon_request = epsilon;
  result.budget.epsilon_prime = ep;
  result.budget.resolution = n;
  result.budget.boundary_term = 2.0 * (1.0 + lambda) * ep;
  result.budget.quadrature_term = cells.total_error_bound;
  result.budget.overlap_term = rat_to_double(result.overlap_loss);
  result.budget.proper_term = 8.0 * (1.0 + lambda) * ep;
  result.budget.reported_bound = result.budget.boundary_term + result.budget.quadrature_term +
                                 result.budget.overlap_term;
  result.budget.true_revenue_bound = result.budget.reported_bound + result.budget.proper_term;
  return result;
}

TransportWitness transport_witness_continuous(const TransshipmentPlan& plan,
                                              const ConflictInstance& inst) {
  TransportWitness witness;
  witness.cost = 0;
  witness.feasible = true;

  const int cells = inst.cells();
  std::vector<Rat> u_sum(cells, Rat(0)), w_sum(cells, Rat(0));
  for (const auto& [edge, y] : plan.flow) {
    if (y == 0) continue;
    auto [uc, wc] = edge;
    const Rat& wu = inst.u_weight[uc];
    const Rat& wv = inst.w_weight[wc];
    if (wu == 0 && wv == 0) {
      witness.feasible = false;
      witness.detail = "flow between two massless cells (" + std::to_string(uc) + "," +
                       std::to_string(wc) + ")";
      return witness;
    }
    if (wu > 0 && wv > 0) {
      Rat s = y / (wu * wv);
      witness.scale[edge] = s;
      witness.cost += s * wu * wv;
    } else {
      witness.uniform_fill[edge] = y;
      witness.cost += y;
    }
    if (wu > 0) u_sum[uc] += y;
    if (wv > 0) w_sum[wc] += y;
  }

  for (int i = 0; i < inst.nx; ++i) {
    for (int j = 0; j < inst.ny; ++j) {
      int c = inst.cell(i, j);
      if (inst.u_weight[c] > 0 && inst.u_has_edge(i, j) && u_sum[c] < inst.u_weight[c]) {
        witness.feasible = false;
        witness.detail = "covering violated at f-cell (" + std::to_string(i) + "," +
                         std::to_string(j) + ")";
        return witness;
      }
      if (inst.w_weight[c] > 0 && inst.w_has_edge(i, j) && w_sum[c] < inst.w_weight[c]) {
        witness.feasible = false;
        witness.detail = "covering violated at g-cell (" + std::to_string(i) + "," +
                         std::to_string(j) + ")";
        return witness;
      }
    }
  }
  return witness;
}

}  // namespace corrauct
