#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "corrauct/mpc.hpp"
#include "corrauct/rational.hpp"

namespace corrauct {

/// Bipartite conflict structure over a two-bidder grid. Node u(i,j) carries
/// bidder 1's marginal profit, node w(i,j) bidder 2's. An edge (u(i,j),
/// w(i',j')) exists iff (i',j') lies (weakly or strictly) to the southeast of
/// (i,j). Edges stay implicit: the predicate below is the whole relation, the
/// quartic edge list is never materialized.
struct ConflictInstance {
  int nx = 0;
  int ny = 0;
  std::vector<Rat> u_weight;  // row-major, index i * ny + j
  std::vector<Rat> w_weight;
  bool strict = false;

  int cell(int i, int j) const { return i * ny + j; }
  int cells() const { return nx * ny; }

  bool conflicts(int ui, int uj, int wi, int wj) const {
    return strict ? (ui < wi && uj > wj) : (ui <= wi && uj >= wj);
  }
  /// u(i,j) has at least one W-side neighbor.
  bool u_has_edge(int i, int j) const {
    return strict ? (i + 1 < nx && j > 0) : true;
  }
  bool w_has_edge(int i, int j) const {
    return strict ? (i > 0 && j + 1 < ny) : true;
  }

  Rat total_weight() const;
  /// Combined weight of positive-weight nodes with no incident edge; their
  /// covering constraints in the transshipment dual are vacuous. Always zero
  /// for weak instances (every node conflicts with its own cell).
  Rat isolated_weight() const;

  void validate() const;
};

ConflictInstance build_conflict_instance(const MarginalProfitGrid& f,
                                         const MarginalProfitGrid& g, bool strict);

struct IndependentSetSolution {
  std::vector<char> u_selected;  // same layout as weights
  std::vector<char> w_selected;
  Rat objective;      // sum of selected weights
  Rat cut_value;      // total weight - objective (= min vertex cover weight)
  std::size_t cardinality = 0;
};

/// Maximum-weight independent set; among maximizers, minimum cardinality.
/// One min cut on integer-scaled weights M*w - 1 (M = positive node count + 1,
/// after clearing denominators): the -1 makes every superfluous node cost
/// something, so cardinality is minimized within the optimal weight class.
/// Selection is the complement of the canonical (source-reachable) min cut.
IndependentSetSolution solve_mwis_lex(const ConflictInstance& inst);

/// Dual covering flow: y >= 0 on conflict edges, every non-isolated node's
/// incident sum at least its weight. cost() equals the MWIS objective minus
/// the isolated weight at optimality.
struct TransshipmentPlan {
  std::map<std::pair<int, int>, Rat> flow;  // (u cell, w cell) -> y
  Rat isolated_weight;

  Rat cost() const;
};

/// Optimal plan from a second max flow with plain (unscaled) weights: the flow
/// on conflict paths covers the min vertex cover tightly, and each selected
/// node's shortfall is dumped on a fixed neighbor in the cover, which only
/// over-covers nodes whose constraints are inequalities anyway.
TransshipmentPlan extract_transshipment(const ConflictInstance& inst);

struct DualityReport {
  Rat primal;           // MWIS objective
  Rat dual;             // plan cost
  Rat isolated_weight;  // vacuous-constraint weight (zero on weak instances)
  Rat gap;              // primal - dual - isolated_weight
  bool primal_independent = false;
  bool dual_feasible = false;
  bool pass = false;
  std::string detail;
};

DualityReport check_duality(const ConflictInstance& inst, const IndependentSetSolution& sol,
                            const TransshipmentPlan& plan);

namespace detail {
/// Above this many direct conflict arcs the min-cut network switches to the
/// router-mesh encoding (O(cells) arcs realizing the same dominance cuts).
/// Tests lower it to force the mesh on small instances and cross-check the
/// two encodings.
extern std::size_t mwis_direct_arc_limit;
}  // namespace detail

}  // namespace corrauct
