#include "corrauct/mwis.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

#include "corrauct/maxflow.hpp"

namespace corrauct {

namespace detail {
std::size_t mwis_direct_arc_limit = 2'000'000;
}  // namespace detail

namespace {

Int to_int(const Rat& value, const Int& denominator) {
  Rat scaled = value * Rat(denominator);
  if (scaled.get_den() != 1) throw std::logic_error("scaling did not clear denominator");
  return scaled.get_num();
}

struct FlowSetup {
  MaxFlow net;
  int source = -1;
  int sink = -1;
  std::vector<int> u_node, w_node;  // per cell, -1 when not in the network
  std::vector<int> su_arc, wt_arc;  // per cell, -1 when absent
  bool used_chain = false;
};

// Builds the cut network for the given per-node integer capacities. Nodes with
// capacity <= 0 are dropped: they are never part of a maximizing selection.
FlowSetup build_network(const ConflictInstance& inst, const std::vector<Int>& u_cap,
                        const std::vector<Int>& w_cap) {
  const int cells = inst.cells();
  FlowSetup fs;
  fs.u_node.assign(cells, -1);
  fs.w_node.assign(cells, -1);
  fs.su_arc.assign(cells, -1);
  fs.wt_arc.assign(cells, -1);

  Int inf = 1;
  std::size_t pu = 0, pw = 0;
  for (int c = 0; c < cells; ++c) {
    if (u_cap[c] > 0) {
      ++pu;
      inf += u_cap[c];
    }
    if (w_cap[c] > 0) {
      ++pw;
      inf += w_cap[c];
    }
  }

  fs.source = fs.net.add_node();
  fs.sink = fs.net.add_node();
  for (int c = 0; c < cells; ++c) {
    if (u_cap[c] > 0) {
      fs.u_node[c] = fs.net.add_node();
      fs.su_arc[c] = fs.net.add_arc(fs.source, fs.u_node[c], u_cap[c]);
    }
    if (w_cap[c] > 0) {
      fs.w_node[c] = fs.net.add_node();
      fs.wt_arc[c] = fs.net.add_arc(fs.w_node[c], fs.sink, w_cap[c]);
    }
  }

  fs.used_chain = pu * pw > detail::mwis_direct_arc_limit;
  if (!fs.used_chain) {
    for (int i = 0; i < inst.nx; ++i) {
      for (int j = 0; j < inst.ny; ++j) {
        int uc = inst.cell(i, j);
        if (fs.u_node[uc] < 0) continue;
        for (int wi = inst.strict ? i + 1 : i; wi < inst.nx; ++wi) {
          for (int wj = inst.strict ? j - 1 : j; wj >= 0; --wj) {
            int wc = inst.cell(wi, wj);
            if (fs.w_node[wc] >= 0) fs.net.add_arc(fs.u_node[uc], fs.w_node[wc], inf);
          }
        }
      }
    }
  } else {
    // Router mesh: router(i,j) reaches every w(i',j') with i' >= i, j' <= j.
    std::vector<int> router(cells);
    for (int c = 0; c < cells; ++c) router[c] = fs.net.add_node();
    for (int i = 0; i < inst.nx; ++i) {
      for (int j = 0; j < inst.ny; ++j) {
        int c = inst.cell(i, j);
        if (i + 1 < inst.nx) fs.net.add_arc(router[c], router[inst.cell(i + 1, j)], inf);
        if (j > 0) fs.net.add_arc(router[c], router[inst.cell(i, j - 1)], inf);
        if (fs.w_node[c] >= 0) fs.net.add_arc(router[c], fs.w_node[c], inf);
      }
    }
    for (int i = 0; i < inst.nx; ++i) {
      for (int j = 0; j < inst.ny; ++j) {
        int c = inst.cell(i, j);
        if (fs.u_node[c] < 0) continue;
        if (inst.strict) {
          if (i + 1 < inst.nx && j > 0) {
            fs.net.add_arc(fs.u_node[c], router[inst.cell(i + 1, j - 1)], inf);
          }
        } else {
          fs.net.add_arc(fs.u_node[c], router[c], inf);
        }
      }
    }
  }
  return fs;
}

}  // namespace

Rat ConflictInstance::total_weight() const {
  Rat t = 0;
  for (const Rat& w : u_weight) t += w;
  for (const Rat& w : w_weight) t += w;
  return t;
}

Rat ConflictInstance::isolated_weight() const {
  Rat t = 0;
  if (!strict) return t;
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < ny; ++j) {
      if (!u_has_edge(i, j)) t += u_weight[cell(i, j)];
      if (!w_has_edge(i, j)) t += w_weight[cell(i, j)];
    }
  }
  return t;
}

void ConflictInstance::validate() const {
  if (nx <= 0 || ny <= 0) throw std::invalid_argument("empty conflict grid");
  if (u_weight.size() != static_cast<std::size_t>(cells()) || u_weight.size() != w_weight.size()) {
    throw std::invalid_argument("weight arrays do not match grid");
  }
  for (const Rat& w : u_weight) {
    if (w < 0) throw std::invalid_argument("negative node weight");
  }
  for (const Rat& w : w_weight) {
    if (w < 0) throw std::invalid_argument("negative node weight");
  }
}

ConflictInstance build_conflict_instance(const MarginalProfitGrid& f,
                                         const MarginalProfitGrid& g, bool strict) {
  if (f.shape.size() != 2 || g.shape.size() != 2 || f.shape != g.shape) {
    throw std::invalid_argument("conflict instance needs two grids of equal 2-d shape");
  }
  ConflictInstance inst;
  inst.nx = f.shape[0];
  inst.ny = f.shape[1];
  inst.u_weight = f.value;
  inst.w_weight = g.value;
  inst.strict = strict;
  inst.validate();
  return inst;
}

IndependentSetSolution solve_mwis_lex(const ConflictInstance& inst) {
  inst.validate();
  const int cells = inst.cells();

  std::vector<Rat> all;
  all.reserve(2 * cells);
  all.insert(all.end(), inst.u_weight.begin(), inst.u_weight.end());
  all.insert(all.end(), inst.w_weight.begin(), inst.w_weight.end());
  const Int denom = common_denominator(all);

  Int positive = 0;
  for (const Rat& w : all) {
    if (w > 0) ++positive;
  }

  IndependentSetSolution sol;
  sol.u_selected.assign(cells, 0);
  sol.w_selected.assign(cells, 0);
  sol.objective = 0;

  if (positive == 0) {
    sol.cut_value = inst.total_weight();
    return sol;
  }

  // Lexicographic scaling: maximizing sum of (M*n - 1) over selected nodes is
  // max total weight first, min cardinality second, because M exceeds any
  // possible cardinality difference.
  const Int scale = positive + 1;
  std::vector<Int> u_cap(cells), w_cap(cells);
  Int scaled_total = 0;
  for (int c = 0; c < cells; ++c) {
    Int nu = to_int(inst.u_weight[c], denom);
    Int nw = to_int(inst.w_weight[c], denom);
    u_cap[c] = nu > 0 ? Int(scale * nu - 1) : Int(0);
    w_cap[c] = nw > 0 ? Int(scale * nw - 1) : Int(0);
    scaled_total += u_cap[c] + w_cap[c];
  }

  FlowSetup fs = build_network(inst, u_cap, w_cap);
  Int flow = fs.net.run(fs.source, fs.sink);
  std::vector<char> reach = fs.net.source_side(fs.source);

  Int scaled_selected = 0;
  for (int c = 0; c < cells; ++c) {
    if (fs.u_node[c] >= 0 && reach[fs.u_node[c]]) {
      sol.u_selected[c] = 1;
      sol.objective += inst.u_weight[c];
      scaled_selected += u_cap[c];
      ++sol.cardinality;
    }
    if (fs.w_node[c] >= 0 && !reach[fs.w_node[c]]) {
      sol.w_selected[c] = 1;
      sol.objective += inst.w_weight[c];
      scaled_selected += w_cap[c];
      ++sol.cardinality;
    }
  }
  if (scaled_selected != scaled_total - flow) {
    throw std::logic_error("min-cut bookkeeping mismatch");
  }
  sol.cut_value = inst.total_weight() - sol.objective;
  return sol;
}

Rat TransshipmentPlan::cost() const {
  Rat c = 0;
  for (const auto& [edge, y] : flow) c += y;
  return c;
}

TransshipmentPlan extract_transshipment(const ConflictInstance& inst) {
  inst.validate();
  const int cells = inst.cells();

  std::vector<Rat> all;
  all.reserve(2 * cells);
  all.insert(all.end(), inst.u_weight.begin(), inst.u_weight.end());
  all.insert(all.end(), inst.w_weight.begin(), inst.w_weight.end());
  const Int denom = common_denominator(all);

  std::vector<Int> u_cap(cells), w_cap(cells);
  for (int c = 0; c < cells; ++c) {
    u_cap[c] = to_int(inst.u_weight[c], denom);
    w_cap[c] = to_int(inst.w_weight[c], denom);
  }

  TransshipmentPlan plan;
  plan.isolated_weight = inst.isolated_weight();

  FlowSetup fs = build_network(inst, u_cap, w_cap);
  Int flow = fs.net.run(fs.source, fs.sink);
  std::vector<char> reach = fs.net.source_side(fs.source);

  // Node -> cell lookup for path endpoints.
  std::vector<int> cell_of(fs.net.node_count(), -1);
  for (int c = 0; c < cells; ++c) {
    if (fs.u_node[c] >= 0) cell_of[fs.u_node[c]] = c;
    if (fs.w_node[c] >= 0) cell_of[fs.w_node[c]] = c;
  }

  // Peel source-to-sink paths off the (acyclic) forward flow. Each peel zeroes
  // at least one arc, so the cursor sweep is amortized linear.
  std::vector<std::vector<int>> out(fs.net.node_count());
  for (int node = 0; node < fs.net.node_count(); ++node) {
    for (int a : fs.net.arcs_out(node)) {
      if ((a & 1) == 0) out[node].push_back(a);
    }
  }
  std::vector<Int> rem(fs.net.arc_count(), 0);
  for (int a = 0; a < fs.net.arc_count(); a += 2) rem[a] = fs.net.flow_on(a);
  std::vector<std::size_t> cursor(fs.net.node_count(), 0);

  std::map<std::pair<int, int>, Int> shipped;      // integer y on conflict edges
  std::vector<Int> sent_u(cells, 0), got_w(cells, 0);
  Int peeled = 0;

  std::vector<int> path;
  while (true) {
    path.clear();
    int node = fs.source;
    while (node != fs.sink) {
      auto& cur = cursor[node];
      while (cur < out[node].size() && rem[out[node][cur]] == 0) ++cur;
      if (cur == out[node].size()) break;
      int a = out[node][cur];
      path.push_back(a);
      node = fs.net.arc_to(a);
    }
    if (node != fs.sink) {
      if (node == fs.source) break;  // all flow peeled
      throw std::logic_error("flow decomposition strayed off a path");
    }
    Int bottleneck = rem[path.front()];
    for (int a : path) {
      if (rem[a] < bottleneck) bottleneck = rem[a];
    }
    int u_cell = cell_of[fs.net.arc_to(path.front())];
    int w_cell = cell_of[fs.net.arc_from(path.back())];
    for (int a : path) rem[a] -= bottleneck;
    shipped[{u_cell, w_cell}] += bottleneck;
    sent_u[u_cell] += bottleneck;
    got_w[w_cell] += bottleneck;
    peeled += bottleneck;
  }
  if (peeled != flow) throw std::logic_error("flow decomposition lost value");

  // Selected nodes (complement of the canonical cut) must be covered tightly;
  // route each shortfall to a fixed neighbor. The neighbor sits in the cut, so
  // its >= constraint only gets slacker.
  for (int i = 0; i < inst.nx; ++i) {
    for (int j = 0; j < inst.ny; ++j) {
      int c = inst.cell(i, j);
      bool u_sel = fs.u_node[c] >= 0 ? reach[fs.u_node[c]] != 0 : u_cap[c] > 0;
      if (u_sel && u_cap[c] > 0) {
        Int deficit = u_cap[c] - sent_u[c];
        if (deficit > 0) {
          if (!inst.u_has_edge(i, j)) continue;  // vacuous constraint
          int wi = inst.strict ? i + 1 : i;
          int wc = inst.cell(wi, 0);
          shipped[{c, wc}] += deficit;
        }
      }
      bool w_sel = fs.w_node[c] >= 0 ? !reach[fs.w_node[c]] : w_cap[c] > 0;
      if (w_sel && w_cap[c] > 0) {
        Int deficit = w_cap[c] - got_w[c];
        if (deficit > 0) {
          if (!inst.w_has_edge(i, j)) continue;
          int uj = inst.strict ? j + 1 : j;
          int uc = inst.cell(0, uj);
          shipped[{uc, c}] += deficit;
        }
      }
    }
  }

  for (const auto& [edge, amount] : shipped) {
    if (amount > 0) plan.flow[edge] = Rat(amount) / Rat(denom);
  }
  return plan;
}

DualityReport check_duality(const ConflictInstance& inst, const IndependentSetSolution& sol,
                            const TransshipmentPlan& plan) {
  inst.validate();
  DualityReport report;
  report.primal = sol.objective;
  report.dual = plan.cost();
  report.isolated_weight = inst.isolated_weight();

  // Independence: any selected w must have no selected u weakly (resp.
  // strictly) to its northwest. One sweep builds the quadrant indicator.
  const int cells = inst.cells();
  std::vector<char> nw(cells, 0);
  for (int i = 0; i < inst.nx; ++i) {
    for (int j = inst.ny - 1; j >= 0; --j) {
      char v = sol.u_selected[inst.cell(i, j)];
      if (i > 0) v |= nw[inst.cell(i - 1, j)];
      if (j + 1 < inst.ny) v |= nw[inst.cell(i, j + 1)];
      nw[inst.cell(i, j)] = v;
    }
  }
  report.primal_independent = true;
  for (int i = 0; i < inst.nx && report.primal_independent; ++i) {
    for (int j = 0; j < inst.ny; ++j) {
      if (!sol.w_selected[inst.cell(i, j)]) continue;
      bool conflict;
      if (inst.strict) {
        conflict = i > 0 && j + 1 < inst.ny && nw[inst.cell(i - 1, j + 1)];
      } else {
        conflict = nw[inst.cell(i, j)];
      }
      if (conflict) {
        report.primal_independent = false;
        report.detail = "selected pair conflicts at w(" + std::to_string(i) + "," +
                        std::to_string(j) + ")";
        break;
      }
    }
  }

  // Dual feasibility: y >= 0 on genuine edges, incident sums cover every
  // positive-weight node whose constraint is not vacuous.
  report.dual_feasible = true;
  std::vector<Rat> u_sum(cells, Rat(0)), w_sum(cells, Rat(0));
  for (const auto& [edge, y] : plan.flow) {
    auto [uc, wc] = edge;
    if (y < 0) {
      report.dual_feasible = false;
      report.detail = "negative flow entry";
      break;
    }
    int ui = uc / inst.ny, uj = uc % inst.ny;
    int wi = wc / inst.ny, wj = wc % inst.ny;
    if (uc < 0 || uc >= cells || wc < 0 || wc >= cells || !inst.conflicts(ui, uj, wi, wj)) {
      report.dual_feasible = false;
      report.detail = "flow entry on a non-edge";
      break;
    }
    u_sum[uc] += y;
    w_sum[wc] += y;
  }
  if (report.dual_feasible) {
    for (int i = 0; i < inst.nx && report.dual_feasible; ++i) {
      for (int j = 0; j < inst.ny; ++j) {
        int c = inst.cell(i, j);
        if (inst.u_weight[c] > 0 && inst.u_has_edge(i, j) && u_sum[c] < inst.u_weight[c]) {
          report.dual_feasible = false;
          report.detail =
              "uncovered u(" + std::to_string(i) + "," + std::to_string(j) + ")";
          break;
        }
        if (inst.w_weight[c] > 0 && inst.w_has_edge(i, j) && w_sum[c] < inst.w_weight[c]) {
          report.dual_feasible = false;
          report.detail =
              "uncovered w(" + std::to_string(i) + "," + std::to_string(j) + ")";
          break;
        }
      }
    }
  }

  report.gap = report.dual + report.isolated_weight - report.primal;
  report.pass = report.primal_independent && report.dual_feasible && report.gap == 0;
  return report;
}

}  // namespace corrauct
