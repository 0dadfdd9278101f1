#include "corrauct/json_io.hpp"

#include <cstdio>
#include <sstream>

namespace corrauct {

namespace {

constexpr const char* kPriorSchema = "corrauct-prior/1";
constexpr const char* kMechanismSchema = "corrauct-mechanism/1";
constexpr const char* kResultSchema = "corrauct-result/1";

Json rat_json(const Rat& r) { return rat_str(r); }

Rat rat_from(const Json& j) {
  if (j.is_number_integer()) return Rat(j.get<long>());
  if (!j.is_string()) throw std::invalid_argument("expected a rational string");
  return parse_rat(j.get<std::string>());
}

Json values_json(const ValueGrid& grid) {
  Json values = Json::array();
  for (const auto& axis : grid.levels) {
    Json a = Json::array();
    for (const Rat& v : axis) a.push_back(rat_json(v));
    values.push_back(a);
  }
  return values;
}

ValueGrid values_from(const Json& json) {
  ValueGrid grid;
  for (const auto& axis : json) {
    std::vector<Rat> levels;
    for (const auto& v : axis) levels.push_back(rat_from(v));
    grid.levels.push_back(std::move(levels));
  }
  grid.validate();
  return grid;
}

std::string double_str(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Json prior_to_json(const JointPrior& prior) {
  Json out;
  out["schema"] = kPriorSchema;
  out["bidders"] = prior.bidders();
  out["values"] = values_json(prior.grid);
  Json pmf;
  pmf["shape"] = prior.shape();
  Json entries = Json::array();
  std::vector<int> point(prior.bidders(), 0);
  const auto shape = prior.shape();
  do {
    const Rat& m = prior.at(point);
    if (m == 0) continue;
    Json entry = Json::array();
    entry.push_back(rat_json(m));
    for (int idx : point) entry.push_back(idx);
    entries.push_back(entry);
  } while (next_point(point, shape));
  pmf["entries"] = entries;
  out["pmf"] = pmf;
  out["total_mass"] = rat_json(prior.total_mass());
  return out;
}

JointPrior prior_from_json(const Json& json) {
  JointPrior prior;
  prior.grid = values_from(json.at("values"));
  int bidders = json.at("bidders").get<int>();
  if (bidders != prior.grid.bidders()) throw std::invalid_argument("bidders/values mismatch");

  const Json& pmf = json.at("pmf");
  std::vector<int> shape = pmf.at("shape").get<std::vector<int>>();
  if (shape != prior.shape()) throw std::invalid_argument("pmf shape does not match values");
  std::size_t cells = 1;
  for (int s : shape) cells *= static_cast<std::size_t>(s);
  prior.mass.assign(cells, Rat(0));

  if (pmf.contains("dense")) {
    const Json& dense = pmf.at("dense");
    if (dense.size() != cells) throw std::invalid_argument("dense pmf has wrong length");
    for (std::size_t k = 0; k < cells; ++k) prior.mass[k] = rat_from(dense[k]);
  } else {
    for (const Json& entry : pmf.at("entries")) {
      if (entry.size() != static_cast<std::size_t>(bidders) + 1) {
        throw std::invalid_argument("pmf entry needs mass plus one index per bidder");
      }
      std::vector<int> point(bidders);
      for (int b = 0; b < bidders; ++b) point[b] = entry[b + 1].get<int>();
      prior.at(point) += rat_from(entry[0]);
    }
  }
  prior.validate();
  return prior;
}

Json mechanism_to_json(const Mechanism& mech) {
  Json out;
  out["schema"] = kMechanismSchema;
  out["bidders"] = mech.grid.bidders();
  out["values"] = values_json(mech.grid);
  out["winner"] = mech.alloc.winner;
  Json thresholds = Json::array();
  for (int b = 0; b < mech.grid.bidders(); ++b) {
    Json t = Json::array();
    for (int idx : mech.threshold_index[b]) {
      if (idx >= mech.grid.size(b)) {
        t.push_back("inf");
      } else {
        t.push_back(rat_json(mech.grid.value(b, idx)));
      }
    }
    thresholds.push_back(t);
  }
  out["thresholds"] = thresholds;
  Json payments = Json::array();
  for (const auto& per_bidder : mech.payments) {
    Json p = Json::array();
    for (const Rat& v : per_bidder) p.push_back(rat_json(v));
    payments.push_back(p);
  }
  out["payments"] = payments;
  return out;
}

Mechanism mechanism_from_json(const Json& json) {
  Mechanism mech;
  mech.grid = values_from(json.at("values"));
  mech.alloc.shape = mech.grid.shape();
  mech.alloc.winner = json.at("winner").get<std::vector<int>>();
  std::size_t cells = 1;
  for (int s : mech.alloc.shape) cells *= static_cast<std::size_t>(s);
  if (mech.alloc.winner.size() != cells) throw std::invalid_argument("winner length mismatch");

  const Json& thresholds = json.at("thresholds");
  for (int b = 0; b < mech.grid.bidders(); ++b) {
    std::vector<int> idxs;
    for (const Json& t : thresholds.at(b)) {
      if (t.is_string() && t.get<std::string>() == "inf") {
        idxs.push_back(mech.grid.size(b));
        continue;
      }
      Rat v = rat_from(t);
      int found = -1;
      for (int k = 0; k < mech.grid.size(b); ++k) {
        if (mech.grid.value(b, k) == v) {
          found = k;
          break;
        }
      }
      if (found < 0) throw std::invalid_argument("threshold value not on the grid");
      idxs.push_back(found);
    }
    if (idxs.size() != cells / static_cast<std::size_t>(mech.grid.size(b))) {
      throw std::invalid_argument("threshold table length mismatch");
    }
    mech.threshold_index.push_back(std::move(idxs));
  }
  const Json& payments = json.at("payments");
  for (int b = 0; b < mech.grid.bidders(); ++b) {
    std::vector<Rat> p;
    for (const Json& v : payments.at(b)) p.push_back(rat_from(v));
    if (p.size() != cells) throw std::invalid_argument("payment table length mismatch");
    mech.payments.push_back(std::move(p));
  }
  return mech;
}

Json duality_json(const DualityReport& report) {
  Json out;
  out["primal"] = rat_json(report.primal);
  out["dual"] = rat_json(report.dual);
  out["isolated"] = rat_json(report.isolated_weight);
  out["gap"] = rat_json(report.gap);
  out["primal_independent"] = report.primal_independent;
  out["dual_feasible"] = report.dual_feasible;
  out["pass"] = report.pass;
  if (!report.detail.empty()) out["detail"] = report.detail;
  return out;
}

Json violation_json(const TruthfulnessViolation& violation) {
  Json out;
  switch (violation.kind) {
    case TruthfulnessViolation::Kind::IC: out["kind"] = "IC"; break;
    case TruthfulnessViolation::Kind::IR: out["kind"] = "IR"; break;
    case TruthfulnessViolation::Kind::NPT: out["kind"] = "NPT"; break;
  }
  out["bidder"] = violation.bidder;
  out["point"] = violation.point;
  if (violation.deviation >= 0) out["deviation"] = violation.deviation;
  out["message"] = violation.describe();
  return out;
}

namespace {

Json pair_json(const AllocationPair& pair) {
  Json alpha = Json::array(), beta = Json::array();
  for (int j = 0; j < pair.ny(); ++j) {
    if (pair.alpha[j] >= pair.nx()) {
      alpha.push_back(nullptr);
    } else {
      alpha.push_back(pair.alpha[j]);
    }
  }
  for (int i = 0; i < pair.nx(); ++i) {
    if (pair.beta[i] >= pair.ny()) {
      beta.push_back(nullptr);
    } else {
      beta.push_back(pair.beta[i]);
    }
  }
  Json out;
  out["alpha"] = alpha;
  out["beta"] = beta;
  return out;
}

}  // namespace

Json solve2_result_json(const DiscreteSolveResult& result, const DualityReport& cert) {
  Json out;
  out["schema"] = kResultSchema;
  out["command"] = "solve2";
  out["revenue"] = rat_json(result.revenue);
  Json pj = pair_json(result.pair);
  out["alpha"] = pj["alpha"];
  out["beta"] = pj["beta"];
  out["mechanism"] = mechanism_to_json(result.mechanism);
  out["certificate"] = duality_json(cert);
  return out;
}

Json continuous_result_json(const ContinuousSolveResult& result, const DualityReport& cert,
                            const TransportWitness& witness) {
  Json out;
  out["schema"] = kResultSchema;
  out["command"] = "continuous";
  out["resolution"] = result.resolution;
  out["revenue"] = rat_json(result.revenue);
  out["revenue_approx"] = rat_to_double(result.revenue);
  Json pj = pair_json(result.pair);
  out["alpha"] = pj["alpha"];
  out["beta"] = pj["beta"];
  out["mechanism"] = mechanism_to_json(result.mechanism);
  Json cert_json = duality_json(cert);
  Json budget;
  budget["epsilon_request"] = result.budget.epsilon_request;
  budget["epsilon_prime"] = result.budget.epsilon_prime;
  budget["resolution"] = result.budget.resolution;
  budget["boundary_term"] = result.budget.boundary_term;
  budget["quadrature_term"] = result.budget.quadrature_term;
  budget["overlap_term"] = result.budget.overlap_term;
  budget["proper_term"] = result.budget.proper_term;
  budget["reported_bound"] = result.budget.reported_bound;
  budget["true_revenue_bound"] = result.budget.true_revenue_bound;
  cert_json["epsilon_budget"] = budget;
  cert_json["witness_feasible"] = witness.feasible;
  cert_json["witness_cost"] = rat_json(witness.cost);
  if (!witness.detail.empty()) cert_json["witness_detail"] = witness.detail;
  out["certificate"] = cert_json;
  return out;
}

Json best_pair_json(const BestPairResult& result) {
  Json out;
  out["schema"] = kResultSchema;
  out["command"] = "pairs";
  out["pair"] = Json::array({result.bidder_a, result.bidder_b});
  out["revenue"] = rat_json(result.revenue);
  Json table = Json::array();
  const int n = static_cast<int>(result.pair_revenue.size());
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      Json row;
      row["pair"] = Json::array({a, b});
      row["revenue"] = rat_json(result.pair_revenue[a][b]);
      table.push_back(row);
    }
  }
  out["pair_revenues"] = table;
  out["mechanism"] = mechanism_to_json(result.mechanism);
  return out;
}

Json brute_force_json(const Mechanism& mech, const Rat& revenue) {
  Json out;
  out["schema"] = kResultSchema;
  out["command"] = "brute";
  out["revenue"] = rat_json(revenue);
  out["mechanism"] = mechanism_to_json(mech);
  return out;
}

Json mwis_json(const ConflictInstance& inst, const IndependentSetSolution& sol,
               const TransshipmentPlan& plan) {
  Json out;
  out["nx"] = inst.nx;
  out["ny"] = inst.ny;
  out["strict"] = inst.strict;
  Json uw = Json::array(), ww = Json::array();
  for (const Rat& w : inst.u_weight) uw.push_back(rat_json(w));
  for (const Rat& w : inst.w_weight) ww.push_back(rat_json(w));
  out["u_weight"] = uw;
  out["w_weight"] = ww;
  Json selu = Json::array(), selw = Json::array();
  for (int c = 0; c < inst.cells(); ++c) {
    if (sol.u_selected[c]) selu.push_back(Json::array({c / inst.ny, c % inst.ny}));
    if (sol.w_selected[c]) selw.push_back(Json::array({c / inst.ny, c % inst.ny}));
  }
  out["selected_u"] = selu;
  out["selected_w"] = selw;
  out["objective"] = rat_json(sol.objective);
  out["cut_value"] = rat_json(sol.cut_value);
  out["cardinality"] = sol.cardinality;
  Json flows = Json::array();
  for (const auto& [edge, y] : plan.flow) {
    Json f;
    f["u"] = Json::array({edge.first / inst.ny, edge.first % inst.ny});
    f["w"] = Json::array({edge.second / inst.ny, edge.second % inst.ny});
    f["y"] = rat_json(y);
    flows.push_back(f);
  }
  out["plan"] = flows;
  out["plan_cost"] = rat_json(plan.cost());
  return out;
}

Json reduction_sidecar_json(const ReductionInstance& inst) {
  Json out;
  out["schema"] = "corrauct-reduction/1";
  out["indexing"] = "1-based";
  Json formula;
  formula["n_x"] = inst.formula.n_x;
  formula["n_y"] = inst.formula.n_y;
  formula["n_z"] = inst.formula.n_z;
  formula["m"] = inst.formula.m();
  formula["literal_count"] = inst.formula.literal_count();
  formula["n_hat"] = inst.formula.n_hat();
  Json clauses = Json::array();
  for (const CatClause& clause : inst.formula.clauses) {
    Json c = Json::array();
    for (const CatLiteral& lit : clause.literals) {
      Json l;
      l["category"] = std::string(1, "xyz"[lit.category]);
      l["variable"] = lit.variable;
      l["positive"] = lit.positive;
      c.push_back(l);
    }
    clauses.push_back(c);
  }
  formula["clauses"] = clauses;
  out["formula"] = formula;

  out["grid_side"] = inst.side;
  Json h = Json::array();
  for (int i = 1; i <= inst.side; ++i) h.push_back(rat_json(inst.h[i]));
  out["h"] = h;
  Json constants;
  constants["c1"] = rat_json(inst.c1);
  constants["c2"] = rat_json(inst.c2);
  constants["c3"] = rat_json(inst.c3);
  constants["c4"] = rat_json(inst.c4);
  constants["c5"] = rat_json(inst.c5);
  out["constants"] = constants;
  out["normalization"] = rat_json(inst.normalization);
  out["scaffold_profit"] = rat_json(inst.scaffold_profit);
  out["cost_satisfiable"] = rat_json(inst.predicted_profit(inst.formula.m()));
  out["cost_per_satisfied_clause"] = rat_json(inst.h[1] * inst.c2);

  Json masses = Json::array();
  for (const PlacedMass& pm : inst.masses) {
    Json entry;
    entry["point"] = Json::array({pm.point[0], pm.point[1], pm.point[2]});
    entry["family"] = "c" + std::to_string(pm.family);
    masses.push_back(entry);
  }
  out["masses"] = masses;

  Json segments = Json::array();
  for (const IntendedSegment& is : inst.intended) {
    Json s;
    const char* role = nullptr;
    switch (is.tag.role) {
      case SegmentRole::PositiveLiteral: role = "positive-literal"; break;
      case SegmentRole::NegativeLiteral: role = "negative-literal"; break;
      case SegmentRole::DummyPositive: role = "dummy-positive"; break;
      case SegmentRole::DummyNegative: role = "dummy-negative"; break;
      case SegmentRole::Clause: role = "clause"; break;
      case SegmentRole::Scaffold: role = "scaffold"; break;
    }
    s["role"] = role;
    s["axis"] = std::string(1, "xyz"[is.segment.axis]);
    s["apex"] = Json::array({is.segment.apex[0], is.segment.apex[1], is.segment.apex[2]});
    s["weight"] = rat_json(is.segment.weight);
    if (is.tag.clause >= 0) s["clause"] = is.tag.clause;
    if (is.tag.variable >= 0) {
      s["category"] = std::string(1, "xyz"[is.tag.category]);
      s["variable"] = is.tag.variable;
    }
    segments.push_back(s);
  }
  out["segments"] = segments;
  return out;
}

std::string curve_csv(const std::vector<CurvePoint>& curve) {
  std::ostringstream out;
  out << "q,R,Rprime,Rhat\n";
  for (const CurvePoint& p : curve) {
    out << double_str(rat_to_double(p.q)) << "," << double_str(rat_to_double(p.revenue)) << ","
        << double_str(rat_to_double(p.skyline)) << "," << double_str(rat_to_double(p.envelope))
        << "\n";
  }
  return out.str();
}

std::string curve_csv(const std::vector<CurvePointD>& curve) {
  std::ostringstream out;
  out << "q,R,Rprime,Rhat\n";
  for (const CurvePointD& p : curve) {
    out << double_str(p.q) << "," << double_str(p.revenue) << "," << double_str(p.skyline) << ","
        << double_str(p.envelope) << "\n";
  }
  return out.str();
}

}  // namespace corrauct
