#include <pybind11/pybind11.h>

#include "corrauct/json_io.hpp"

namespace py = pybind11;
using namespace corrauct;

namespace {

// The python surface speaks JSON strings; the package wraps them into dicts.

std::string solve2_json(const std::string& prior_json) {
  JointPrior prior = prior_from_json(Json::parse(prior_json));
  DiscreteSolveResult result = solve_discrete2(prior);
  TransshipmentPlan plan = extract_transshipment(result.instance);
  DualityReport cert = check_duality(result.instance, result.mwis, plan);
  return solve2_result_json(result, cert).dump();
}

std::string brute_json(const std::string& prior_json) {
  JointPrior prior = prior_from_json(Json::parse(prior_json));
  if (prior.bidders() == 2) {
    BruteForce2Result result = brute_force2(prior);
    return brute_force_json(result.mechanism, result.revenue).dump();
  }
  BruteForceNResult result = brute_force_n(prior);
  return brute_force_json(result.mechanism, result.revenue).dump();
}

std::string pairs_json(const std::string& prior_json) {
  JointPrior prior = prior_from_json(Json::parse(prior_json));
  return best_pair_json(best_pair(prior)).dump();
}

std::string continuous_json(const std::string& oracle_spec, double epsilon) {
  auto oracle = make_builtin_density(oracle_spec);
  ContinuousSolveResult result = solve_continuous(*oracle, epsilon);
  TransshipmentPlan plan = extract_transshipment(result.instance);
  DualityReport cert = check_duality(result.instance, result.mwis, plan);
  TransportWitness witness = transport_witness_continuous(plan, result.instance);
  return continuous_result_json(result, cert, witness).dump();
}

std::string verify_json(const std::string& mechanism_json, const std::string& prior_json) {
  Mechanism mech = mechanism_from_json(Json::parse(mechanism_json));
  JointPrior prior = prior_from_json(Json::parse(prior_json));
  if (prior.shape() != mech.alloc.shape) {
    throw std::invalid_argument("mechanism and prior disagree on the grid");
  }
  auto violation = verify_truthful(mech);
  Json out;
  out["pass"] = !violation.has_value();
  if (violation) out["counterexample"] = violation_json(*violation);
  return out.dump();
}

std::string certify_json(const std::string& prior_json) {
  JointPrior prior = prior_from_json(Json::parse(prior_json));
  DiscreteSolveResult result = solve_discrete2(prior);
  TransshipmentPlan plan = extract_transshipment(result.instance);
  DualityReport cert = check_duality(result.instance, result.mwis, plan);
  Json out = mwis_json(result.instance, result.mwis, plan);
  out["certificate"] = duality_json(cert);
  return out.dump();
}

std::string reduce_json(const std::string& dimacs_text) {
  Cnf cnf = parse_dimacs(dimacs_text);
  CatFormula formula = max3sat_to_catsat(cnf);
  ReductionInstance inst = catsat_to_instance(formula);
  Json out;
  out["prior"] = prior_to_json(inst.prior);
  out["sidecar"] = reduction_sidecar_json(inst);
  return out.dump();
}

std::string curve_csv_str(const std::string& prior_json, int bidder,
                          const std::vector<int>& fixed) {
  JointPrior prior = prior_from_json(Json::parse(prior_json));
  std::vector<int> point = fixed;
  point.resize(prior.bidders(), 0);
  return curve_csv(revenue_curve_discrete(prior, bidder, point));
}

}  // namespace

PYBIND11_MODULE(_corrauct, m) {
  m.doc() = "exact auctions for correlated priors (JSON-string core API)";
  m.def("solve2_json", &solve2_json, py::arg("prior_json"));
  m.def("brute_json", &brute_json, py::arg("prior_json"));
  m.def("pairs_json", &pairs_json, py::arg("prior_json"));
  m.def("continuous_json", &continuous_json, py::arg("oracle"), py::arg("epsilon"));
  m.def("verify_json", &verify_json, py::arg("mechanism_json"), py::arg("prior_json"));
  m.def("certify_json", &certify_json, py::arg("prior_json"));
  m.def("reduce_json", &reduce_json, py::arg("dimacs_text"));
  m.def("curve_csv", &curve_csv_str, py::arg("prior_json"), py::arg("bidder"), py::arg("fixed"));
}
