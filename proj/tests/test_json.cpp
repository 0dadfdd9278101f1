#include <doctest.h>

#include "corrauct/json_io.hpp"

using namespace corrauct;

TEST_CASE("rational parsing and formatting") {
  CHECK(rat_str(parse_rat("3/16")) == "3/16");
  CHECK(rat_str(parse_rat("6/4")) == "3/2");
  CHECK(rat_str(parse_rat("7")) == "7/1");
  CHECK(rat_str(Rat(0)) == "0/1");
  CHECK_THROWS_AS(parse_rat("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rat("zebra"), std::invalid_argument);
}

TEST_CASE("dyadic quantization stays within half an ulp of the target grid") {
  double x = 0.1234567890123;
  Rat q = quantize_dyadic(x, 48);
  Rat err = q - rat_from_double(x);
  if (err < 0) err = -err;
  CHECK(err <= Rat(1, Int(1) << 48));
  CHECK(quantize_dyadic(0.5, 48) == Rat(1, 2));
}

TEST_CASE("prior json round trip, sparse and dense") {
  JointPrior p = uniform_prior({{1, 2}, {1, 2}});
  p.mass[1] = Rat(3, 16);
  Json j = prior_to_json(p);
  JointPrior back = prior_from_json(j);
  CHECK(back.mass == p.mass);
  CHECK(back.grid.levels == p.grid.levels);

  Json dense = j;
  dense["pmf"].erase("entries");
  Json flat = Json::array();
  for (const Rat& m : p.mass) flat.push_back(rat_str(m));
  dense["pmf"]["dense"] = flat;
  CHECK(prior_from_json(dense).mass == p.mass);

  // sparse entries accumulate
  Json doubled = j;
  doubled["pmf"]["entries"] = Json::array({Json::array({"1/8", 0, 0}),
                                           Json::array({"1/8", 0, 0})});
  CHECK(prior_from_json(doubled).mass[0] == Rat(1, 4));
}

TEST_CASE("mechanism json round trips losslessly") {
  JointPrior p = uniform_prior({{1, 2}, {1, 2}});
  AllocationPair pair;
  pair.alpha = {1, 1};
  pair.beta = {1, 2};
  Mechanism mech = thresholds_and_payments(pair_to_matrix(pair), p.grid);
  Json j = mechanism_to_json(mech);
  Mechanism back = mechanism_from_json(j);
  CHECK(back.alloc.winner == mech.alloc.winner);
  CHECK(back.threshold_index == mech.threshold_index);
  CHECK(back.payments == mech.payments);
  CHECK(mechanism_to_json(back) == j);
}

TEST_CASE("result json carries the certificate") {
  JointPrior p = uniform_prior({{1, 2}, {1, 2}});
  DiscreteSolveResult result = solve_discrete2(p);
  TransshipmentPlan plan = extract_transshipment(result.instance);
  DualityReport cert = check_duality(result.instance, result.mwis, plan);
  Json j = solve2_result_json(result, cert);
  CHECK(j["revenue"] == "3/2");
  CHECK(j["certificate"]["gap"] == "0/1");
  CHECK(j["certificate"]["primal"] == j["certificate"]["dual"]);
  // identical inputs give byte-identical output
  CHECK(j.dump() == solve2_result_json(result, cert).dump());
}

TEST_CASE("curve csv has the expected header and rows") {
  JointPrior p = uniform_prior({{1, 2}, {1, 2}});
  auto curve = revenue_curve_discrete(p, 0, std::vector<int>{0, 0});
  std::string csv = curve_csv(curve);
  CHECK(csv.rfind("q,R,Rprime,Rhat\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}

TEST_CASE("reduction sidecar lists the formula and the cost prediction") {
  CatFormula f;
  f.n_x = f.n_y = f.n_z = 1;
  f.clauses = {{{{0, 1, true}, {1, 1, true}, {2, 1, true}}}};
  ReductionInstance inst = catsat_to_instance(f);
  Json j = reduction_sidecar_json(inst);
  CHECK(j["grid_side"] == 7);
  CHECK(j["cost_satisfiable"] == "251/2");
  CHECK(j["formula"]["m"] == 1);
  CHECK(j["segments"].size() == inst.intended.size());
}
