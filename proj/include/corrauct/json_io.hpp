#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "corrauct/hardness.hpp"
#include "corrauct/mechanism.hpp"
#include "corrauct/multi.hpp"
#include "corrauct/mwis.hpp"
#include "corrauct/revenue_curve.hpp"
#include "corrauct/solve2.hpp"

namespace corrauct {

using Json = nlohmann::ordered_json;

/// {"schema":..., "bidders":n, "values":[["p/q",...],...],
///  "pmf":{"shape":[...], "entries":[["p/q", i1..in],...]}}
/// entries may alternatively be a dense row-major list under "dense".
Json prior_to_json(const JointPrior& prior);
JointPrior prior_from_json(const Json& json);

Json mechanism_to_json(const Mechanism& mech);
Mechanism mechanism_from_json(const Json& json);

Json duality_json(const DualityReport& report);
Json violation_json(const TruthfulnessViolation& violation);

Json solve2_result_json(const DiscreteSolveResult& result, const DualityReport& cert);
Json continuous_result_json(const ContinuousSolveResult& result, const DualityReport& cert,
                            const TransportWitness& witness);
Json best_pair_json(const BestPairResult& result);
Json brute_force_json(const Mechanism& mech, const Rat& revenue);

/// Debug dump of a conflict instance and its solution (golden tests).
Json mwis_json(const ConflictInstance& inst, const IndependentSetSolution& sol,
               const TransshipmentPlan& plan);

/// Bookkeeping sidecar for generated reduction instances (1-based points).
Json reduction_sidecar_json(const ReductionInstance& inst);

std::string curve_csv(const std::vector<CurvePoint>& curve);
std::string curve_csv(const std::vector<CurvePointD>& curve);

}  // namespace corrauct
