#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "corrauct/json_io.hpp"

namespace {

using namespace corrauct;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << "\n";
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << text;
  }
}

void emit_json(const Json& json, const std::string& out_path) {
  emit(json.dump(2), out_path);
}

JointPrior load_prior(const std::string& path) {
  return prior_from_json(Json::parse(read_file(path)));
}

int run_solve2(const std::string& prior_path, const std::string& out_path) {
  JointPrior prior = load_prior(prior_path);
  DiscreteSolveResult result = solve_discrete2(prior);
  TransshipmentPlan plan = extract_transshipment(result.instance);
  DualityReport cert = check_duality(result.instance, result.mwis, plan);
  emit_json(solve2_result_json(result, cert), out_path);
  return 0;
}

int run_brute(const std::string& prior_path, const std::string& out_path) {
  JointPrior prior = load_prior(prior_path);
  if (prior.bidders() == 2) {
    BruteForce2Result result = brute_force2(prior);
    emit_json(brute_force_json(result.mechanism, result.revenue), out_path);
  } else {
    BruteForceNResult result = brute_force_n(prior);
    emit_json(brute_force_json(result.mechanism, result.revenue), out_path);
  }
  return 0;
}

int run_continuous(const std::string& oracle_spec, double epsilon, double lipschitz_override,
                   const std::string& out_path) {
  std::unique_ptr<DensityOracle> oracle = make_builtin_density(oracle_spec);

  // Optional camouflage of the documented constant, for experiments.
  struct Override final : DensityOracle {
    const DensityOracle* base;
    double lambda;
    double density(double x, double y) const override { return base->density(x, y); }
    double lipschitz() const override { return lambda; }
    double min_density() const override { return base->min_density(); }
    std::string name() const override { return base->name(); }
  };
  Override wrapped;
  const DensityOracle* use = oracle.get();
  if (lipschitz_override >= 0) {
    wrapped.base = oracle.get();
    wrapped.lambda = lipschitz_override;
    use = &wrapped;
  }

  ContinuousSolveResult result = solve_continuous(*use, epsilon);
  TransshipmentPlan plan = extract_transshipment(result.instance);
  DualityReport cert = check_duality(result.instance, result.mwis, plan);
  TransportWitness witness = transport_witness_continuous(plan, result.instance);
  emit_json(continuous_result_json(result, cert, witness), out_path);
  return 0;
}

int run_pairs(const std::string& prior_path, const std::string& out_path) {
  JointPrior prior = load_prior(prior_path);
  BestPairResult result = best_pair(prior);
  emit_json(best_pair_json(result), out_path);
  return 0;
}

int run_reduce(const std::string& cnf_path, const std::string& out_path,
               const std::string& sidecar_path) {
  Cnf cnf = parse_dimacs(read_file(cnf_path));
  CatFormula formula = max3sat_to_catsat(cnf);
  ReductionInstance inst = catsat_to_instance(formula);
  emit_json(prior_to_json(inst.prior), out_path);
  if (!sidecar_path.empty()) {
    emit_json(reduction_sidecar_json(inst), sidecar_path);
  }
  return 0;
}

int run_verify(const std::string& mech_path, const std::string& prior_path,
               const std::string& out_path) {
  Mechanism mech = mechanism_from_json(Json::parse(read_file(mech_path)));
  JointPrior prior = load_prior(prior_path);
  if (prior.shape() != mech.alloc.shape) {
    throw std::invalid_argument("mechanism and prior disagree on the grid");
  }
  auto violation = verify_truthful(mech);
  Json out;
  out["schema"] = "corrauct-result/1";
  out["command"] = "verify";
  out["pass"] = !violation.has_value();
  if (violation) out["counterexample"] = violation_json(*violation);
  emit_json(out, out_path);
  return violation ? 2 : 0;
}

int run_curve(const std::string& prior_path, int bidder, const std::string& fix,
              const std::string& out_path) {
  JointPrior prior = load_prior(prior_path);
  std::vector<int> point(prior.bidders(), 0);
  std::istringstream in(fix);
  std::string tok;
  std::size_t pos = 0;
  while (std::getline(in, tok, ',')) {
    if (pos >= point.size()) throw std::invalid_argument("too many --fix coordinates");
    point[pos++] = std::stoi(tok);
  }
  // the bidder's own slot in --fix is ignored; every other coordinate is used
  auto curve = revenue_curve_discrete(prior, bidder, point);
  emit(curve_csv(curve), out_path);
  return 0;
}

int run_certify(const std::string& prior_path, const std::string& out_path) {
  JointPrior prior = load_prior(prior_path);
  DiscreteSolveResult result = solve_discrete2(prior);
  TransshipmentPlan plan = extract_transshipment(result.instance);
  DualityReport cert = check_duality(result.instance, result.mwis, plan);
  Json out = mwis_json(result.instance, result.mwis, plan);
  out["certificate"] = duality_json(cert);
  emit_json(out, out_path);
  return cert.pass ? 0 : 2;
}

int run_gen(int bidders, const std::string& levels_arg, unsigned long seed, long denominator,
            bool random_values, const std::string& out_path) {
  std::vector<int> levels;
  std::istringstream in(levels_arg);
  std::string tok;
  while (std::getline(in, tok, ',')) levels.push_back(std::stoi(tok));
  if (static_cast<int>(levels.size()) == 1) levels.assign(bidders, levels[0]);
  if (static_cast<int>(levels.size()) != bidders) {
    throw std::invalid_argument("--levels needs one count or one per bidder");
  }
  std::mt19937_64 rng(seed);
  JointPrior prior;
  prior.grid.levels.resize(bidders);
  for (int b = 0; b < bidders; ++b) {
    if (random_values) {
      std::uniform_int_distribution<int> step(1, 5);
      int level = 0;
      for (int k = 0; k < levels[b]; ++k) {
        level += step(rng);
        prior.grid.levels[b].push_back(Rat(level) / 2);
      }
    } else {
      for (int k = 0; k < levels[b]; ++k) prior.grid.levels[b].push_back(k + 1);
    }
  }
  std::size_t cells = 1;
  for (int b = 0; b < bidders; ++b) cells *= static_cast<std::size_t>(levels[b]);
  std::uniform_int_distribution<long> num(0, denominator);
  prior.mass.assign(cells, Rat(0));
  Rat total = 0;
  for (std::size_t k = 0; k < cells; ++k) {
    prior.mass[k] = Rat(num(rng)) / Rat(denominator);
    total += prior.mass[k];
  }
  if (total == 0) prior.mass[0] = 1;
  prior.validate();
  emit_json(prior_to_json(prior), out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"optimal correlated-prior auctions: exact two-bidder solver, continuous "
               "approximation, pair approximation, and hardness instance generation"};
  app.require_subcommand(1);

  std::string prior_path, mech_path, cnf_path, out_path, sidecar_path, fix, oracle_spec, levels;
  double epsilon = 0.05, lipschitz = -1;
  int bidder = 0, bidders = 2;
  unsigned long seed = 1;
  long denominator = 64;
  bool random_values = false;

  auto* solve2 = app.add_subcommand("solve2", "optimal two-bidder auction for a discrete prior");
  solve2->add_option("prior", prior_path)->required();
  solve2->add_option("--out", out_path);

  auto* brute = app.add_subcommand("brute", "exhaustive optimum (oracle; small grids only)");
  brute->add_option("prior", prior_path)->required();
  brute->add_option("--out", out_path);

  auto* cont = app.add_subcommand("continuous", "additively approximate auction for a density");
  cont->add_option("--oracle", oracle_spec)->required();
  cont->add_option("--epsilon", epsilon)->required();
  cont->add_option("--lipschitz", lipschitz, "override the oracle's documented constant");
  cont->add_option("--out", out_path);

  auto* pairs = app.add_subcommand("pairs", "best two-bidder auction among all pairs");
  pairs->add_option("prior", prior_path)->required();
  pairs->add_option("--out", out_path);

  auto* reduce = app.add_subcommand("reduce", "3-CNF to three-bidder hardness instance");
  reduce->add_option("cnf", cnf_path)->required();
  reduce->add_option("--out", out_path);
  reduce->add_option("--sidecar", sidecar_path);

  auto* verify = app.add_subcommand("verify", "scan a mechanism for IC/IR/NPT violations");
  verify->add_option("mechanism", mech_path)->required();
  verify->add_option("prior", prior_path)->required();
  verify->add_option("--out", out_path);

  auto* curve = app.add_subcommand("curve", "revenue curve CSV for one bidder");
  curve->add_option("prior", prior_path)->required();
  curve->add_option("--bidder", bidder)->required();
  curve->add_option("--fix", fix, "other bidders' level indices, comma separated")->required();
  curve->add_option("--out", out_path);

  auto* certify = app.add_subcommand("certify", "solve and emit the primal/dual certificate");
  certify->add_option("prior", prior_path)->required();
  certify->add_option("--out", out_path);

  auto* gen = app.add_subcommand("gen", "random test prior");
  gen->add_option("--bidders", bidders);
  gen->add_option("--levels", levels)->required();
  gen->add_option("--seed", seed);
  gen->add_option("--denominator", denominator);
  gen->add_flag("--random-values", random_values);
  gen->add_option("--out", out_path);

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve2->parsed()) return run_solve2(prior_path, out_path);
    if (brute->parsed()) return run_brute(prior_path, out_path);
    if (cont->parsed()) return run_continuous(oracle_spec, epsilon, lipschitz, out_path);
    if (pairs->parsed()) return run_pairs(prior_path, out_path);
    if (reduce->parsed()) return run_reduce(cnf_path, out_path, sidecar_path);
    if (verify->parsed()) return run_verify(mech_path, prior_path, out_path);
    if (curve->parsed()) return run_curve(prior_path, bidder, fix, out_path);
    if (certify->parsed()) return run_certify(prior_path, out_path);
    if (gen->parsed()) return run_gen(bidders, levels, seed, denominator, random_values, out_path);
  } catch (const std::exception& err) {
    corrauct::Json ej;
    ej["error"] = err.what();
    std::cerr << ej.dump(2) << "\n";
    return 1;
  }
  return 1;
}
