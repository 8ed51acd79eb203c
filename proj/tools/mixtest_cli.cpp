#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "mixtest/errors.hpp"
#include "mixtest/experiments.hpp"
#include "mixtest/oracles.hpp"
#include "mixtest/survival.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::vector<double> parse_double_list(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stod(item));
  }
  return out;
}

std::vector<std::size_t> parse_size_list(const std::string& csv) {
  std::vector<std::size_t> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(static_cast<std::size_t>(std::stoull(item)));
  }
  return out;
}

mixtest::ChainConfig make_chain(long iterations, std::uint64_t seed) {
  mixtest::ChainConfig chain;
  chain.iterations = iterations;
  chain.burn_in = iterations / 10;
  chain.seed = seed;
  return chain;
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Bayesian model comparison by encompassing-mixture estimation"};
  app.require_subcommand(1);

  // simulate ---------------------------------------------------------------
  auto* sim = app.add_subcommand("simulate", "Simulate a dataset and write it as CSV");
  std::string sim_family = "poisson";
  std::vector<double> sim_params{4.0};
  std::size_t sim_n = 100;
  std::uint64_t sim_seed = 0;
  std::string sim_out = "data.csv";
  std::string sim_kind = "iid";
  double sim_censor_rate = 0.0;
  sim->add_option("--family", sim_family, "family name (iid/survival simulation)");
  sim->add_option("--params", sim_params, "family parameters");
  sim->add_option("--n", sim_n, "sample size");
  sim->add_option("--seed", sim_seed, "random seed");
  sim->add_option("--out", sim_out, "output CSV path");
  sim->add_option("--kind", sim_kind, "iid | survival | regression-design | binary-logit | binary-probit");
  sim->add_option("--censor-rate", sim_censor_rate, "administrative censoring rate (survival)");

  // oracle -----------------------------------------------------------------
  auto* oracle = app.add_subcommand("oracle", "Exact Bayes factor for a dataset");
  std::string oracle_pair = "poisson-geometric";
  std::string oracle_data;
  oracle->add_option("--pair", oracle_pair, "pair name")->required();
  oracle->add_option("--data", oracle_data, "dataset CSV (iid schema)")->required();

  // run --------------------------------------------------------------------
  auto* run = app.add_subcommand("run", "Run an experiment described by a JSON config");
  std::string run_config;
  run->add_option("--config", run_config, "experiment config JSON")->required();

  // sweep ------------------------------------------------------------------
  auto* sweep = app.add_subcommand("sweep", "Replica sweep over (a0, n) grids");
  std::string sweep_pair = "poisson-geometric";
  std::string sweep_family = "poisson";
  std::vector<double> sweep_params{4.0};
  std::string sweep_a0 = "0.5";
  std::string sweep_n = "100,1000";
  std::size_t sweep_replicas = 5;
  std::uint64_t sweep_seed = 0;
  long sweep_iterations = 10000;
  std::string sweep_out = ".";
  bool sweep_full_scale = false;
  sweep->add_option("--pair", sweep_pair, "pair name");
  sweep->add_option("--family", sweep_family, "simulation family");
  sweep->add_option("--params", sweep_params, "simulation parameters");
  sweep->add_option("--a0", sweep_a0, "comma-separated a0 grid");
  sweep->add_option("--n", sweep_n, "comma-separated sample-size grid");
  sweep->add_option("--replicas", sweep_replicas, "replicas per cell");
  sweep->add_option("--seed", sweep_seed, "base seed");
  sweep->add_option("--iterations", sweep_iterations, "chain iterations");
  sweep->add_option("--out", sweep_out, "output directory");
  sweep->add_flag("--full-scale", sweep_full_scale, "raise replicas to the full 100-replica design");

  // consistency ------------------------------------------------------------
  auto* cons = app.add_subcommand("consistency", "Empirical convergence-rate table");
  std::string cons_pair = "normal-variance";
  int cons_true = 0;
  std::vector<double> cons_globals{0.0};
  std::string cons_n = "50,100,500";
  std::size_t cons_replicas = 5;
  double cons_a0 = 0.5;
  std::uint64_t cons_seed = 0;
  long cons_iterations = 10000;
  std::string cons_out;
  cons->add_option("--pair", cons_pair, "pair name");
  cons->add_option("--true-component", cons_true, "data-generating component (0 or 1)");
  cons->add_option("--true-globals", cons_globals, "global parameter values for simulation");
  cons->add_option("--n", cons_n, "comma-separated sample sizes");
  cons->add_option("--replicas", cons_replicas, "replicas per n");
  cons->add_option("--a0", cons_a0, "weight prior hyperparameter");
  cons->add_option("--seed", cons_seed, "base seed");
  cons->add_option("--iterations", cons_iterations, "chain iterations");
  cons->add_option("--out", cons_out, "output CSV (stdout when omitted)");

  // survival ---------------------------------------------------------------
  auto* surv = app.add_subcommand("survival", "Three-component survival model test");
  std::string surv_data;
  std::string surv_simulate;
  std::size_t surv_n = 1000;
  double surv_censor = 0.0;
  double surv_a0 = 1.0;
  long surv_iterations = 10000;
  std::uint64_t surv_seed = 0;
  std::string surv_out = ".";
  surv->add_option("--data", surv_data, "survival CSV (time,censored)");
  surv->add_option("--simulate", surv_simulate, "simulate from family: normal|gumbel|logistic");
  surv->add_option("--n", surv_n, "simulated sample size");
  surv->add_option("--censor-rate", surv_censor, "simulated censoring rate");
  surv->add_option("--a0", surv_a0, "Dirichlet weight prior hyperparameter");
  surv->add_option("--iterations", surv_iterations, "chain iterations");
  surv->add_option("--seed", surv_seed, "random seed");
  surv->add_option("--out", surv_out, "output directory");

  CLI11_PARSE(app, argc, argv);

  using namespace mixtest;

  if (*sim) {
    if (sim_kind == "iid") {
      SimSource src{family_from_name(sim_family), Params{sim_params}, sim_n};
      write_dataset_csv(simulate_dataset(src, sim_seed), sim_out, DataSchema::Iid);
    } else if (sim_kind == "survival") {
      const Dataset data = simulate_survival_cohort(family_from_name(sim_family), sim_n,
                                                    sim_censor_rate, sim_params.size() > 0
                                                        ? sim_params[0] : 0.0,
                                                    sim_params.size() > 1 ? sim_params[1] : 1.0,
                                                    sim_seed);
      write_dataset_csv(data, sim_out, DataSchema::Survival);
    } else if (sim_kind == "regression-design") {
      Eigen::VectorXd beta(4);
      beta << 2.0, -3.0, 0.0, 0.0;
      if (sim_params.size() == 4) {
        for (int i = 0; i < 4; ++i) beta[i] = sim_params[static_cast<std::size_t>(i)];
      }
      write_dataset_csv(simulate_regression_dataset(sim_n, beta, 1.0, sim_seed), sim_out,
                        DataSchema::BinaryRegression);
    } else if (sim_kind == "binary-logit" || sim_kind == "binary-probit") {
      Eigen::VectorXd beta(2);
      beta << (sim_params.size() > 0 ? sim_params[0] : 0.0),
          (sim_params.size() > 1 ? sim_params[1] : 1.0);
      const Link link = sim_kind == "binary-logit" ? Link::Logit : Link::Probit;
      write_dataset_csv(simulate_binary_dataset(link, sim_n, beta, sim_seed), sim_out,
                        DataSchema::BinaryRegression);
    } else {
      throw ConfigError("unknown simulation kind: " + sim_kind);
    }
    std::cout << sim_out << "\n";
    return 0;
  }

  if (*oracle) {
    const Dataset data = ingest_csv(oracle_data, DataSchema::Iid);
    const PairKind kind = pair_from_name(oracle_pair);
    BayesFactorResult result{};
    switch (kind) {
      case PairKind::PoissonVsGeometric: result = bf_poisson_geometric(data.y); break;
      case PairKind::NormalVar1VsVar2: result = bf_normal_var(data.y); break;
      case PairKind::NormalVsLaplace: result = bf_normal_laplace(data.y); break;
      case PairKind::PointNullMean:
        throw UnsupportedError("no closed-form Bayes factor for the point-null pair");
    }
    json out = {{"pair", oracle_pair},
                {"n", data.size()},
                {"log_bf", result.log_bf},
                {"posterior_prob_m1", result.posterior_prob_m1}};
    std::cout << out.dump(2) << "\n";
    return 0;
  }

  if (*run) {
    const ExperimentConfig config = ExperimentConfig::load(run_config);
    const ExperimentResult result = run_experiment(config);
    std::cout << result.csv_path << "\n" << result.json_path << "\n";
    return 0;
  }

  if (*sweep) {
    ExperimentConfig config;
    config.test = sweep_pair;
    config.simulate = SimSource{family_from_name(sweep_family), Params{sweep_params}, 0};
    config.a0_grid = parse_double_list(sweep_a0);
    config.n_grid = parse_size_list(sweep_n);
    config.replicas = sweep_replicas;
    config.chain = make_chain(sweep_iterations, sweep_seed);
    config.full_scale = sweep_full_scale;
    config.outputs = sweep_out;
    const ExperimentResult result = run_experiment(config);
    std::cout << result.csv_path << "\n" << result.json_path << "\n";
    return 0;
  }

  if (*cons) {
    const auto rows = consistency_harness(pair_from_name(cons_pair), cons_true, cons_globals,
                                          parse_size_list(cons_n), cons_replicas, cons_a0,
                                          make_chain(cons_iterations, cons_seed));
    const std::string csv = consistency_rows_to_csv(rows);
    if (cons_out.empty()) {
      std::cout << csv;
    } else {
      write_text_atomic(cons_out, csv);
      std::cout << cons_out << "\n";
    }
    return 0;
  }

  if (*surv) {
    Dataset data;
    if (!surv_data.empty()) {
      data = ingest_csv(surv_data, DataSchema::Survival);
    } else if (!surv_simulate.empty()) {
      data = simulate_survival_cohort(family_from_name(surv_simulate), surv_n, surv_censor, 0.0,
                                      1.0, RandomStream::mix({surv_seed, 0xdeadULL}));
    } else {
      throw ConfigError("survival: give --data or --simulate");
    }
    const SurvivalRun run_result =
        run_survival_test(data, surv_a0, make_chain(surv_iterations, surv_seed));
    std::ostringstream trace_csv;
    const std::vector<std::string> names{"phi", "sigma2"};
    run_result.trace.to_csv(trace_csv, names);
    const fs::path outdir(surv_out);
    write_text_atomic((outdir / "trace.csv").string(), trace_csv.str());
    json summary;
    const char* comps[3] = {"normal", "gumbel", "logistic"};
    for (int j = 0; j < 3; ++j) {
      summary["weights"][comps[j]] = {{"median", run_result.summary.weights[j].median},
                                      {"mean", run_result.summary.weights[j].mean},
                                      {"q025", run_result.summary.weights[j].q025},
                                      {"q975", run_result.summary.weights[j].q975}};
    }
    summary["phi_median"] = run_result.summary.globals[0].median;
    summary["sigma2_median"] = run_result.summary.globals[1].median;
    summary["acceptance_rate"] = run_result.summary.acceptance_rate;
    write_text_atomic((outdir / "summary.json").string(), summary.dump(2) + "\n");
    std::cout << (outdir / "summary.json").string() << "\n";
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const mixtest::Error& e) {
    nlohmann::json err = {{"error", "mixtest"}, {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    nlohmann::json err = {{"error", "internal"}, {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    return 1;
  }
}
