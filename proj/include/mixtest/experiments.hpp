#ifndef MIXTEST_EXPERIMENTS_HPP
#define MIXTEST_EXPERIMENTS_HPP

#include <optional>
#include <string>
#include <vector>

#include "mixtest/glm.hpp"
#include "mixtest/pairs.hpp"
#include "mixtest/samplers.hpp"

#include "json.hpp"

namespace mixtest {

enum class DataSchema { Iid, BinaryRegression, Survival };

DataSchema schema_from_name(const std::string& name);
const char* schema_name(DataSchema schema);

struct SimSource {
  Family family = Family::Poisson;
  Params params;
  std::size_t n = 0;
};

// Deterministic per seed.
Dataset simulate_dataset(const SimSource& source, std::uint64_t seed);

// The three-covariate benchmark design: X1 ~ N(0,1), X2 ~ Bernoulli(1/2),
// X3 ~ U(10,11), response y = beta . (1,x) + sigma eps.
Dataset simulate_regression_dataset(std::size_t n, const Eigen::VectorXd& beta, double sigma,
                                    std::uint64_t seed);

// Bernoulli responses from a logit or probit regression at the given
// coefficients, covariate x ~ N(0,1) with intercept.
Dataset simulate_binary_dataset(Link link, std::size_t n, const Eigen::VectorXd& beta,
                                std::uint64_t seed);

Dataset ingest_csv(const std::string& path, DataSchema schema);

// Atomic write (temp file + rename).
void write_dataset_csv(const Dataset& data, const std::string& path, DataSchema schema);
void write_text_atomic(const std::string& path, const std::string& content);

struct ExperimentConfig {
  int schema_version = 1;
  std::string test;  // pair name
  std::optional<SimSource> simulate;
  std::string file;
  DataSchema file_schema = DataSchema::Iid;
  std::vector<double> a0_grid;
  std::vector<std::size_t> n_grid;
  std::size_t replicas = 1;
  ChainConfig chain;
  bool with_oracle = true;
  bool full_scale = false;
  std::string outputs;

  void validate() const;
  static ExperimentConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
  static ExperimentConfig load(const std::string& path);
};

struct ResultRow {
  std::string test;
  double a0 = 0.0;
  std::size_t n = 0;
  std::size_t replica = 0;
  std::string estimator;  // post_median_alpha | post_mean_alpha | bf_post_prob | error
  double value = 0.0;
  double runtime_ms = 0.0;
  std::uint64_t seed = 0;
  std::string error;
};

struct ExperimentResult {
  std::vector<ResultRow> rows;
  nlohmann::json digest;
  std::string csv_path;
  std::string json_path;
};

// Runs every (a0, n, replica) cell on a bounded worker pool, writes the
// long-format CSV and the per-cell JSON digest into config.outputs.
ExperimentResult run_experiment(const ExperimentConfig& config);

std::string result_rows_to_csv(const std::vector<ResultRow>& rows);

struct ConsistencyRow {
  std::size_t n = 0;
  double abs_err_q25 = 0.0;
  double abs_err_median = 0.0;
  double abs_err_q75 = 0.0;
  double mean_logn_log1m_mean_weight = 0.0;  // log(n) * log(1 - E[w_true | x])
  double mean_log1m_post_prob = 0.0;         // log(1 - P(M_true | x)), NaN without an oracle
};

// Empirical convergence-rate harness: per n, `replicas` datasets simulated
// from the named true component, sampler medians/means of the true-component
// weight, and the transformed statistics for rate plots.
std::vector<ConsistencyRow> consistency_harness(PairKind kind, int true_component,
                                                const std::vector<double>& true_globals,
                                                const std::vector<std::size_t>& n_grid,
                                                std::size_t replicas, double a0,
                                                const ChainConfig& chain);

std::string consistency_rows_to_csv(const std::vector<ConsistencyRow>& rows);

// Per-cell deterministic seed derivation.
std::uint64_t cell_seed(std::uint64_t base, std::size_t a0_index, std::size_t n_index,
                        std::size_t replica);

}  // namespace mixtest

#endif
